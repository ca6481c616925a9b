#pragma once

#include <string>

#include "leofault/constants.hpp"
#include "leofault/orbital.hpp"

namespace leofault {

struct GroundStation {
  std::string id;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double min_elevation_deg = 25.0;
};

// Throws std::invalid_argument on out-of-range coordinates.
void validate(const GroundStation& gs);

// Minimum altitude above the sphere of the straight segment p1-p2.
// A degenerate segment (p1 == p2) yields |p1| - R.
double grazing_altitude(const EciPosition& p1, const EciPosition& p2,
                        double earth_radius_km = constants::kEarthRadiusKm);

// Inclusive at the threshold.
inline bool is_isl_viable(double grazing_km, double threshold_km) {
  return grazing_km >= threshold_km;
}

// Earth rotates at 360 degrees per sidereal day; longitude 0 lies on the
// inertial x axis at t = 0.
EciPosition ground_station_eci(const GroundStation& gs, double t_s,
                               double earth_radius_km = constants::kEarthRadiusKm);

// Elevation of sat_pos above the local horizontal plane at gs_pos, degrees in
// [-90, 90]. Throws std::invalid_argument when the points coincide.
double elevation_angle(const EciPosition& gs_pos, const EciPosition& sat_pos);

// Free-space one-way delay in seconds.
double propagation_delay(double distance_km);

// Places a satellite at `altitude_km` seen from `gs` at the given elevation
// and azimuth (degrees clockwise from local north) at time t_s.
EciPosition position_at_elevation(const GroundStation& gs, double t_s, double altitude_km,
                                  double elevation_deg, double azimuth_deg = 0.0,
                                  double earth_radius_km = constants::kEarthRadiusKm);

}  // namespace leofault
