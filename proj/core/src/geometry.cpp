#include "leofault/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace leofault {

using constants::kDegToRad;
using constants::kRadToDeg;

void validate(const GroundStation& gs) {
  if (!(gs.latitude_deg >= -90.0 && gs.latitude_deg <= 90.0)) {
    throw std::invalid_argument("latitude_deg must be in [-90, 90]");
  }
  if (!(gs.longitude_deg >= -180.0 && gs.longitude_deg <= 180.0)) {
    throw std::invalid_argument("longitude_deg must be in [-180, 180]");
  }
  if (!(gs.min_elevation_deg >= 0.0 && gs.min_elevation_deg < 90.0)) {
    throw std::invalid_argument("min_elevation_deg must be in [0, 90)");
  }
}

double grazing_altitude(const EciPosition& p1, const EciPosition& p2, double earth_radius_km) {
  // Canonical endpoint order makes the result bitwise symmetric.
  const bool swap = std::tie(p2.x, p2.y, p2.z) < std::tie(p1.x, p1.y, p1.z);
  const EciPosition& a = swap ? p2 : p1;
  const EciPosition& b = swap ? p1 : p2;

  const EciPosition d = b - a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return norm(a) - earth_radius_km;
  const double t = std::clamp(-dot(a, d) / len2, 0.0, 1.0);
  return norm(a + d * t) - earth_radius_km;
}

EciPosition ground_station_eci(const GroundStation& gs, double t_s, double earth_radius_km) {
  const double lat = gs.latitude_deg * kDegToRad;
  const double theta = gs.longitude_deg * kDegToRad +
                       2.0 * constants::kPi * std::fmod(t_s, constants::kSiderealDayS) /
                           constants::kSiderealDayS;
  const double c = std::cos(lat);
  return {earth_radius_km * c * std::cos(theta), earth_radius_km * c * std::sin(theta),
          earth_radius_km * std::sin(lat)};
}

double elevation_angle(const EciPosition& gs_pos, const EciPosition& sat_pos) {
  const EciPosition d = sat_pos - gs_pos;
  const double range = norm(d);
  const double r = norm(gs_pos);
  if (range == 0.0 || r == 0.0) throw std::invalid_argument("coincident points");
  const double s = std::clamp(dot(d, gs_pos) / (range * r), -1.0, 1.0);
  return std::asin(s) * kRadToDeg;
}

double propagation_delay(double distance_km) {
  return distance_km / constants::kSpeedOfLightKmPerS;
}

EciPosition position_at_elevation(const GroundStation& gs, double t_s, double altitude_km,
                                  double elevation_deg, double azimuth_deg,
                                  double earth_radius_km) {
  const EciPosition g = ground_station_eci(gs, t_s, earth_radius_km);
  const EciPosition up = g * (1.0 / norm(g));
  // Local east/north; at the poles pick an arbitrary horizontal basis.
  EciPosition east = cross(EciPosition{0.0, 0.0, 1.0}, up);
  if (norm(east) < 1e-12) east = {0.0, 1.0, 0.0};
  east = east * (1.0 / norm(east));
  const EciPosition north = cross(up, east);

  const double el = elevation_deg * kDegToRad;
  const double az = azimuth_deg * kDegToRad;
  const EciPosition dir = up * std::sin(el) + (north * std::cos(az) + east * std::sin(az)) * std::cos(el);

  // |g + s*dir| = R + h  ->  s^2 + 2 s (g.dir) + |g|^2 - (R+h)^2 = 0
  const double b = dot(g, dir);
  const double rs = earth_radius_km + altitude_km;
  const double c = dot(g, g) - rs * rs;
  const double s = -b + std::sqrt(b * b - c);
  return g + dir * s;
}

}  // namespace leofault
