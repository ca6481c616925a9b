#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "leofault/geometry.hpp"
#include "leofault/orbital.hpp"

namespace leofault {

// Empirical CDF: one point per distinct sample value with the proportion of
// samples <= value. Values strictly increase; the last proportion is 1.
class CdfTable {
 public:
  CdfTable() = default;

  // Samples are snapped to `resolution` before counting so that values
  // equal up to rounding noise (e.g. rigidly rotating intra-plane links)
  // form one point mass.
  static CdfTable from_samples(std::vector<double> samples, double resolution = 1e-6);

  std::span<const std::pair<double, double>> points() const { return points_; }
  std::size_t sample_count() const { return samples_; }
  bool empty() const { return points_.empty(); }

  // "value_km,proportion" header plus one row per point.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<std::pair<double, double>> points_;
  std::size_t samples_ = 0;
};

// Proportion of samples strictly below the threshold; 0 for an empty table.
double infeasible_fraction(const CdfTable& cdf, double threshold_km);

struct GrazingSamples {
  std::vector<double> intra_plane;
  std::vector<double> cross_plane;
};

// Grazing altitude of every +GRID link at t0, t0 + step, ... < t1. With
// per_link_min each link contributes its minimum over the window instead of
// one sample per step.
GrazingSamples collect_grazing_samples(const Constellation& constellation, double t0_s,
                                       double t1_s, double step_s, bool per_link_min);

CdfTable min_isl_altitude_cdf(const Constellation& constellation, double t0_s, double t1_s,
                              double step_s, bool per_link_min);

// Two-way bent-pipe round trip gs -> sat -> uplink -> sat -> gs at time t.
// Throws DomainError when either station sees the satellite below its mask.
double bent_pipe_rtt(const GroundStation& gs, const EciPosition& sat_pos,
                     const GroundStation& uplink, double t_s = 0.0,
                     double earth_radius_km = constants::kEarthRadiusKm);

}  // namespace leofault
