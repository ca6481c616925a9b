#include "leofault/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "leofault/error.hpp"
#include "leofault/topology.hpp"

namespace leofault {

namespace {
constexpr double kElevationEpsDeg = 1e-9;
}

CdfTable CdfTable::from_samples(std::vector<double> samples, double resolution) {
  CdfTable table;
  table.samples_ = samples.size();
  if (samples.empty()) return table;
  for (double& s : samples) {
    if (!std::isfinite(s)) throw std::invalid_argument("CDF samples must be finite");
    s = std::round(s / resolution) * resolution;
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    table.points_.emplace_back(samples[i], i + 1 == samples.size() ? 1.0 : static_cast<double>(i + 1) / n);
  }
  return table;
}

void CdfTable::write_csv(std::ostream& out) const {
  out << "value_km,proportion\n";
  char buf[64];
  for (const auto& [value, proportion] : points_) {
    std::snprintf(buf, sizeof buf, "%.6f,%.9g\n", value, proportion);
    out << buf;
  }
}

double infeasible_fraction(const CdfTable& cdf, double threshold_km) {
  const auto pts = cdf.points();
  const auto it = std::lower_bound(pts.begin(), pts.end(), threshold_km,
                                   [](const auto& p, double t) { return p.first < t; });
  return it == pts.begin() ? 0.0 : std::prev(it)->second;
}

GrazingSamples collect_grazing_samples(const Constellation& constellation, double t0_s,
                                       double t1_s, double step_s, bool per_link_min) {
  if (!(t0_s < t1_s)) throw std::invalid_argument("sampling window must have t0 < t1");
  if (!(step_s > 0.0)) throw std::invalid_argument("step must be positive");

  const auto edges = isl_edges(constellation);
  const double radius = constellation.earth_radius_km();
  GrazingSamples out;
  std::vector<double> minima(edges.size(), std::numeric_limits<double>::infinity());

  for (std::size_t k = 0;; ++k) {
    const double t = t0_s + static_cast<double>(k) * step_s;
    if (t >= t1_s) break;
    const auto pos = nominal_positions(constellation, t);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const double g = grazing_altitude(pos[edges[i].a], pos[edges[i].b], radius);
      if (per_link_min) {
        minima[i] = std::min(minima[i], g);
      } else {
        (edges[i].kind == LinkKind::intra_plane ? out.intra_plane : out.cross_plane).push_back(g);
      }
    }
  }
  if (per_link_min) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      (edges[i].kind == LinkKind::intra_plane ? out.intra_plane : out.cross_plane).push_back(minima[i]);
    }
  }
  return out;
}

CdfTable min_isl_altitude_cdf(const Constellation& constellation, double t0_s, double t1_s,
                              double step_s, bool per_link_min) {
  GrazingSamples s = collect_grazing_samples(constellation, t0_s, t1_s, step_s, per_link_min);
  std::vector<double> all = std::move(s.intra_plane);
  all.insert(all.end(), s.cross_plane.begin(), s.cross_plane.end());
  return CdfTable::from_samples(std::move(all));
}

double bent_pipe_rtt(const GroundStation& gs, const EciPosition& sat_pos,
                     const GroundStation& uplink, double t_s, double earth_radius_km) {
  const EciPosition g = ground_station_eci(gs, t_s, earth_radius_km);
  const EciPosition u = ground_station_eci(uplink, t_s, earth_radius_km);
  if (elevation_angle(g, sat_pos) < gs.min_elevation_deg - kElevationEpsDeg) {
    throw DomainError("satellite not visible from station " + gs.id);
  }
  if (elevation_angle(u, sat_pos) < uplink.min_elevation_deg - kElevationEpsDeg) {
    throw DomainError("satellite not visible from uplink station " + uplink.id);
  }
  return 2.0 * (propagation_delay(distance(g, sat_pos)) + propagation_delay(distance(sat_pos, u)));
}

}  // namespace leofault
