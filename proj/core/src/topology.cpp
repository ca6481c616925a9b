#include "leofault/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace leofault {

namespace {

constexpr double kRefineResolutionS = 0.1;
// Elevation comparisons tolerate rounding right at the mask angle.
constexpr double kElevationEpsDeg = 1e-9;

int wrap(int v, int n) { return ((v % n) + n) % n; }

}  // namespace

std::array<GridCoord, 4> grid_neighbors(int plane, int index, int planes, int sats_per_plane) {
  if (planes < 3 || sats_per_plane < 3) {
    throw std::invalid_argument("+GRID needs at least 3 planes and 3 satellites per plane");
  }
  if (plane < 0 || plane >= planes || index < 0 || index >= sats_per_plane) {
    throw std::invalid_argument("grid coordinate out of range");
  }
  return {GridCoord{plane, wrap(index + 1, sats_per_plane)},
          GridCoord{plane, wrap(index - 1, sats_per_plane)},
          GridCoord{wrap(plane + 1, planes), index}, GridCoord{wrap(plane - 1, planes), index}};
}

const char* to_string(LinkKind kind) {
  return kind == LinkKind::intra_plane ? "intra_plane" : "cross_plane";
}

std::vector<IslEdge> isl_edges(const Constellation& constellation) {
  std::vector<IslEdge> edges;
  const auto layouts = constellation.layouts();
  for (std::size_t shell = 0; shell < layouts.size(); ++shell) {
    const ShellLayout& l = layouts[shell];
    if (!l.walker || l.planes < 3 || l.sats_per_plane < 3) continue;
    const int sh = static_cast<int>(shell);
    for (int p = 0; p < l.planes; ++p) {
      for (int s = 0; s < l.sats_per_plane; ++s) {
        const std::size_t self = constellation.index_of({sh, p, s});
        const auto n = grid_neighbors(p, s, l.planes, l.sats_per_plane);
        edges.push_back({self, constellation.index_of({sh, n[0].plane, n[0].index}),
                         LinkKind::intra_plane});
        edges.push_back({self, constellation.index_of({sh, n[2].plane, n[2].index}),
                         LinkKind::cross_plane});
      }
    }
  }
  return edges;
}

std::vector<EciPosition> nominal_positions(const Constellation& constellation, double t_s) {
  std::vector<EciPosition> out;
  out.reserve(constellation.size());
  for (const auto& sat : constellation.satellites()) out.push_back(propagate(sat.elements, t_s));
  return out;
}

std::vector<IslLink> link_snapshot(const Constellation& constellation,
                                   std::span<const IslEdge> edges,
                                   std::span<const EciPosition> positions, double threshold_km) {
  if (positions.size() != constellation.size()) {
    throw std::invalid_argument("one position per satellite required");
  }
  const auto sats = constellation.satellites();
  const double radius = constellation.earth_radius_km();
  std::vector<IslLink> links;
  links.reserve(edges.size());
  for (const IslEdge& e : edges) {
    IslLink link;
    link.a = sats[e.a].id;
    link.b = sats[e.b].id;
    link.kind = e.kind;
    link.grazing_km = grazing_altitude(positions[e.a], positions[e.b], radius);
    link.length_km = distance(positions[e.a], positions[e.b]);
    link.viable = is_isl_viable(link.grazing_km, threshold_km);
    links.push_back(link);
  }
  return links;
}

std::vector<IslLink> link_snapshot(const Constellation& constellation, double t_s,
                                   double threshold_km) {
  const auto edges = isl_edges(constellation);
  const auto positions = nominal_positions(constellation, t_s);
  return link_snapshot(constellation, edges, positions, threshold_km);
}

double elevation_at(const VisibilityWindow& w, double t_s) {
  const auto& p = w.profile;
  if (p.empty()) return w.max_elevation_deg;
  if (t_s <= p.front().t_s) return p.front().elevation_deg;
  if (t_s >= p.back().t_s) return p.back().elevation_deg;
  const auto hi = std::upper_bound(p.begin(), p.end(), t_s,
                                   [](double t, const ElevationSample& s) { return t < s.t_s; });
  const auto lo = hi - 1;
  const double span = hi->t_s - lo->t_s;
  if (span <= 0.0) return hi->elevation_deg;
  const double f = (t_s - lo->t_s) / span;
  return lo->elevation_deg + f * (hi->elevation_deg - lo->elevation_deg);
}

std::vector<VisibilityWindow> visibility_windows(const GroundStation& gs,
                                                 const Constellation& constellation, double t0_s,
                                                 double t1_s, double step_s) {
  validate(gs);
  if (!(t0_s < t1_s)) throw std::invalid_argument("visibility interval must have t0 < t1");
  if (!(step_s > 0.0)) throw std::invalid_argument("step must be positive");

  std::vector<double> times;
  for (std::size_t k = 0;; ++k) {
    const double t = t0_s + static_cast<double>(k) * step_s;
    if (t >= t1_s) break;
    times.push_back(t);
  }
  times.push_back(t1_s);

  const double radius = constellation.earth_radius_km();
  std::vector<EciPosition> gs_pos;
  gs_pos.reserve(times.size());
  for (double t : times) gs_pos.push_back(ground_station_eci(gs, t, radius));

  const double mask = gs.min_elevation_deg - kElevationEpsDeg;
  std::vector<VisibilityWindow> windows;
  std::vector<double> elev(times.size());

  for (const auto& sat : constellation.satellites()) {
    auto elevation = [&](double t) {
      return elevation_angle(ground_station_eci(gs, t, radius), propagate(sat.elements, t));
    };
    // Returns the visible-side end of a visibility transition in (lo, hi).
    auto refine = [&](double lo, double hi, bool visible_at_lo) {
      while (hi - lo > kRefineResolutionS) {
        const double mid = 0.5 * (lo + hi);
        if ((elevation(mid) >= mask) == visible_at_lo) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return visible_at_lo ? lo : hi;
    };

    for (std::size_t k = 0; k < times.size(); ++k) {
      elev[k] = elevation_angle(gs_pos[k], propagate(sat.elements, times[k]));
    }

    std::size_t k = 0;
    while (k < times.size()) {
      if (elev[k] < mask) {
        ++k;
        continue;
      }
      VisibilityWindow w;
      w.gs_id = gs.id;
      w.sat = sat.id;
      w.start_s = k == 0 ? times[0] : refine(times[k - 1], times[k], false);
      if (w.start_s < times[k]) w.profile.push_back({w.start_s, elevation(w.start_s)});
      std::size_t last = k;
      while (last + 1 < times.size() && elev[last + 1] >= mask) ++last;
      for (std::size_t j = k; j <= last; ++j) w.profile.push_back({times[j], elev[j]});
      w.end_s = last + 1 == times.size() ? times[last] : refine(times[last], times[last + 1], true);
      if (w.end_s > times[last]) w.profile.push_back({w.end_s, elevation(w.end_s)});
      if (w.end_s <= w.start_s) {
        // Visible at a single instant only (e.g. the final sample).
        k = last + 1;
        continue;
      }
      w.max_elevation_deg = w.profile.front().elevation_deg;
      for (const auto& s : w.profile) w.max_elevation_deg = std::max(w.max_elevation_deg, s.elevation_deg);
      w.max_elevation_deg = std::max(w.max_elevation_deg, gs.min_elevation_deg);
      windows.push_back(std::move(w));
      k = last + 1;
    }
  }
  return windows;
}

std::vector<Handover> handover_schedule(std::span<const VisibilityWindow> windows) {
  std::vector<double> instants;
  for (const auto& w : windows) {
    instants.push_back(w.start_s);
    instants.push_back(w.end_s);
    for (const auto& s : w.profile) instants.push_back(s.t_s);
  }
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

  std::vector<std::size_t> by_start(windows.size());
  for (std::size_t i = 0; i < by_start.size(); ++i) by_start[i] = i;
  std::sort(by_start.begin(), by_start.end(), [&](std::size_t a, std::size_t b) {
    return windows[a].start_s < windows[b].start_s;
  });

  std::vector<Handover> out;
  std::vector<std::size_t> active;
  std::size_t next = 0;
  bool attached = false;
  SatelliteId current;

  for (double t : instants) {
    while (next < by_start.size() && windows[by_start[next]].start_s <= t) {
      active.push_back(by_start[next++]);
    }
    std::erase_if(active, [&](std::size_t i) { return windows[i].end_s <= t; });

    if (active.empty()) {
      attached = false;
      continue;
    }
    std::size_t best = active.front();
    double best_el = elevation_at(windows[best], t);
    for (std::size_t i : active) {
      const double el = elevation_at(windows[i], t);
      if (el > best_el || (el == best_el && windows[i].sat < windows[best].sat)) {
        best = i;
        best_el = el;
      }
    }
    const SatelliteId& chosen = windows[best].sat;
    if (attached && chosen != current) out.push_back({t, current, chosen});
    current = chosen;
    attached = true;
  }
  return out;
}

}  // namespace leofault
