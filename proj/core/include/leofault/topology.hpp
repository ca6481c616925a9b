#pragma once

// +GRID inter-satellite links, link snapshots and ground-station visibility.

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "leofault/geometry.hpp"
#include "leofault/orbital.hpp"

namespace leofault {

struct GridCoord {
  int plane = 0;
  int index = 0;

  auto operator<=>(const GridCoord&) const = default;
};

// In-plane neighbors (index +/- 1 mod S) followed by the same-index
// satellites of the adjacent planes (plane +/- 1 mod P). Requires P, S >= 3.
std::array<GridCoord, 4> grid_neighbors(int plane, int index, int planes, int sats_per_plane);

enum class LinkKind { intra_plane, cross_plane };

const char* to_string(LinkKind kind);

// Undirected +GRID edge between two satellites, by position in
// Constellation::satellites().
struct IslEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  LinkKind kind = LinkKind::intra_plane;
};

// 2*P*S edges per Walker shell with P, S >= 3; shells that cannot host a
// four-neighbor grid (and catalog shells) contribute none. Each satellite
// owns the edge to index+1 and to plane+1, so there are no duplicates.
std::vector<IslEdge> isl_edges(const Constellation& constellation);

struct IslLink {
  SatelliteId a;
  SatelliteId b;
  LinkKind kind = LinkKind::intra_plane;
  double grazing_km = 0.0;
  double length_km = 0.0;
  bool viable = false;
};

std::vector<EciPosition> nominal_positions(const Constellation& constellation, double t_s);

// Links evaluated against caller-supplied positions (one per satellite, in
// Constellation::satellites() order), e.g. including maneuver offsets.
std::vector<IslLink> link_snapshot(const Constellation& constellation,
                                   std::span<const IslEdge> edges,
                                   std::span<const EciPosition> positions, double threshold_km);

std::vector<IslLink> link_snapshot(const Constellation& constellation, double t_s,
                                   double threshold_km);

struct ElevationSample {
  double t_s = 0.0;
  double elevation_deg = 0.0;
};

struct VisibilityWindow {
  std::string gs_id;
  SatelliteId sat;
  double start_s = 0.0;
  double end_s = 0.0;
  double max_elevation_deg = 0.0;
  // Sampled elevation inside the window, including the refined endpoints.
  // May be empty for hand-built windows, in which case the elevation is
  // taken as max_elevation_deg throughout.
  std::vector<ElevationSample> profile;
};

// Elevation of the window's satellite at t (linear in the profile).
double elevation_at(const VisibilityWindow& w, double t_s);

// Maximal intervals with elevation >= min_elevation, sampled every step_s
// and with boundaries refined by bisection to 0.1 s. Sorted by (sat, start).
std::vector<VisibilityWindow> visibility_windows(const GroundStation& gs,
                                                 const Constellation& constellation, double t0_s,
                                                 double t1_s, double step_s);

struct Handover {
  double t_s = 0.0;
  SatelliteId from;
  SatelliteId to;

  bool operator==(const Handover&) const = default;
};

// Highest-elevation attachment over windows of a single station. Ties go to
// the lowest SatelliteId. Attachment changes are evaluated at every window
// boundary and profile sample; regaining coverage after a gap is not a
// handover.
std::vector<Handover> handover_schedule(std::span<const VisibilityWindow> windows);

}  // namespace leofault
