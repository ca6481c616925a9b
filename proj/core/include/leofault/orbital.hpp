#pragma once

// Constellation shells and circular Keplerian propagation.
//
// Assumptions:
// - spherical Earth, two-body gravity, eccentricity fixed at 0
// - Earth-centered inertial frame, z along the rotation axis
// - angles are stored in degrees and normalized to [0, 360)

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "leofault/constants.hpp"

namespace leofault {

struct ShellSpec {
  double altitude_km = 550.0;
  double inclination_deg = 53.0;
  int planes = 1;
  int sats_per_plane = 1;
  double raan_spread_deg = 360.0;
  // Walker phasing factor F.
  int phase_offset_f = 0;
};

// Throws std::invalid_argument naming the violated field.
void validate(const ShellSpec& spec);

struct SatelliteId {
  int shell = 0;
  int plane = 0;
  int index = 0;

  auto operator<=>(const SatelliteId&) const = default;
};

// "shell/plane/index", e.g. "0/12/3".
std::string to_string(const SatelliteId& id);

struct CircularElements {
  double semi_major_axis_km = 0.0;
  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  // Argument of latitude at epoch.
  double phase_deg = 0.0;
  double epoch_s = 0.0;
};

struct EciPosition {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  EciPosition operator+(const EciPosition& o) const { return {x + o.x, y + o.y, z + o.z}; }
  EciPosition operator-(const EciPosition& o) const { return {x - o.x, y - o.y, z - o.z}; }
  EciPosition operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const EciPosition&) const = default;
};

double dot(const EciPosition& a, const EciPosition& b);
EciPosition cross(const EciPosition& a, const EciPosition& b);
double norm(const EciPosition& v);
double distance(const EciPosition& a, const EciPosition& b);

double normalize_deg(double deg);

// Circular-orbit period from Kepler's third law. Throws std::invalid_argument
// for non-positive altitude.
double orbital_period(double altitude_km,
                      double earth_radius_km = constants::kEarthRadiusKm);
double period_from_semi_major_axis(double semi_major_axis_km);
// Mean motion in degrees per second.
double mean_motion_deg_per_s(double semi_major_axis_km);

// Walker-style construction. Plane p gets raan = p * spread / P, satellite s
// gets phase = s * 360 / S + p * F * 360 / (P * S).
std::map<SatelliteId, CircularElements> build_constellation(
    std::span<const ShellSpec> shells,
    double earth_radius_km = constants::kEarthRadiusKm);

// Position on the circle of radius a + altitude_offset_km, advanced from the
// epoch at the mean motion of that (offset) orbit.
EciPosition propagate(const CircularElements& elements, double t_s,
                      double altitude_offset_km = 0.0);

// Re-epochs `elements` at t_s: same orbit, phase advanced at the nominal mean
// motion.
CircularElements advance_to(const CircularElements& elements, double t_s);

// Unit normal of the orbital plane (angular momentum direction).
EciPosition orbit_normal(const CircularElements& elements);

struct ShellLayout {
  int planes = 0;
  int sats_per_plane = 0;
  // Shells built from TLE catalogs carry no +GRID structure.
  bool walker = true;
};

struct Satellite {
  SatelliteId id;
  CircularElements elements;
};

// Satellites of all shells, ordered by SatelliteId, with O(1) lookup.
class Constellation {
 public:
  Constellation() = default;
  explicit Constellation(double earth_radius_km) : earth_radius_km_(earth_radius_km) {}

  static Constellation from_shells(std::span<const ShellSpec> shells,
                                   double earth_radius_km = constants::kEarthRadiusKm);

  // Appends one Walker shell.
  void add_shell(const ShellSpec& spec);
  // Appends a catalog of independent satellites (e.g. from TLEs) as a shell
  // with a single plane and no +GRID links.
  void add_catalog(std::span<const CircularElements> elements);

  std::size_t size() const { return satellites_.size(); }
  bool empty() const { return satellites_.empty(); }
  std::span<const Satellite> satellites() const { return satellites_; }
  std::span<const ShellLayout> layouts() const { return layouts_; }
  double earth_radius_km() const { return earth_radius_km_; }

  std::size_t index_of(const SatelliteId& id) const;
  const Satellite& at(const SatelliteId& id) const { return satellites_[index_of(id)]; }

 private:
  double earth_radius_km_ = constants::kEarthRadiusKm;
  std::vector<ShellLayout> layouts_;
  std::vector<std::size_t> shell_offsets_;
  std::vector<Satellite> satellites_;
};

}  // namespace leofault
