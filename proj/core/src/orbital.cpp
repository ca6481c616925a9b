#include "leofault/orbital.hpp"

#include <cmath>
#include <stdexcept>

namespace leofault {

using constants::kDegToRad;
using constants::kEarthMuKm3PerS2;
using constants::kPi;

void validate(const ShellSpec& spec) {
  if (!(spec.altitude_km > 100.0 && spec.altitude_km <= 2000.0)) {
    throw std::invalid_argument("altitude_km must be in (100, 2000]");
  }
  if (!(spec.inclination_deg >= 0.0 && spec.inclination_deg <= 180.0)) {
    throw std::invalid_argument("inclination_deg must be in [0, 180]");
  }
  if (spec.planes < 1) throw std::invalid_argument("planes must be >= 1");
  if (spec.sats_per_plane < 1) throw std::invalid_argument("sats_per_plane must be >= 1");
  if (!(spec.raan_spread_deg > 0.0 && spec.raan_spread_deg <= 360.0)) {
    throw std::invalid_argument("raan_spread_deg must be in (0, 360]");
  }
}

std::string to_string(const SatelliteId& id) {
  return std::to_string(id.shell) + "/" + std::to_string(id.plane) + "/" +
         std::to_string(id.index);
}

double dot(const EciPosition& a, const EciPosition& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

EciPosition cross(const EciPosition& a, const EciPosition& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const EciPosition& v) { return std::sqrt(dot(v, v)); }

double distance(const EciPosition& a, const EciPosition& b) { return norm(a - b); }

double normalize_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  if (r >= 360.0) r -= 360.0;
  return r;
}

double period_from_semi_major_axis(double semi_major_axis_km) {
  if (!(semi_major_axis_km > 0.0)) {
    throw std::invalid_argument("semi-major axis must be positive");
  }
  return 2.0 * kPi * std::sqrt(semi_major_axis_km * semi_major_axis_km * semi_major_axis_km /
                               kEarthMuKm3PerS2);
}

double orbital_period(double altitude_km, double earth_radius_km) {
  if (!(altitude_km > 0.0)) {
    throw std::invalid_argument("altitude_km must be positive");
  }
  return period_from_semi_major_axis(earth_radius_km + altitude_km);
}

double mean_motion_deg_per_s(double semi_major_axis_km) {
  return 360.0 / period_from_semi_major_axis(semi_major_axis_km);
}

namespace {

CircularElements walker_elements(const ShellSpec& spec, int plane, int index,
                                 double earth_radius_km) {
  const double P = spec.planes;
  const double S = spec.sats_per_plane;
  CircularElements e;
  e.semi_major_axis_km = earth_radius_km + spec.altitude_km;
  e.inclination_deg = spec.inclination_deg;
  e.raan_deg = normalize_deg(plane * spec.raan_spread_deg / P);
  e.phase_deg =
      normalize_deg(index * 360.0 / S + plane * spec.phase_offset_f * 360.0 / (P * S));
  e.epoch_s = 0.0;
  return e;
}

}  // namespace

std::map<SatelliteId, CircularElements> build_constellation(std::span<const ShellSpec> shells,
                                                            double earth_radius_km) {
  std::map<SatelliteId, CircularElements> out;
  for (std::size_t k = 0; k < shells.size(); ++k) {
    const ShellSpec& spec = shells[k];
    validate(spec);
    for (int p = 0; p < spec.planes; ++p) {
      for (int s = 0; s < spec.sats_per_plane; ++s) {
        out.emplace(SatelliteId{static_cast<int>(k), p, s},
                    walker_elements(spec, p, s, earth_radius_km));
      }
    }
  }
  return out;
}

EciPosition propagate(const CircularElements& elements, double t_s, double altitude_offset_km) {
  if (t_s < elements.epoch_s) throw std::invalid_argument("t precedes epoch");
  if (!(std::abs(altitude_offset_km) < 50.0)) {
    throw std::invalid_argument("altitude offset must be below 50 km in magnitude");
  }
  const double a = elements.semi_major_axis_km + altitude_offset_km;
  const double u =
      (elements.phase_deg + mean_motion_deg_per_s(a) * (t_s - elements.epoch_s)) * kDegToRad;
  const double raan = elements.raan_deg * kDegToRad;
  const double inc = elements.inclination_deg * kDegToRad;

  const double cu = std::cos(u), su = std::sin(u);
  const double co = std::cos(raan), so = std::sin(raan);
  const double ci = std::cos(inc), si = std::sin(inc);
  return {a * (co * cu - so * su * ci), a * (so * cu + co * su * ci), a * (su * si)};
}

CircularElements advance_to(const CircularElements& elements, double t_s) {
  CircularElements out = elements;
  out.phase_deg = normalize_deg(elements.phase_deg + mean_motion_deg_per_s(elements.semi_major_axis_km) *
                                                         (t_s - elements.epoch_s));
  out.epoch_s = t_s;
  return out;
}

EciPosition orbit_normal(const CircularElements& elements) {
  const double raan = elements.raan_deg * kDegToRad;
  const double inc = elements.inclination_deg * kDegToRad;
  return {std::sin(raan) * std::sin(inc), -std::cos(raan) * std::sin(inc), std::cos(inc)};
}

Constellation Constellation::from_shells(std::span<const ShellSpec> shells,
                                         double earth_radius_km) {
  Constellation c(earth_radius_km);
  for (const auto& s : shells) c.add_shell(s);
  return c;
}

void Constellation::add_shell(const ShellSpec& spec) {
  validate(spec);
  const int shell = static_cast<int>(layouts_.size());
  layouts_.push_back({spec.planes, spec.sats_per_plane, true});
  shell_offsets_.push_back(satellites_.size());
  satellites_.reserve(satellites_.size() +
                      static_cast<std::size_t>(spec.planes) * spec.sats_per_plane);
  for (int p = 0; p < spec.planes; ++p) {
    for (int s = 0; s < spec.sats_per_plane; ++s) {
      satellites_.push_back({{shell, p, s}, walker_elements(spec, p, s, earth_radius_km_)});
    }
  }
}

void Constellation::add_catalog(std::span<const CircularElements> elements) {
  if (elements.empty()) return;
  const int shell = static_cast<int>(layouts_.size());
  layouts_.push_back({1, static_cast<int>(elements.size()), false});
  shell_offsets_.push_back(satellites_.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!(elements[i].semi_major_axis_km > earth_radius_km_)) {
      throw std::invalid_argument("catalog satellite below the Earth surface");
    }
    satellites_.push_back({{shell, 0, static_cast<int>(i)}, elements[i]});
  }
}

std::size_t Constellation::index_of(const SatelliteId& id) const {
  if (id.shell < 0 || static_cast<std::size_t>(id.shell) >= layouts_.size()) {
    throw std::out_of_range("unknown shell in satellite id " + to_string(id));
  }
  const ShellLayout& l = layouts_[id.shell];
  if (id.plane < 0 || id.plane >= l.planes || id.index < 0 || id.index >= l.sats_per_plane) {
    throw std::out_of_range("satellite id out of range: " + to_string(id));
  }
  return shell_offsets_[id.shell] + static_cast<std::size_t>(id.plane) * l.sats_per_plane +
         id.index;
}

}  // namespace leofault
