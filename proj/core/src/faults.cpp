#include "leofault/faults.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "leofault/rng.hpp"

namespace leofault {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

// Folded inclination, snapped to 1e-9 deg so that i and 180 - i land on the
// same value despite rounding in the subtraction.
double fold_inclination(double inclination_deg) {
  const double folded = 90.0 - std::abs(90.0 - inclination_deg);
  return std::round(folded * 1e9) / 1e9;
}

double interpolate(const std::vector<DoseAnchor>& anchors, double x) {
  if (anchors.empty()) return 0.0;
  if (x <= anchors.front().inclination_deg) return anchors.front().mission_dose_krad;
  if (x >= anchors.back().inclination_deg) return anchors.back().mission_dose_krad;
  const auto hi = std::upper_bound(anchors.begin(), anchors.end(), x,
                                   [](double v, const DoseAnchor& a) { return v < a.inclination_deg; });
  const auto lo = hi - 1;
  const double f = (x - lo->inclination_deg) / (hi->inclination_deg - lo->inclination_deg);
  return lo->mission_dose_krad + f * (hi->mission_dose_krad - lo->mission_dose_krad);
}

// Position of x between the light and moderate thresholds, 0..1.
double rain_fraction(const FaultModelConfig& c, double precip_mm_h) {
  if (!(precip_mm_h >= 0.0)) throw std::invalid_argument("precipitation must be non-negative");
  if (precip_mm_h <= c.rain_light_mm_h) return 0.0;
  if (precip_mm_h >= c.rain_moderate_mm_h) return 1.0;
  return (precip_mm_h - c.rain_light_mm_h) / (c.rain_moderate_mm_h - c.rain_light_mm_h);
}

bool by_time(const FaultEvent& a, const FaultEvent& b) { return event_less(a, b); }

}  // namespace

DoseProfile DoseProfile::default_profile() {
  DoseProfile p;
  p.anchors = {{0.0, 0.0}, {73.0, 40.0}, {90.0, 40.0 * 35.0 / 40.0}};
  return p;
}

void validate(const DoseProfile& profile) {
  for (std::size_t i = 0; i < profile.anchors.size(); ++i) {
    const auto& a = profile.anchors[i];
    require(a.inclination_deg >= 0.0 && a.inclination_deg <= 90.0, "dose_profile",
            "anchor inclinations must be within [0, 90]");
    require(a.mission_dose_krad >= 0.0, "dose_profile", "doses must be non-negative");
    if (i > 0) {
      require(a.inclination_deg > profile.anchors[i - 1].inclination_deg, "dose_profile",
              "anchor inclinations must be strictly increasing");
    }
  }
}

void validate(const FaultModelConfig& c) {
  require(c.seu_rate_per_device_day >= 0.0, "seu_rate_per_device_day", "must be >= 0");
  require(c.devices_per_satellite >= 0, "devices_per_satellite", "must be >= 0");
  require(c.seu_downtime_s >= 0.0, "seu_downtime_s", "must be >= 0");
  require(c.seu_permanent_prob >= 0.0 && c.seu_permanent_prob <= 1.0, "seu_permanent_prob",
          "must be a probability");
  require(c.tid_limit_krad > 0.0, "tid_limit_krad", "must be > 0");
  require(c.mission_years > 0.0, "mission_years", "must be > 0");
  validate(c.dose_profile);
  require(c.rain_light_mm_h >= 0.0, "rain_light_mm_h", "must be >= 0");
  require(c.rain_moderate_mm_h >= c.rain_light_mm_h, "rain_moderate_mm_h",
          "must be >= rain_light_mm_h");
  require(c.rain_moderate_multiplier > 0.0 && c.rain_moderate_multiplier <= 1.0,
          "rain_moderate_multiplier", "must be in (0, 1]");
  require(c.rain_latency_factor >= 1.0, "rain_latency_factor", "must be >= 1");
  require(c.handover_min_s > 0.0, "handover_min_s", "must be > 0");
  require(c.handover_max_s >= c.handover_min_s, "handover_max_s", "must be >= handover_min_s");
  require(c.handover_loss_min >= 0.0 && c.handover_loss_min <= 1.0, "handover_loss_min",
          "must be a probability");
  require(c.handover_loss_max >= c.handover_loss_min && c.handover_loss_max <= 1.0,
          "handover_loss_max", "must be a probability >= handover_loss_min");
  require(c.handover_spike_s >= 0.0, "handover_spike_s", "must be >= 0");
  require(c.maneuver_rate_per_sat_year >= 0.0, "maneuver_rate_per_sat_year", "must be >= 0");
  require(c.maneuver_dh_min_km >= 0.0, "maneuver_dh_min_km", "must be >= 0");
  require(c.maneuver_dh_max_km >= c.maneuver_dh_min_km, "maneuver_dh_max_km",
          "must be >= maneuver_dh_min_km");
  require(c.maneuver_dh_max_km <= kMaxCombinedOffsetKm, "maneuver_dh_max_km", "must be <= 10");
  require(c.maneuver_dwell_s >= 0.0, "maneuver_dwell_s", "must be >= 0");
}

double expected_seu_count(double rate_per_device_day, double devices, double satellites,
                          double days) {
  if (rate_per_device_day < 0.0 || devices < 0.0 || satellites < 0.0 || days < 0.0) {
    throw std::invalid_argument("expected_seu_count inputs must be non-negative");
  }
  return rate_per_device_day * devices * satellites * days;
}

std::vector<FaultEvent> sample_seu_events(const FaultModelConfig& config,
                                          std::span<const SatelliteId> fleet, double t0_s,
                                          double t1_s, std::uint64_t seed) {
  std::vector<FaultEvent> events;
  const int devices = config.devices_per_satellite;
  const double rate_per_s =
      config.seu_rate_per_device_day * devices / constants::kSecondsPerDay;
  if (!(t1_s > t0_s) || !(rate_per_s > 0.0)) return events;

  for (const SatelliteId& sat : fleet) {
    RandomStream rng(seed, "seu/" + to_string(sat));
    std::set<int> dead;
    for (double t = t0_s + rng.exponential(rate_per_s); t < t1_s; t += rng.exponential(rate_per_s)) {
      const int device = static_cast<int>(rng.below(static_cast<std::uint64_t>(devices)));
      const bool permanent = rng.bernoulli(config.seu_permanent_prob);
      if (dead.count(device) != 0) continue;
      if (permanent) {
        dead.insert(device);
        events.push_back(make_event(t, FaultKind::device_permanent_failure, DeviceTarget{sat, device}));
      } else {
        events.push_back(make_event(t, FaultKind::device_reboot, DeviceTarget{sat, device},
                                    {{"downtime_s", config.seu_downtime_s}}));
      }
    }
  }
  std::sort(events.begin(), events.end(), by_time);
  return events;
}

double dose_rate(const DoseProfile& profile, double inclination_deg, double mission_years) {
  if (!(inclination_deg >= 0.0 && inclination_deg <= 180.0)) {
    throw std::invalid_argument("inclination must be within [0, 180]");
  }
  if (!(mission_years > 0.0)) throw std::invalid_argument("mission_years must be positive");
  return interpolate(profile.anchors, fold_inclination(inclination_deg)) / mission_years;
}

TidResult tid_survival(const DoseProfile& profile, double inclination_deg, double limit_krad,
                       double mission_years) {
  if (!(limit_krad > 0.0)) throw std::invalid_argument("TID limit must be positive");
  const double rate = dose_rate(profile, inclination_deg, mission_years);
  TidResult r;
  r.dose_krad = rate * mission_years;
  r.survives = r.dose_krad < limit_krad;
  r.lifetime_years = rate > 0.0 ? limit_krad / rate : std::numeric_limits<double>::infinity();
  return r;
}

double rain_multiplier(const FaultModelConfig& config, double precip_mm_h) {
  return 1.0 + rain_fraction(config, precip_mm_h) * (config.rain_moderate_multiplier - 1.0);
}

double rain_latency_multiplier(const FaultModelConfig& config, double precip_mm_h) {
  return 1.0 + rain_fraction(config, precip_mm_h) * (config.rain_latency_factor - 1.0);
}

PrecipitationSeries::PrecipitationSeries(std::vector<std::pair<double, double>> rows)
    : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (!(rows_[i].second >= 0.0)) throw std::invalid_argument("precipitation must be non-negative");
    if (i > 0 && !(rows_[i].first > rows_[i - 1].first)) {
      throw std::invalid_argument("precipitation times must strictly increase");
    }
  }
}

PrecipitationSeries PrecipitationSeries::parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("precipitation CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_s,mm_per_h") {
    throw std::invalid_argument("precipitation CSV line 1: expected header t_s,mm_per_h");
  }
  std::vector<std::pair<double, double>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    double t = 0.0, v = 0.0;
    char comma = 0;
    if (!(ss >> t >> comma >> v) || comma != ',' || !(ss >> std::ws).eof()) {
      throw std::invalid_argument("precipitation CSV line " + std::to_string(line_no) +
                                  ": expected <t_s>,<mm_per_h>");
    }
    if (!rows.empty() && !(t > rows.back().first)) {
      throw std::invalid_argument("precipitation CSV line " + std::to_string(line_no) +
                                  ": t_s must strictly increase");
    }
    if (!(v >= 0.0)) {
      throw std::invalid_argument("precipitation CSV line " + std::to_string(line_no) +
                                  ": mm_per_h must be >= 0");
    }
    rows.emplace_back(t, v);
  }
  return PrecipitationSeries(std::move(rows));
}

double PrecipitationSeries::at(double t_s) const {
  const auto it = std::upper_bound(rows_.begin(), rows_.end(), t_s,
                                   [](double t, const auto& row) { return t < row.first; });
  return it == rows_.begin() ? 0.0 : std::prev(it)->second;
}

std::vector<FaultEvent> rain_events(const FaultModelConfig& config, const std::string& gs_id,
                                    const PrecipitationSeries& precipitation, double t0_s,
                                    double t1_s) {
  std::vector<FaultEvent> events;
  if (!(t1_s > t0_s)) return events;
  std::vector<double> change_points{t0_s};
  for (const auto& [t, v] : precipitation.rows()) {
    if (t > t0_s && t < t1_s) change_points.push_back(t);
  }
  double last_mult = 1.0, last_lat = 1.0;
  for (double t : change_points) {
    const double p = precipitation.at(t);
    const double mult = rain_multiplier(config, p);
    const double lat = rain_latency_multiplier(config, p);
    if (mult == last_mult && lat == last_lat) continue;
    events.push_back(make_event(t, FaultKind::gs_link_degraded, GroundLinkTarget{gs_id},
                                {{"throughput_multiplier", mult},
                                 {"latency_factor", lat},
                                 {"precip_mm_h", p}}));
    last_mult = mult;
    last_lat = lat;
  }
  return events;
}

std::vector<FaultEvent> sample_handover_spikes(const FaultModelConfig& config,
                                               std::span<const std::string> gs_ids, double t0_s,
                                               double t1_s, std::uint64_t seed) {
  std::vector<FaultEvent> events;
  if (!(t1_s > t0_s)) return events;
  for (const std::string& gs : gs_ids) {
    RandomStream rng(seed, "handover/" + gs);
    for (double t = t0_s + rng.uniform(config.handover_min_s, config.handover_max_s); t < t1_s;
         t += rng.uniform(config.handover_min_s, config.handover_max_s)) {
      const double loss = rng.uniform(config.handover_loss_min, config.handover_loss_max);
      events.push_back(make_event(t, FaultKind::handover_spike, GroundLinkTarget{gs},
                                  {{"loss_rate", loss}, {"duration_s", config.handover_spike_s}}));
    }
  }
  std::sort(events.begin(), events.end(), by_time);
  return events;
}

std::vector<FaultEvent> handover_spikes_from_schedule(const FaultModelConfig& config,
                                                      const std::string& gs_id,
                                                      std::span<const Handover> schedule,
                                                      double t0_s, double t1_s,
                                                      std::uint64_t seed) {
  std::vector<FaultEvent> events;
  RandomStream rng(seed, "handover/" + gs_id);
  for (const Handover& h : schedule) {
    if (h.t_s < t0_s || h.t_s >= t1_s) continue;
    const double loss = rng.uniform(config.handover_loss_min, config.handover_loss_max);
    events.push_back(make_event(h.t_s, FaultKind::handover_spike, GroundLinkTarget{gs_id},
                                {{"loss_rate", loss}, {"duration_s", config.handover_spike_s}}));
  }
  std::sort(events.begin(), events.end(), by_time);
  return events;
}

std::vector<ManeuverEvent> sample_maneuvers(const FaultModelConfig& config,
                                            std::span<const SatelliteId> fleet, double t0_s,
                                            double t1_s, std::uint64_t seed) {
  std::vector<ManeuverEvent> out;
  const double rate_per_s = config.maneuver_rate_per_sat_year / constants::kSecondsPerYear;
  if (!(t1_s > t0_s) || !(rate_per_s > 0.0)) return out;
  for (const SatelliteId& sat : fleet) {
    RandomStream rng(seed, "maneuver/" + to_string(sat));
    for (double t = t0_s + rng.exponential(rate_per_s); t < t1_s; t += rng.exponential(rate_per_s)) {
      const double magnitude = rng.uniform(config.maneuver_dh_min_km, config.maneuver_dh_max_km);
      const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
      out.push_back({sat, canonical_number(t), canonical_number(sign * magnitude),
                     canonical_number(config.maneuver_dwell_s)});
    }
  }
  std::sort(out.begin(), out.end(), [](const ManeuverEvent& a, const ManeuverEvent& b) {
    return std::tie(a.start_s, a.sat) < std::tie(b.start_s, b.sat);
  });
  return out;
}

std::vector<FaultEvent> maneuver_fault_events(std::span<const ManeuverEvent> maneuvers,
                                              double t1_s) {
  std::vector<FaultEvent> events;
  for (const auto& m : maneuvers) {
    if (m.start_s < t1_s) {
      events.push_back(make_event(m.start_s, FaultKind::maneuver_start, SatelliteTarget{m.sat},
                                  {{"dh_km", m.dh_km}, {"dwell_s", m.dwell_s}}));
    }
    const double end = m.start_s + m.dwell_s;
    if (end < t1_s) {
      events.push_back(make_event(end, FaultKind::maneuver_end, SatelliteTarget{m.sat},
                                  {{"dh_km", m.dh_km}}));
    }
  }
  std::sort(events.begin(), events.end(), by_time);
  return events;
}

double active_altitude_offset(std::span<const ManeuverEvent> events, const SatelliteId& sat,
                              double t_s) {
  double sum = 0.0;
  for (const auto& m : events) {
    if (m.sat == sat && m.start_s <= t_s && t_s < m.start_s + m.dwell_s) sum += m.dh_km;
  }
  return std::clamp(sum, -kMaxCombinedOffsetKm, kMaxCombinedOffsetKm);
}

double maneuver_delay_bound_s(double dh_km) { return propagation_delay(2.0 * std::abs(dh_km)); }

ManeuverSchedule::ManeuverSchedule(const Constellation& constellation,
                                   std::span<const ManeuverEvent> events)
    : per_satellite_(constellation.size()) {
  for (const auto& m : events) per_satellite_[constellation.index_of(m.sat)].push_back(m);
}

std::pair<double, double> ManeuverSchedule::offset_at(std::size_t index, double t_s) const {
  if (per_satellite_.empty()) return {0.0, 0.0};
  double sum = 0.0;
  double segment_start = 0.0;
  for (const auto& m : per_satellite_[index]) {
    if (m.start_s <= t_s && t_s < m.start_s + m.dwell_s) {
      sum += m.dh_km;
      segment_start = std::max(segment_start, m.start_s);
    }
  }
  return {std::clamp(sum, -kMaxCombinedOffsetKm, kMaxCombinedOffsetKm), segment_start};
}

EciPosition ManeuverSchedule::position(const Constellation& constellation, std::size_t index,
                                       double t_s) const {
  const CircularElements& e = constellation.satellites()[index].elements;
  const auto [offset, start] = offset_at(index, t_s);
  if (offset == 0.0) return propagate(e, t_s);
  return propagate(advance_to(e, start), t_s, offset);
}

std::vector<EciPosition> ManeuverSchedule::positions(const Constellation& constellation,
                                                     double t_s) const {
  std::vector<EciPosition> out;
  out.reserve(constellation.size());
  for (std::size_t i = 0; i < constellation.size(); ++i) out.push_back(position(constellation, i, t_s));
  return out;
}

}  // namespace leofault
