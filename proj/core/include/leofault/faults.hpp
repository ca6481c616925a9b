#pragma once

// Stochastic and deterministic fault models.
//
// Sampling functions take the master seed and derive one stream per
// (model, target) pair, see rng.hpp. Event lists come back time-sorted.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leofault/orbital.hpp"
#include "leofault/topology.hpp"
#include "leofault/trace.hpp"

namespace leofault {

struct DoseAnchor {
  double inclination_deg = 0.0;
  double mission_dose_krad = 0.0;
};

// Mission total ionizing dose versus inclination for a fixed altitude and
// shielding, mirrored about 90 degrees. Values usually come from external
// radiation-environment tools.
struct DoseProfile {
  std::vector<DoseAnchor> anchors;
  std::string shielding_label = "1mm aluminum";

  // 550 km circular orbit, 1 mm aluminum: ~0 krad at 0 deg, 40 krad peak at
  // 73 deg, 35 krad at 90 deg. Points between anchors are interpolation only.
  static DoseProfile default_profile();
};

// Throws std::invalid_argument unless inclinations are strictly increasing
// within [0, 90] and doses are non-negative.
void validate(const DoseProfile& profile);

enum class HandoverMode { renewal, geometric };

struct FaultModelConfig {
  // Single-event upsets.
  double seu_rate_per_device_day = 1e-4;
  int devices_per_satellite = 60;
  double seu_downtime_s = 30.0;
  double seu_permanent_prob = 0.0;

  // Total ionizing dose.
  double tid_limit_krad = 50.0;
  DoseProfile dose_profile = DoseProfile::default_profile();
  double mission_years = 5.0;

  // Rain fade.
  double rain_light_mm_h = 2.0;
  double rain_moderate_mm_h = 4.0;
  double rain_moderate_multiplier = 120.0 / 215.0;
  double rain_latency_factor = 2.0;

  // Handover loss spikes.
  HandoverMode handover_mode = HandoverMode::renewal;
  double handover_min_s = 60.0;
  double handover_max_s = 120.0;
  double handover_loss_min = 0.01;
  double handover_loss_max = 0.02;
  double handover_spike_s = 1.0;

  // Conjunction-avoidance maneuvers.
  double maneuver_rate_per_sat_year = 12.0;
  double maneuver_dh_min_km = 1.0;
  double maneuver_dh_max_km = 3.0;
  double maneuver_dwell_s = 86400.0;
};

// Throws std::invalid_argument naming the offending field.
void validate(const FaultModelConfig& config);

// --- single-event upsets ----------------------------------------------------

double expected_seu_count(double rate_per_device_day, double devices, double satellites,
                          double days);

// Homogeneous Poisson process per device. Each satellite's devices share one
// stream ("seu/<sat>"): arrivals at the summed rate, device chosen uniformly.
// Devices that failed permanently produce no further events.
std::vector<FaultEvent> sample_seu_events(const FaultModelConfig& config,
                                          std::span<const SatelliteId> fleet, double t0_s,
                                          double t1_s, std::uint64_t seed);

// --- total ionizing dose ----------------------------------------------------

// Mission dose at the inclination divided by mission_years. Throws
// std::invalid_argument for inclinations outside [0, 180].
double dose_rate(const DoseProfile& profile, double inclination_deg, double mission_years);

struct TidResult {
  bool survives = true;
  double dose_krad = 0.0;
  // Infinite when the dose rate is zero.
  double lifetime_years = std::numeric_limits<double>::infinity();
};

TidResult tid_survival(const DoseProfile& profile, double inclination_deg, double limit_krad,
                       double mission_years);

// --- rain fade --------------------------------------------------------------

// 1 up to the light threshold, rain_moderate_multiplier from the moderate
// threshold on, linear in between. Throws for negative precipitation.
double rain_multiplier(const FaultModelConfig& config, double precip_mm_h);
// 1 up to the light threshold, rain_latency_factor from the moderate
// threshold on, linear in between.
double rain_latency_multiplier(const FaultModelConfig& config, double precip_mm_h);

// Step function: each value holds until the next row; zero before the first.
class PrecipitationSeries {
 public:
  PrecipitationSeries() = default;
  // Throws std::invalid_argument unless times strictly increase and values
  // are non-negative.
  explicit PrecipitationSeries(std::vector<std::pair<double, double>> rows);

  static PrecipitationSeries constant(double mm_per_h) { return PrecipitationSeries({{0.0, mm_per_h}}); }
  // CSV with header "t_s,mm_per_h". Throws std::invalid_argument naming the
  // line on malformed input.
  static PrecipitationSeries parse_csv(std::istream& in);

  double at(double t_s) const;
  std::span<const std::pair<double, double>> rows() const { return rows_; }

 private:
  std::vector<std::pair<double, double>> rows_;
};

// gs_link_degraded events whenever the effective link multipliers change
// (including a return to 1.0), plus one at t0 if the link starts degraded.
std::vector<FaultEvent> rain_events(const FaultModelConfig& config, const std::string& gs_id,
                                    const PrecipitationSeries& precipitation, double t0_s,
                                    double t1_s);

// --- handover loss spikes ---------------------------------------------------

// Renewal process per station: inter-arrival uniform in
// [handover_min_s, handover_max_s], loss uniform in [loss_min, loss_max].
std::vector<FaultEvent> sample_handover_spikes(const FaultModelConfig& config,
                                               std::span<const std::string> gs_ids, double t0_s,
                                               double t1_s, std::uint64_t seed);

// Spikes at the handover instants of a geometric schedule.
std::vector<FaultEvent> handover_spikes_from_schedule(const FaultModelConfig& config,
                                                      const std::string& gs_id,
                                                      std::span<const Handover> schedule,
                                                      double t0_s, double t1_s,
                                                      std::uint64_t seed);

// --- maneuvers --------------------------------------------------------------

inline constexpr double kMaxCombinedOffsetKm = 10.0;

struct ManeuverEvent {
  SatelliteId sat;
  double start_s = 0.0;
  double dh_km = 0.0;
  double dwell_s = 0.0;

  bool operator==(const ManeuverEvent&) const = default;
};

// Poisson per satellite at maneuver_rate_per_sat_year; |dh| uniform in
// [dh_min, dh_max] with a uniformly random sign. Sorted by (start, sat).
std::vector<ManeuverEvent> sample_maneuvers(const FaultModelConfig& config,
                                            std::span<const SatelliteId> fleet, double t0_s,
                                            double t1_s, std::uint64_t seed);

// maneuver_start at each start and maneuver_end after the dwell, keeping only
// events before t1.
std::vector<FaultEvent> maneuver_fault_events(std::span<const ManeuverEvent> maneuvers,
                                              double t1_s);

// Sum of dh over events active at t ([start, start + dwell)), clamped to
// +/- kMaxCombinedOffsetKm.
double active_altitude_offset(std::span<const ManeuverEvent> events, const SatelliteId& sat,
                              double t_s);

// Upper bound on the one-way delay change of any link when both endpoints
// shift radially by |dh|.
double maneuver_delay_bound_s(double dh_km);

// Per-satellite maneuver lookup used while propagating a constellation.
class ManeuverSchedule {
 public:
  ManeuverSchedule() = default;
  ManeuverSchedule(const Constellation& constellation, std::span<const ManeuverEvent> events);

  // Offset and the start of the current offset segment for the satellite at
  // position `index` in Constellation::satellites().
  std::pair<double, double> offset_at(std::size_t index, double t_s) const;

  // During a maneuver the satellite flies the offset orbit from the latest
  // active start (re-epoched there, so the phase is continuous); otherwise
  // it sits in its nominal slot.
  EciPosition position(const Constellation& constellation, std::size_t index, double t_s) const;
  std::vector<EciPosition> positions(const Constellation& constellation, double t_s) const;

 private:
  std::vector<std::vector<ManeuverEvent>> per_satellite_;
};

}  // namespace leofault
