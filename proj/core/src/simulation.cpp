#include "leofault/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "leofault/faults.hpp"
#include "leofault/tle.hpp"
#include "leofault/topology.hpp"

namespace leofault {

namespace {

std::vector<FaultEvent> isl_transition_events(const Constellation& constellation,
                                              const ManeuverSchedule& maneuvers,
                                              const SimulationConfig& config,
                                              SimulationSummary& summary) {
  const auto edges = isl_edges(constellation);
  summary.isl_links = edges.size();
  std::vector<FaultEvent> events;
  if (edges.empty()) return events;

  const auto sats = constellation.satellites();
  std::vector<char> viable(edges.size(), 1);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * config.step_s;
    if (t >= config.duration_s) break;
    const auto pos = maneuvers.positions(constellation, t);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const double g = grazing_altitude(pos[edges[i].a], pos[edges[i].b], constellation.earth_radius_km());
      const bool ok = is_isl_viable(g, config.isl_threshold_km);
      ++summary.isl_link_samples;
      if (!ok) ++summary.isl_infeasible_samples;
      // Links start up; a link that is down at t = 0 gets an isl_down at 0.
      if (static_cast<bool>(viable[i]) != ok) {
        events.push_back(make_event(t, ok ? FaultKind::isl_up : FaultKind::isl_down,
                                    IslTarget{sats[edges[i].a].id, sats[edges[i].b].id},
                                    {{"grazing_km", g}}));
        viable[i] = ok;
      }
    }
  }
  std::sort(events.begin(), events.end(), event_less);
  return events;
}

PrecipitationSeries load_precipitation(const GroundStationConfig& g) {
  if (g.precip_csv) {
    std::ifstream in(*g.precip_csv);
    if (!in) throw std::runtime_error("cannot open precipitation CSV " + *g.precip_csv);
    try {
      return PrecipitationSeries::parse_csv(in);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(*g.precip_csv + ": " + e.what());
    }
  }
  return PrecipitationSeries::constant(g.precip_mm_h.value_or(0.0));
}

}  // namespace

Constellation build_simulation_constellation(const SimulationConfig& config,
                                             std::vector<std::string>* warnings) {
  Constellation c(config.earth_radius_km);
  for (const auto& shell : config.shells) c.add_shell(shell);
  for (const auto& path : config.tle_files) {
    std::vector<CircularElements> elements;
    for (const auto& rec : tle::read_tle_file(path)) {
      if (warnings != nullptr && rec.eccentricity > tle::kEccentricityWarning) {
        warnings->push_back(path + ": catalog " + std::to_string(rec.catalog_number) +
                            " has eccentricity " + std::to_string(rec.eccentricity) +
                            "; circular approximation is coarse");
      }
      elements.push_back(tle::tle_to_elements(rec));
    }
    c.add_catalog(elements);
  }
  return c;
}

SimulationResult run_simulation(const SimulationConfig& config) {
  validate(config);
  SimulationResult result;
  SimulationSummary& summary = result.summary;
  summary.effective_config_json = config_to_json(config);

  const Constellation constellation = build_simulation_constellation(config, &summary.warnings);
  summary.satellites = constellation.size();
  std::vector<SatelliteId> fleet;
  fleet.reserve(constellation.size());
  for (const auto& s : constellation.satellites()) fleet.push_back(s.id);

  const FaultModelConfig& f = config.faults;
  const double t1 = config.duration_s;
  std::vector<std::vector<FaultEvent>> traces;

  traces.push_back(sample_seu_events(f, fleet, 0.0, t1, config.seed));
  summary.expected_seu = expected_seu_count(f.seu_rate_per_device_day, f.devices_per_satellite,
                                            static_cast<double>(fleet.size()),
                                            t1 / constants::kSecondsPerDay);
  summary.sampled_seu = traces.back().size();

  const auto maneuvers = sample_maneuvers(f, fleet, 0.0, t1, config.seed);
  summary.maneuvers = maneuvers.size();
  traces.push_back(maneuver_fault_events(maneuvers, t1));
  const ManeuverSchedule schedule(constellation, maneuvers);

  traces.push_back(isl_transition_events(constellation, schedule, config, summary));

  std::vector<std::string> gs_ids;
  for (const auto& g : config.ground_stations) {
    gs_ids.push_back(g.station.id);
    traces.push_back(rain_events(f, g.station.id, load_precipitation(g), 0.0, t1));
  }
  if (f.handover_mode == HandoverMode::renewal) {
    traces.push_back(sample_handover_spikes(f, gs_ids, 0.0, t1, config.seed));
  } else {
    for (const auto& g : config.ground_stations) {
      const auto windows = visibility_windows(g.station, constellation, 0.0, t1, config.step_s);
      const auto handovers = handover_schedule(windows);
      traces.push_back(handover_spikes_from_schedule(f, g.station.id, handovers, 0.0, t1, config.seed));
    }
  }

  result.events = merge_traces(traces);
  for (const auto& e : result.events) ++summary.events_by_kind[static_cast<std::size_t>(e.kind)];
  return result;
}

std::string format_summary(const SimulationSummary& s) {
  std::ostringstream out;
  char buf[128];
  out << "satellites: " << s.satellites << "\n";
  out << "isl links: " << s.isl_links << "\n";
  out << "events by kind:\n";
  for (int k = 0; k < kFaultKindCount; ++k) {
    out << "  " << to_string(static_cast<FaultKind>(k)) << ": " << s.events_by_kind[k] << "\n";
  }
  std::snprintf(buf, sizeof buf, "isl infeasible fraction: %.6f (%zu of %zu link samples)\n",
                s.infeasible_fraction(), s.isl_infeasible_samples, s.isl_link_samples);
  out << buf;
  std::snprintf(buf, sizeof buf, "seu expected: %.3f\nseu sampled: %zu\n", s.expected_seu, s.sampled_seu);
  out << buf;
  out << "maneuvers: " << s.maneuvers << "\n";
  out << "effective configuration:\n" << s.effective_config_json << "\n";
  return out.str();
}

}  // namespace leofault
