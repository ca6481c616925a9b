#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "leofault/config.hpp"
#include "leofault/orbital.hpp"
#include "leofault/trace.hpp"

namespace leofault {

struct SimulationSummary {
  std::size_t satellites = 0;
  std::size_t isl_links = 0;
  std::array<std::size_t, kFaultKindCount> events_by_kind{};
  std::size_t isl_link_samples = 0;
  std::size_t isl_infeasible_samples = 0;
  double expected_seu = 0.0;
  std::size_t sampled_seu = 0;
  std::size_t maneuvers = 0;
  std::vector<std::string> warnings;
  std::string effective_config_json;

  double infeasible_fraction() const {
    return isl_link_samples == 0 ? 0.0
                                 : static_cast<double>(isl_infeasible_samples) / isl_link_samples;
  }
};

struct SimulationResult {
  std::vector<FaultEvent> events;
  SimulationSummary summary;
};

// Constellation from the configured shells followed by one catalog shell per
// TLE file. Eccentric TLEs add a warning.
Constellation build_simulation_constellation(const SimulationConfig& config,
                                             std::vector<std::string>* warnings = nullptr);

// Runs every fault model over [0, duration_s) and merges the traces. Output
// depends only on the configuration (seed included).
SimulationResult run_simulation(const SimulationConfig& config);

// Human-readable report, defaults materialized. Warnings are not included;
// they belong on the error stream.
std::string format_summary(const SimulationSummary& summary);

}  // namespace leofault
