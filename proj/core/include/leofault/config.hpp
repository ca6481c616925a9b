#pragma once

// Simulation configuration: a single JSON document.
//
//   {
//     "shells": [{"altitude_km": 550, "inclination_deg": 53, "planes": 72,
//                 "sats_per_plane": 22, "raan_spread_deg": 360, "phase_offset_f": 0}],
//     "tle_files": ["starlink.tle"],
//     "ground_stations": [{"id": "berlin", "latitude_deg": 52.5, "longitude_deg": 13.4,
//                          "min_elevation_deg": 25, "precip_mm_h": 0}],
//     "faults": {"seu_rate_per_device_day": 1e-4, ...},
//     "duration_s": 86400, "step_s": 10, "seed": 42,
//     "isl_threshold_km": 80, "earth_radius_km": 6371
//   }
//
// Unknown keys are rejected at every level. Relative paths (tle_files,
// precip_csv) resolve against the directory of the configuration file.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leofault/faults.hpp"
#include "leofault/geometry.hpp"
#include "leofault/orbital.hpp"

namespace leofault {

struct GroundStationConfig {
  GroundStation station;
  // At most one of the two; neither means a dry link.
  std::optional<double> precip_mm_h;
  std::optional<std::string> precip_csv;
};

struct SimulationConfig {
  std::vector<ShellSpec> shells;
  std::vector<std::string> tle_files;
  std::vector<GroundStationConfig> ground_stations;
  FaultModelConfig faults;
  double duration_s = 86400.0;
  double step_s = 10.0;
  std::uint64_t seed = 0;
  double isl_threshold_km = 80.0;
  double earth_radius_km = constants::kEarthRadiusKm;
};

// Throws ConfigError naming the offending field.
void validate(const SimulationConfig& config);

// Parses and validates. Throws ConfigError.
SimulationConfig parse_config(const std::string& json_text, const std::string& base_dir = ".");
SimulationConfig load_config(const std::string& path);

// Every field, defaults included, as pretty-printed JSON.
std::string config_to_json(const SimulationConfig& config);

}  // namespace leofault
