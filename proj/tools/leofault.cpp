// leofault: command-line driver for the LEO constellation fault simulator.
//
//   leofault simulate --config sim.json --out trace.jsonl
//   leofault isl-cdf  --config sim.json --out cdf.csv [--per-link-min]
//   leofault dose     --inclination 73 [--limit-krad 50] [--years 5]
//   leofault seu      --satellites 4408 --devices 60 --rate 1e-4 --days 1
//   leofault tle parse starlink.tle
//   leofault rtt      --gs 52.5,13.4 --alt-km 550 --elevation 25
//
// Exit status: 0 on success, 1 on runtime failure, 2 on invalid input.
// Diagnostics go to stderr; traces and CSVs only to the named files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "leofault/config.hpp"
#include "leofault/error.hpp"
#include "leofault/faults.hpp"
#include "leofault/geometry.hpp"
#include "leofault/simulation.hpp"
#include "leofault/stats.hpp"
#include "leofault/tle.hpp"
#include "leofault/trace.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  return out;
}

// "lat,lon" in degrees.
leofault::GroundStation parse_station_arg(const std::string& text, double min_elevation) {
  std::istringstream ss(text);
  leofault::GroundStation gs;
  char comma = 0;
  if (!(ss >> gs.latitude_deg >> comma >> gs.longitude_deg) || comma != ',' || !(ss >> std::ws).eof()) {
    throw leofault::ConfigError("--gs", "expected <lat>,<lon> in degrees");
  }
  gs.id = text;
  gs.min_elevation_deg = min_elevation;
  try {
    leofault::validate(gs);
  } catch (const std::invalid_argument& e) {
    throw leofault::ConfigError("--gs", e.what());
  }
  return gs;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
  const auto config = leofault::load_config(config_path);
  const auto result = leofault::run_simulation(config);
  for (const auto& w : result.summary.warnings) std::cerr << "warning: " << w << "\n";
  auto out = open_output(out_path);
  leofault::write_trace(out, result.events);
  out.close();
  if (!out) throw std::runtime_error("failed writing " + out_path);
  std::cout << "trace: " << out_path << " (" << result.events.size() << " events)\n";
  std::cout << leofault::format_summary(result.summary);
  return 0;
}

int cmd_isl_cdf(const std::string& config_path, const std::string& out_path, bool per_link_min) {
  const auto config = leofault::load_config(config_path);
  std::vector<std::string> warnings;
  const auto constellation = leofault::build_simulation_constellation(config, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  const auto cdf =
      leofault::min_isl_altitude_cdf(constellation, 0.0, config.duration_s, config.step_s, per_link_min);
  auto out = open_output(out_path);
  cdf.write_csv(out);
  out.close();
  if (!out) throw std::runtime_error("failed writing " + out_path);
  std::cout << "samples: " << cdf.sample_count() << "\n";
  std::cout << "mode: " << (per_link_min ? "per-link-min" : "per-step") << "\n";
  std::cout << "infeasible_fraction: "
            << fmt("%.6f", leofault::infeasible_fraction(cdf, config.isl_threshold_km)) << "\n";
  return 0;
}

int cmd_dose(double inclination, double limit_krad, double years) {
  const auto profile = leofault::DoseProfile::default_profile();
  const auto r = leofault::tid_survival(profile, inclination, limit_krad, years);
  std::cout << "shielding: " << profile.shielding_label << "\n";
  std::cout << "inclination_deg: " << fmt("%g", inclination) << "\n";
  std::cout << "dose_rate_krad_per_year: "
            << fmt("%.3f", leofault::dose_rate(profile, inclination, years)) << "\n";
  std::cout << "mission_dose_krad: " << fmt("%.3f", r.dose_krad) << "\n";
  std::cout << "limit_krad: " << fmt("%g", limit_krad) << "\n";
  std::cout << "survives: " << (r.survives ? "true" : "false") << "\n";
  std::cout << "lifetime_years: "
            << (std::isinf(r.lifetime_years) ? std::string("inf") : fmt("%.3f", r.lifetime_years)) << "\n";
  return 0;
}

int cmd_seu(long satellites, int devices, double rate, double days, int monte_carlo, std::uint64_t seed) {
  const double expected = leofault::expected_seu_count(rate, devices, static_cast<double>(satellites), days);
  std::cout << "expected_seu_events: " << fmt("%.10g", expected) << "\n";
  if (monte_carlo > 0) {
    leofault::FaultModelConfig config;
    config.seu_rate_per_device_day = rate;
    config.devices_per_satellite = devices;
    std::vector<leofault::SatelliteId> fleet;
    for (long i = 0; i < satellites; ++i) fleet.push_back({0, 0, static_cast<int>(i)});
    double total = 0.0;
    for (int run = 0; run < monte_carlo; ++run) {
      total += static_cast<double>(leofault::sample_seu_events(config, fleet, 0.0, days * 86400.0,
                                                               seed + static_cast<std::uint64_t>(run))
                                       .size());
    }
    std::cout << "sampled_mean_seu_events: " << fmt("%.6f", total / monte_carlo) << " (" << monte_carlo
              << " runs)\n";
  }
  return 0;
}

int cmd_tle_parse(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open TLE file " + path);
  int errors = 0;
  for (const auto& entry : leofault::tle::read_tle_stream(in)) {
    if (!entry.record) {
      std::cerr << path << ": " << entry.error << "\n";
      ++errors;
      continue;
    }
    const auto& rec = *entry.record;
    const auto e = leofault::tle::tle_to_elements(rec);
    std::cout << "catalog=" << rec.catalog_number << " name=" << (rec.name ? *rec.name : std::string("-"))
              << " epoch=" << rec.epoch_year << "/" << fmt("%.8f", rec.epoch_day)
              << " inc_deg=" << fmt("%.4f", rec.inclination_deg) << " raan_deg=" << fmt("%.4f", rec.raan_deg)
              << " ecc=" << fmt("%.7f", rec.eccentricity)
              << " mean_motion=" << fmt("%.8f", rec.mean_motion_rev_per_day)
              << " a_km=" << fmt("%.3f", e.semi_major_axis_km)
              << " alt_km=" << fmt("%.3f", e.semi_major_axis_km - leofault::constants::kEarthRadiusKm)
              << " phase_deg=" << fmt("%.4f", e.phase_deg) << "\n";
    if (rec.eccentricity > leofault::tle::kEccentricityWarning) {
      std::cout << "warning: catalog=" << rec.catalog_number << " eccentricity "
                << fmt("%.7f", rec.eccentricity) << " exceeds " << leofault::tle::kEccentricityWarning
                << "; circular approximation is coarse\n";
    }
  }
  return errors == 0 ? 0 : kExitInput;
}

int cmd_rtt(const std::string& gs_text, const std::string& uplink_text, double alt_km, double elevation,
            double min_elevation) {
  const auto gs = parse_station_arg(gs_text, min_elevation);
  const auto uplink = uplink_text.empty() ? gs : parse_station_arg(uplink_text, min_elevation);
  const auto sat = leofault::position_at_elevation(gs, 0.0, alt_km, elevation);
  const double rtt = leofault::bent_pipe_rtt(gs, sat, uplink);
  std::cout << "slant_range_km: " << fmt("%.3f", leofault::distance(leofault::ground_station_eci(gs, 0.0), sat))
            << "\n";
  std::cout << "rtt_ms: " << fmt("%.4f", rtt * 1e3) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO constellation fault-injection simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  auto* simulate = app.add_subcommand("simulate", "Run all fault models and write a JSON-lines trace");
  simulate->add_option("--config", config_path, "Simulation configuration (JSON)")->required();
  simulate->add_option("--out", out_path, "Trace output path")->required();

  bool per_link_min = false;
  auto* isl_cdf = app.add_subcommand("isl-cdf", "Write the CDF of ISL grazing altitudes as CSV");
  isl_cdf->add_option("--config", config_path, "Simulation configuration (JSON)")->required();
  isl_cdf->add_option("--out", out_path, "CSV output path")->required();
  isl_cdf->add_flag("--per-link-min", per_link_min, "One sample per link: its minimum over the window");

  double inclination = 0.0, limit_krad = 50.0, years = 5.0;
  auto* dose = app.add_subcommand("dose", "Mission TID and lifetime for an inclination");
  dose->add_option("--inclination", inclination, "Orbit inclination, degrees")->required()->check(CLI::Range(0.0, 180.0));
  dose->add_option("--limit-krad", limit_krad, "Device TID limit")->capture_default_str();
  dose->add_option("--years", years, "Mission duration the profile refers to")->capture_default_str();

  long satellites = 0;
  int devices = 0, monte_carlo = 0;
  double rate = 0.0, days = 0.0;
  std::uint64_t seed = 1;
  auto* seu = app.add_subcommand("seu", "Expected fleet-wide SEU count");
  seu->add_option("--satellites", satellites)->required()->check(CLI::NonNegativeNumber);
  seu->add_option("--devices", devices)->required()->check(CLI::NonNegativeNumber);
  seu->add_option("--rate", rate, "Events per device per day")->required()->check(CLI::NonNegativeNumber);
  seu->add_option("--days", days)->required()->check(CLI::NonNegativeNumber);
  seu->add_option("--monte-carlo", monte_carlo, "Also report the sampled mean over N seeds");
  seu->add_option("--seed", seed, "First Monte Carlo seed")->capture_default_str();

  std::string tle_path;
  auto* tle = app.add_subcommand("tle", "Two-line element utilities");
  tle->require_subcommand(1);
  auto* tle_parse = tle->add_subcommand("parse", "Parse a 2-line or 3-line TLE file");
  tle_parse->add_option("file", tle_path)->required();

  std::string gs_text, uplink_text;
  double alt_km = 550.0, elevation = 90.0, min_elevation = 25.0;
  auto* rtt = app.add_subcommand("rtt", "Bent-pipe round-trip time through one satellite");
  rtt->add_option("--gs", gs_text, "Ground station <lat>,<lon>")->required();
  rtt->add_option("--uplink", uplink_text, "Uplink station <lat>,<lon> (default: same as --gs)");
  rtt->add_option("--alt-km", alt_km)->required()->check(CLI::PositiveNumber);
  rtt->add_option("--elevation", elevation, "Satellite elevation seen from --gs")->required()->check(CLI::Range(-90.0, 90.0));
  rtt->add_option("--min-elevation", min_elevation, "Station elevation mask")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(config_path, out_path);
    if (*isl_cdf) return cmd_isl_cdf(config_path, out_path, per_link_min);
    if (*dose) return cmd_dose(inclination, limit_krad, years);
    if (*seu) return cmd_seu(satellites, devices, rate, days, monte_carlo, seed);
    if (*tle_parse) return cmd_tle_parse(tle_path);
    if (*rtt) return cmd_rtt(gs_text, uplink_text, alt_km, elevation, min_elevation);
  } catch (const leofault::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitInput;
}
