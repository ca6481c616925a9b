// Acceptance suite: one PASS/FAIL line per criterion.
//
//   leofault_acceptance --cli <leofault> --unit-tests <leofault_tests> [--criterion N]
//
// Exit status is non-zero if any selected criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "CLI11.hpp"
#include "leofault/faults.hpp"
#include "leofault/geometry.hpp"
#include "leofault/stats.hpp"
#include "leofault/topology.hpp"
#include "leofault/trace.hpp"

namespace fs = std::filesystem;
using namespace leofault;

namespace {

// ---- pinned tolerances ------------------------------------------------------

constexpr double kIslThresholdKm = 80.0;

// 1: dense shell
constexpr double kDenseCrossMinKm = 400.0;
constexpr double kDenseCrossMaxKm = 560.0;
constexpr double kDenseBelow500Lo = 0.3;
constexpr double kDenseBelow500Hi = 0.7;
constexpr double kDenseRuntimeBudgetS = 60.0;

// 2: sparse polar shell
constexpr double kSparseInfeasibleTarget = 0.25;
constexpr double kSparseInfeasibleTol = 0.15;

// 3: SEU arithmetic
constexpr double kSeuLow = 26.448;
constexpr double kSeuHigh = 264.48;
constexpr double kSeuDecimalsTol = 5e-4;  // exact to 3 decimals
constexpr int kSeuMonteCarloSeeds = 2000;
constexpr double kSeuMonteCarloRelTol = 0.05;

// 4: TID
constexpr double kDose73Krad = 40.0;
constexpr double kLifetime73Years = 6.25;
constexpr double kDoseTol = 1e-9;

// 5: maneuvers
constexpr double kManeuverRatePerYear = 12.0;
constexpr double kManeuverRateRelTol = 0.05;
constexpr int kManeuverSatellites = 100;
constexpr double kManeuverYears = 10.0;
constexpr double kManeuverDhMinKm = 1.0;
constexpr double kManeuverDhMaxKm = 3.0;
constexpr double kManeuverDelayBoundS = 20.02e-6;

// 6: bent-pipe latency
constexpr double kRttZenithMs = 7.34;
constexpr double kRtt25Ms = 14.99;
constexpr double kRttRelTol = 0.005;

// 7: rain and handover spikes
constexpr double kRainModerate = 120.0 / 215.0;
constexpr double kRainModerateTol = 1e-4;
constexpr double kRainLinearityTol = 1e-12;
constexpr double kRainContinuityStep = 1e-6;
constexpr int kSpikesMin = 30;
constexpr int kSpikesMax = 60;
constexpr double kLossMin = 0.01;
constexpr double kLossMax = 0.02;

// ---- helpers ----------------------------------------------------------------

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::string cli;
  std::string unit_tests;
  fs::path work;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& command) {
  Run r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Value of "key: value" in command output; empty if absent.
std::string field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return {};
}

double number_field(const std::string& out, const std::string& key) {
  const auto v = field(out, key);
  return v.empty() ? NAN : std::strtod(v.c_str(), nullptr);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// ---- criteria ---------------------------------------------------------------

Outcome dense_shell(const Context&) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<ShellSpec> shells{{550.0, 53.0, 72, 22}};
  const auto c = Constellation::from_shells(shells);
  const auto samples = collect_grazing_samples(c, 0.0, 3600.0, 10.0, true);
  std::vector<double> all = samples.intra_plane;
  all.insert(all.end(), samples.cross_plane.begin(), samples.cross_plane.end());
  const auto cdf = CdfTable::from_samples(all);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const double infeasible = infeasible_fraction(cdf, kIslThresholdKm);
  const auto [lo, hi] = std::minmax_element(samples.cross_plane.begin(), samples.cross_plane.end());
  const double below500 = static_cast<double>(std::count_if(all.begin(), all.end(), [](double v) {
                            return v < 500.0;
                          })) / static_cast<double>(all.size());

  Outcome o;
  o.pass = infeasible == 0.0 && *lo >= kDenseCrossMinKm && *hi <= kDenseCrossMaxKm &&
           below500 >= kDenseBelow500Lo && below500 <= kDenseBelow500Hi && seconds < kDenseRuntimeBudgetS;
  o.detail = "infeasible=" + fmt("%.4f", infeasible) + " cross-plane minima in [" + fmt("%.2f", *lo) + ", " +
             fmt("%.2f", *hi) + "] km, below 500 km=" + fmt("%.3f", below500) + ", " + fmt("%.1f", seconds) +
             " s";
  return o;
}

Outcome sparse_shell(const Context&) {
  const std::vector<ShellSpec> shells{{560.0, 97.6, 6, 58}};
  const auto c = Constellation::from_shells(shells);
  const auto per_link = collect_grazing_samples(c, 0.0, 3600.0, 10.0, true);
  std::vector<double> all = per_link.intra_plane;
  all.insert(all.end(), per_link.cross_plane.begin(), per_link.cross_plane.end());
  const double infeasible = infeasible_fraction(CdfTable::from_samples(all), kIslThresholdKm);
  const bool intra_ok = std::all_of(per_link.intra_plane.begin(), per_link.intra_plane.end(),
                                    [](double v) { return is_isl_viable(v, kIslThresholdKm); });
  // Reported for comparison: one sample per link per step.
  const double per_step = infeasible_fraction(min_isl_altitude_cdf(c, 0.0, 3600.0, 10.0, false), kIslThresholdKm);

  Outcome o;
  o.pass = std::abs(infeasible - kSparseInfeasibleTarget) <= kSparseInfeasibleTol && intra_ok;
  o.detail = "per-link-min infeasible=" + fmt("%.4f", infeasible) + " (target 0.25 +/- 0.15), intra-plane " +
             (intra_ok ? "all viable" : "NOT all viable") + "; per-step sampling gives " + fmt("%.4f", per_step);
  return o;
}

Outcome seu_arithmetic(const Context& ctx) {
  const auto low = run(quote(ctx.cli) + " seu --satellites 4408 --devices 60 --rate 1e-4 --days 1");
  const auto high = run(quote(ctx.cli) + " seu --satellites 4408 --devices 60 --rate 1e-3 --days 1");
  const double v_low = number_field(low.out, "expected_seu_events");
  const double v_high = number_field(high.out, "expected_seu_events");

  // Small instance: 100 satellites, 60 devices, 1e-3 per device-day, 1 day.
  const auto mc = run(quote(ctx.cli) + " seu --satellites 100 --devices 60 --rate 1e-3 --days 1 --monte-carlo " +
                      std::to_string(kSeuMonteCarloSeeds) + " --seed 1");
  const double analytic = number_field(mc.out, "expected_seu_events");
  const double sampled = number_field(mc.out, "sampled_mean_seu_events");
  const double rel = std::abs(sampled - analytic) / analytic;

  Outcome o;
  o.pass = low.status == 0 && high.status == 0 && mc.status == 0 && std::abs(v_low - kSeuLow) < kSeuDecimalsTol &&
           std::abs(v_high - kSeuHigh) < kSeuDecimalsTol && rel <= kSeuMonteCarloRelTol;
  o.detail = "seu prints " + field(low.out, "expected_seu_events") + " and " + field(high.out, "expected_seu_events") +
             "; Monte Carlo mean " + fmt("%.4f", sampled) + " vs " + fmt("%.4f", analytic) + " over " +
             std::to_string(kSeuMonteCarloSeeds) + " seeds (" + fmt("%.2f", rel * 100.0) + "%)";
  return o;
}

Outcome tid(const Context& ctx) {
  const auto r73 = run(quote(ctx.cli) + " dose --inclination 73 --limit-krad 50 --years 5");
  const auto r107 = run(quote(ctx.cli) + " dose --inclination 107 --limit-krad 50 --years 5");
  const auto r0 = run(quote(ctx.cli) + " dose --inclination 0 --limit-krad 50 --years 5");
  const double dose73 = number_field(r73.out, "mission_dose_krad");
  const double life73 = number_field(r73.out, "lifetime_years");
  const double dose0 = number_field(r0.out, "mission_dose_krad");

  const auto profile = DoseProfile::default_profile();
  const bool mirror = dose_rate(profile, 107.0, 5.0) == dose_rate(profile, 73.0, 5.0) &&
                      field(r107.out, "mission_dose_krad") == field(r73.out, "mission_dose_krad");

  Outcome o;
  o.pass = r73.status == 0 && r0.status == 0 && r107.status == 0 && std::abs(dose73 - kDose73Krad) <= kDoseTol &&
           field(r73.out, "survives") == "true" && std::abs(life73 - kLifetime73Years) <= kDoseTol &&
           std::abs(dose0) <= kDoseTol && mirror;
  o.detail = "73 deg: dose " + field(r73.out, "mission_dose_krad") + " krad, survives " + field(r73.out, "survives") +
             ", lifetime " + field(r73.out, "lifetime_years") + " y; 0 deg: " + field(r0.out, "mission_dose_krad") +
             " krad; dose(107) " + (mirror ? "==" : "!=") + " dose(73)";
  return o;
}

Outcome maneuvers(const Context&) {
  FaultModelConfig config;
  std::vector<SatelliteId> fleet;
  for (int i = 0; i < kManeuverSatellites; ++i) fleet.push_back({0, i / 10, i % 10});
  const auto events = sample_maneuvers(config, fleet, 0.0, kManeuverYears * constants::kSecondsPerYear, 2024);
  const double rate = static_cast<double>(events.size()) / (kManeuverSatellites * kManeuverYears);
  const bool dh_ok = std::all_of(events.begin(), events.end(), [](const ManeuverEvent& m) {
    return std::abs(m.dh_km) >= kManeuverDhMinKm && std::abs(m.dh_km) <= kManeuverDhMaxKm;
  });

  // Largest one-way delay change over every +GRID link of a dense shell when
  // endpoints shift by 3 km in the same or opposite directions.
  const std::vector<ShellSpec> shells{{550.0, 53.0, 72, 22}};
  const auto c = Constellation::from_shells(shells);
  const auto edges = isl_edges(c);
  const double onset = 1000.0;
  const auto nominal = nominal_positions(c, onset);
  double worst_s = 0.0;
  for (int pattern = 0; pattern < 2; ++pattern) {
    std::vector<ManeuverEvent> shifted;
    for (const auto& s : c.satellites()) {
      const double sign = (pattern == 0 || (s.id.plane + s.id.index) % 2 == 0) ? 1.0 : -1.0;
      shifted.push_back({s.id, onset, sign * kManeuverDhMaxKm, config.maneuver_dwell_s});
    }
    const ManeuverSchedule schedule(c, shifted);
    const auto moved = schedule.positions(c, onset);
    for (const auto& e : edges) {
      const double before = distance(nominal[e.a], nominal[e.b]);
      const double after = distance(moved[e.a], moved[e.b]);
      worst_s = std::max(worst_s, std::abs(propagation_delay(after) - propagation_delay(before)));
    }
  }
  const double bound = maneuver_delay_bound_s(kManeuverDhMaxKm);

  Outcome o;
  o.pass = std::abs(rate - kManeuverRatePerYear) / kManeuverRatePerYear <= kManeuverRateRelTol && dh_ok &&
           bound <= kManeuverDelayBoundS && worst_s <= kManeuverDelayBoundS;
  o.detail = "rate " + fmt("%.3f", rate) + "/sat/yr over " + std::to_string(events.size()) + " maneuvers, |dh| " +
             (dh_ok ? "within" : "outside") + " [1, 3] km, worst link delay change " + fmt("%.3f", worst_s * 1e6) +
             " us (bound " + fmt("%.4f", bound * 1e6) + " us)";
  return o;
}

Outcome latency(const Context& ctx) {
  const auto zenith = run(quote(ctx.cli) + " rtt --gs 0,0 --alt-km 550 --elevation 90");
  const auto low = run(quote(ctx.cli) + " rtt --gs 0,0 --alt-km 550 --elevation 25");
  const double z = number_field(zenith.out, "rtt_ms");
  const double l = number_field(low.out, "rtt_ms");
  Outcome o;
  o.pass = zenith.status == 0 && low.status == 0 && std::abs(z - kRttZenithMs) <= kRttRelTol * kRttZenithMs &&
           std::abs(l - kRtt25Ms) <= kRttRelTol * kRtt25Ms;
  o.detail = "zenith " + fmt("%.4f", z) + " ms, 25 deg " + fmt("%.4f", l) + " ms";
  return o;
}

std::string station_config(double duration_s) {
  return R"({
  "shells": [{"altitude_km": 550, "inclination_deg": 53, "planes": 72, "sats_per_plane": 22}],
  "ground_stations": [
    {"id": "seattle", "latitude_deg": 47.6, "longitude_deg": -122.3},
    {"id": "madrid", "latitude_deg": 40.4, "longitude_deg": -3.7, "precip_mm_h": 3},
    {"id": "singapore", "latitude_deg": 1.35, "longitude_deg": 103.8, "precip_mm_h": 8}
  ],
  "duration_s": )" + fmt("%g", duration_s) + R"(,
  "step_s": 10,
  "seed": 20250101
}
)";
}

Outcome rain_and_spikes(const Context& ctx) {
  const FaultModelConfig config;
  const bool anchors = rain_multiplier(config, 0.0) == 1.0 && rain_multiplier(config, 2.0) == 1.0 &&
                       std::abs(rain_multiplier(config, 4.0) - kRainModerate) <= kRainModerateTol;
  // Piecewise linear: zero second differences away from the two knots;
  // continuous: no jump across the knots.
  bool linear = true;
  for (double p = 0.05; p < 8.0; p += 0.05) {
    if (std::abs(p - 2.0) < 0.06 || std::abs(p - 4.0) < 0.06) continue;
    const double d2 = rain_multiplier(config, p - 0.05) - 2.0 * rain_multiplier(config, p) +
                      rain_multiplier(config, p + 0.05);
    if (std::abs(d2) > kRainLinearityTol) linear = false;
  }
  double jump = 0.0;
  for (double knot : {2.0, 4.0}) {
    jump = std::max(jump, std::abs(rain_multiplier(config, knot + kRainContinuityStep) -
                                   rain_multiplier(config, knot - kRainContinuityStep)));
  }
  const bool continuous = jump < 1e-6;

  const auto cfg = ctx.work / "spikes.json";
  const auto out = ctx.work / "spikes.jsonl";
  write_file(cfg, station_config(3600.0));
  const auto sim = run(quote(ctx.cli) + " simulate --config " + quote(cfg.string()) + " --out " + quote(out.string()));
  std::map<std::string, int> per_station;
  bool loss_ok = true;
  try {
    std::ifstream in(out);
    for (const auto& e : read_trace(in)) {
      if (e.kind != FaultKind::handover_spike) continue;
      ++per_station[std::get<GroundLinkTarget>(e.target).gs_id];
      const double loss = e.params.at("loss_rate");
      if (loss < kLossMin || loss > kLossMax) loss_ok = false;
    }
  } catch (const std::exception&) {
    loss_ok = false;
  }
  bool counts_ok = per_station.size() == 3;
  std::string counts;
  for (const auto& [gs, n] : per_station) {
    counts += (counts.empty() ? "" : ", ") + gs + "=" + std::to_string(n);
    if (n < kSpikesMin || n > kSpikesMax) counts_ok = false;
  }

  Outcome o;
  o.pass = anchors && linear && continuous && sim.status == 0 && counts_ok && loss_ok;
  o.detail = "multiplier(4)=" + fmt("%.6f", rain_multiplier(config, 4.0)) + (linear ? ", piecewise linear" : ", NOT linear") +
             (continuous ? ", continuous" : ", discontinuous") + "; spikes per station: " + counts +
             (loss_ok ? ", losses in [1%, 2%]" : ", loss out of range");
  return o;
}

Outcome determinism(const Context& ctx) {
  const auto cfg = ctx.work / "determinism.json";
  write_file(cfg, station_config(1800.0));
  const auto a = ctx.work / "a.jsonl";
  const auto b = ctx.work / "b.jsonl";
  const auto ra = run(quote(ctx.cli) + " simulate --config " + quote(cfg.string()) + " --out " + quote(a.string()));
  const auto rb = run(quote(ctx.cli) + " simulate --config " + quote(cfg.string()) + " --out " + quote(b.string()));
  const std::string bytes_a = slurp(a);
  const bool identical = ra.status == 0 && rb.status == 0 && !bytes_a.empty() && bytes_a == slurp(b);

  // Every event line parses and re-serializes to itself.
  bool round_trip = true;
  std::size_t lines = 0;
  {
    std::istringstream in(bytes_a);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      ++lines;
      try {
        if (serialize_event(parse_event(line)) != line) round_trip = false;
      } catch (const std::exception&) {
        round_trip = false;
      }
    }
  }

  // CDF CSVs from both sampling modes are monotone and end at 1.
  bool cdf_ok = true;
  for (const char* mode : {"", " --per-link-min"}) {
    const auto csv = ctx.work / "cdf.csv";
    const auto r = run(quote(ctx.cli) + " isl-cdf --config " + quote(cfg.string()) + " --out " + quote(csv.string()) + mode);
    std::istringstream in(slurp(csv));
    std::string line;
    std::getline(in, line);
    if (r.status != 0 || line != "value_km,proportion") cdf_ok = false;
    double prev_v = -1e300, prev_p = 0.0;
    int rows = 0;
    while (std::getline(in, line)) {
      double v = 0.0, p = 0.0;
      if (std::sscanf(line.c_str(), "%lf,%lf", &v, &p) != 2 || !(v > prev_v) || p < prev_p || p > 1.0) cdf_ok = false;
      prev_v = v;
      prev_p = p;
      ++rows;
    }
    if (rows == 0 || prev_p != 1.0) cdf_ok = false;
  }

  const auto props = run(quote(ctx.unit_tests) + " --test-suite=properties --no-colors");
  const bool props_ok = props.status == 0;

  Outcome o;
  o.pass = identical && round_trip && lines > 0 && cdf_ok && props_ok;
  o.detail = std::string(identical ? "traces byte-identical" : "traces DIFFER") + ", " + std::to_string(lines) +
             " events " + (round_trip ? "round-trip" : "do NOT round-trip") + ", CDF CSVs " +
             (cdf_ok ? "monotone ending at 1" : "malformed") + ", property suites " + (props_ok ? "pass" : "FAIL");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(const Context&)> check;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"leofault acceptance suite"};
  Context ctx;
  int only = 0;
  app.add_option("--cli", ctx.cli, "Path to the leofault executable")->required();
  app.add_option("--unit-tests", ctx.unit_tests, "Path to the unit test executable")->required();
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  ctx.work = fs::temp_directory_path() / ("leofault-acceptance-" + std::to_string(getpid()));
  fs::create_directories(ctx.work);

  const std::vector<Criterion> criteria{
      {1, "dense shell ISL grazing CDF", dense_shell},
      {2, "sparse polar shell infeasibility", sparse_shell},
      {3, "SEU fleet arithmetic", seu_arithmetic},
      {4, "TID dose and lifetime", tid},
      {5, "maneuver rate and delay impact", maneuvers},
      {6, "bent-pipe latency", latency},
      {7, "rain fade and handover spikes", rain_and_spikes},
      {8, "determinism and formats", determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.check(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << "  " << c.name << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  fs::remove_all(ctx.work);
  return failures == 0 ? 0 : 1;
}
