#include "leofault/config.hpp"

#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "leofault/error.hpp"

namespace leofault {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

// Reads typed fields from one JSON object and rejects keys it never asked
// about.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(field(key), "required field is missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    return v.get<double>();
  }

  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(field(key), "required field is missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
    const auto wide = v.get<long long>();
    if (wide < std::numeric_limits<int>::min() || wide > std::numeric_limits<int>::max()) {
      throw ConfigError(field(key), "integer out of range");
    }
    return static_cast<int>(wide);
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(field(key), "required field is missing");
    }
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (seen_.count(item.key()) == 0) throw ConfigError(field(item.key()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Runs a validator that throws std::invalid_argument("<field>: what") and
// rethrows as ConfigError under `prefix`.
template <typename Fn>
void rethrow_as_config(const std::string& prefix, Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon != std::string::npos && msg.find(' ') > colon) {
      throw ConfigError(prefix + "." + msg.substr(0, colon), msg.substr(colon + 2));
    }
    throw ConfigError(prefix, msg);
  }
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? p : (fs::path(base_dir) / path).lexically_normal().string();
}

ShellSpec parse_shell(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ShellSpec s;
  s.altitude_km = r.number("altitude_km");
  s.inclination_deg = r.number("inclination_deg");
  s.planes = r.integer("planes");
  s.sats_per_plane = r.integer("sats_per_plane");
  s.raan_spread_deg = r.number("raan_spread_deg", 360.0);
  s.phase_offset_f = r.integer("phase_offset_f", 0);
  r.finish();
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto space = msg.find(' ');
    throw ConfigError(path + "." + msg.substr(0, space), msg.substr(space + 1));
  }
  return s;
}

GroundStationConfig parse_station(const json& j, const std::string& path, const std::string& base_dir) {
  ObjectReader r(j, path);
  GroundStationConfig g;
  g.station.id = r.text("id");
  if (g.station.id.empty()) throw ConfigError(r.field("id"), "must not be empty");
  g.station.latitude_deg = r.number("latitude_deg");
  g.station.longitude_deg = r.number("longitude_deg");
  g.station.min_elevation_deg = r.number("min_elevation_deg", 25.0);
  if (r.has("precip_mm_h")) {
    g.precip_mm_h = r.number("precip_mm_h");
    if (!(*g.precip_mm_h >= 0.0)) throw ConfigError(r.field("precip_mm_h"), "must be >= 0");
  }
  if (r.has("precip_csv")) g.precip_csv = resolve(base_dir, r.text("precip_csv"));
  if (g.precip_mm_h && g.precip_csv) {
    throw ConfigError(r.field("precip_csv"), "give either precip_mm_h or precip_csv, not both");
  }
  r.finish();
  try {
    validate(g.station);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto space = msg.find(' ');
    throw ConfigError(path + "." + msg.substr(0, space), msg.substr(space + 1));
  }
  return g;
}

DoseProfile parse_dose_profile(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  DoseProfile p;
  p.anchors.clear();
  const json& anchors = r.raw("anchors");
  if (!anchors.is_array()) throw ConfigError(r.field("anchors"), "expected an array of [deg, krad]");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const json& a = anchors[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw ConfigError(r.field("anchors") + "[" + std::to_string(i) + "]",
                        "expected [inclination_deg, mission_dose_krad]");
    }
    p.anchors.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  p.shielding_label = r.text("shielding_label", p.shielding_label);
  r.finish();
  return p;
}

FaultModelConfig parse_faults(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  FaultModelConfig f;
  f.seu_rate_per_device_day = r.number("seu_rate_per_device_day", f.seu_rate_per_device_day);
  f.devices_per_satellite = r.integer("devices_per_satellite", f.devices_per_satellite);
  f.seu_downtime_s = r.number("seu_downtime_s", f.seu_downtime_s);
  f.seu_permanent_prob = r.number("seu_permanent_prob", f.seu_permanent_prob);
  f.tid_limit_krad = r.number("tid_limit_krad", f.tid_limit_krad);
  if (r.has("dose_profile")) f.dose_profile = parse_dose_profile(r.raw("dose_profile"), r.field("dose_profile"));
  f.mission_years = r.number("mission_years", f.mission_years);
  f.rain_light_mm_h = r.number("rain_light_mm_h", f.rain_light_mm_h);
  f.rain_moderate_mm_h = r.number("rain_moderate_mm_h", f.rain_moderate_mm_h);
  f.rain_moderate_multiplier = r.number("rain_moderate_multiplier", f.rain_moderate_multiplier);
  f.rain_latency_factor = r.number("rain_latency_factor", f.rain_latency_factor);
  const std::string mode = r.text("handover_mode", "renewal");
  if (mode == "renewal") {
    f.handover_mode = HandoverMode::renewal;
  } else if (mode == "geometric") {
    f.handover_mode = HandoverMode::geometric;
  } else {
    throw ConfigError(r.field("handover_mode"), "expected \"renewal\" or \"geometric\"");
  }
  f.handover_min_s = r.number("handover_min_s", f.handover_min_s);
  f.handover_max_s = r.number("handover_max_s", f.handover_max_s);
  f.handover_loss_min = r.number("handover_loss_min", f.handover_loss_min);
  f.handover_loss_max = r.number("handover_loss_max", f.handover_loss_max);
  f.handover_spike_s = r.number("handover_spike_s", f.handover_spike_s);
  f.maneuver_rate_per_sat_year = r.number("maneuver_rate_per_sat_year", f.maneuver_rate_per_sat_year);
  f.maneuver_dh_min_km = r.number("maneuver_dh_min_km", f.maneuver_dh_min_km);
  f.maneuver_dh_max_km = r.number("maneuver_dh_max_km", f.maneuver_dh_max_km);
  f.maneuver_dwell_s = r.number("maneuver_dwell_s", f.maneuver_dwell_s);
  r.finish();
  rethrow_as_config(path, [&] { validate(f); });
  return f;
}

}  // namespace

void validate(const SimulationConfig& c) {
  if (c.shells.empty() && c.tle_files.empty()) {
    throw ConfigError("shells", "at least one of shells or tle_files must be non-empty");
  }
  if (!(c.duration_s > 0.0)) throw ConfigError("duration_s", "must be > 0");
  if (!(c.step_s > 0.0)) throw ConfigError("step_s", "must be > 0");
  if (!(c.earth_radius_km > 0.0)) throw ConfigError("earth_radius_km", "must be > 0");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < c.ground_stations.size(); ++i) {
    if (!ids.insert(c.ground_stations[i].station.id).second) {
      throw ConfigError("ground_stations[" + std::to_string(i) + "].id", "duplicate station id");
    }
  }
  rethrow_as_config("faults", [&] { validate(c.faults); });
}

SimulationConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  ObjectReader r(root, "");
  SimulationConfig c;

  if (r.has("shells")) {
    const json& shells = r.raw("shells");
    if (!shells.is_array()) throw ConfigError("shells", "expected an array");
    for (std::size_t i = 0; i < shells.size(); ++i) {
      c.shells.push_back(parse_shell(shells[i], "shells[" + std::to_string(i) + "]"));
    }
  }
  if (r.has("tle_files")) {
    const json& files = r.raw("tle_files");
    if (!files.is_array()) throw ConfigError("tle_files", "expected an array of paths");
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (!files[i].is_string()) throw ConfigError("tle_files[" + std::to_string(i) + "]", "expected a path");
      c.tle_files.push_back(resolve(base_dir, files[i].get<std::string>()));
    }
  }
  if (r.has("ground_stations")) {
    const json& stations = r.raw("ground_stations");
    if (!stations.is_array()) throw ConfigError("ground_stations", "expected an array");
    for (std::size_t i = 0; i < stations.size(); ++i) {
      c.ground_stations.push_back(
          parse_station(stations[i], "ground_stations[" + std::to_string(i) + "]", base_dir));
    }
  }
  if (r.has("faults")) c.faults = parse_faults(r.raw("faults"), "faults");
  c.duration_s = r.number("duration_s");
  c.step_s = r.number("step_s", c.step_s);
  if (r.has("seed")) {
    const json& s = r.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed", "expected an unsigned 64-bit integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.isl_threshold_km = r.number("isl_threshold_km", c.isl_threshold_km);
  c.earth_radius_km = r.number("earth_radius_km", c.earth_radius_km);
  r.finish();
  validate(c);
  return c;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open configuration file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return parse_config(ss.str(), parent.empty() ? "." : parent.string());
}

std::string config_to_json(const SimulationConfig& c) {
  json root = json::object();
  json shells = json::array();
  for (const auto& s : c.shells) {
    shells.push_back({{"altitude_km", s.altitude_km},
                      {"inclination_deg", s.inclination_deg},
                      {"planes", s.planes},
                      {"sats_per_plane", s.sats_per_plane},
                      {"raan_spread_deg", s.raan_spread_deg},
                      {"phase_offset_f", s.phase_offset_f}});
  }
  root["shells"] = shells;
  root["tle_files"] = c.tle_files;
  json stations = json::array();
  for (const auto& g : c.ground_stations) {
    json st = {{"id", g.station.id},
               {"latitude_deg", g.station.latitude_deg},
               {"longitude_deg", g.station.longitude_deg},
               {"min_elevation_deg", g.station.min_elevation_deg}};
    if (g.precip_mm_h) st["precip_mm_h"] = *g.precip_mm_h;
    if (g.precip_csv) st["precip_csv"] = *g.precip_csv;
    stations.push_back(st);
  }
  root["ground_stations"] = stations;

  const FaultModelConfig& f = c.faults;
  json anchors = json::array();
  for (const auto& a : f.dose_profile.anchors) anchors.push_back({a.inclination_deg, a.mission_dose_krad});
  root["faults"] = {
      {"seu_rate_per_device_day", f.seu_rate_per_device_day},
      {"devices_per_satellite", f.devices_per_satellite},
      {"seu_downtime_s", f.seu_downtime_s},
      {"seu_permanent_prob", f.seu_permanent_prob},
      {"tid_limit_krad", f.tid_limit_krad},
      {"dose_profile", {{"anchors", anchors}, {"shielding_label", f.dose_profile.shielding_label}}},
      {"mission_years", f.mission_years},
      {"rain_light_mm_h", f.rain_light_mm_h},
      {"rain_moderate_mm_h", f.rain_moderate_mm_h},
      {"rain_moderate_multiplier", f.rain_moderate_multiplier},
      {"rain_latency_factor", f.rain_latency_factor},
      {"handover_mode", f.handover_mode == HandoverMode::renewal ? "renewal" : "geometric"},
      {"handover_min_s", f.handover_min_s},
      {"handover_max_s", f.handover_max_s},
      {"handover_loss_min", f.handover_loss_min},
      {"handover_loss_max", f.handover_loss_max},
      {"handover_spike_s", f.handover_spike_s},
      {"maneuver_rate_per_sat_year", f.maneuver_rate_per_sat_year},
      {"maneuver_dh_min_km", f.maneuver_dh_min_km},
      {"maneuver_dh_max_km", f.maneuver_dh_max_km},
      {"maneuver_dwell_s", f.maneuver_dwell_s},
  };
  root["duration_s"] = c.duration_s;
  root["step_s"] = c.step_s;
  root["seed"] = c.seed;
  root["isl_threshold_km"] = c.isl_threshold_km;
  root["earth_radius_km"] = c.earth_radius_km;
  return root.dump(2);
}

}  // namespace leofault
