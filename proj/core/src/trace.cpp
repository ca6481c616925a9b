#include "leofault/trace.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "leofault/error.hpp"

namespace leofault {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<const char*, kFaultKindCount> kKindNames = {
    "device_reboot", "device_permanent_failure", "gs_link_degraded", "handover_spike",
    "maneuver_start", "maneuver_end", "isl_down", "isl_up"};

std::set<std::string> expected_params(FaultKind kind) {
  switch (kind) {
    case FaultKind::device_reboot:
      return {"downtime_s"};
    case FaultKind::device_permanent_failure:
      return {};
    case FaultKind::gs_link_degraded:
      return {"latency_factor", "precip_mm_h", "throughput_multiplier"};
    case FaultKind::handover_spike:
      return {"duration_s", "loss_rate"};
    case FaultKind::maneuver_start:
      return {"dh_km", "dwell_s"};
    case FaultKind::maneuver_end:
      return {"dh_km"};
    case FaultKind::isl_down:
    case FaultKind::isl_up:
      return {"grazing_km"};
  }
  return {};
}

bool target_matches(FaultKind kind, const FaultTarget& target) {
  switch (kind) {
    case FaultKind::device_reboot:
    case FaultKind::device_permanent_failure:
      return std::holds_alternative<DeviceTarget>(target);
    case FaultKind::gs_link_degraded:
    case FaultKind::handover_spike:
      return std::holds_alternative<GroundLinkTarget>(target);
    case FaultKind::maneuver_start:
    case FaultKind::maneuver_end:
      return std::holds_alternative<SatelliteTarget>(target);
    case FaultKind::isl_down:
    case FaultKind::isl_up:
      return std::holds_alternative<IslTarget>(target);
  }
  return false;
}

json sat_json(const SatelliteId& id) { return json::array({id.shell, id.plane, id.index}); }

json target_json(const FaultTarget& target) {
  return std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        json j = json::object();
        if constexpr (std::is_same_v<T, DeviceTarget>) {
          j["sat"] = sat_json(t.sat);
          j["device"] = t.device;
        } else if constexpr (std::is_same_v<T, SatelliteTarget>) {
          j["sat"] = sat_json(t.sat);
        } else if constexpr (std::is_same_v<T, IslTarget>) {
          j["isl"] = json::array({sat_json(t.a), sat_json(t.b)});
        } else {
          j["gs"] = t.gs_id;
        }
        return j;
      },
      target);
}

// Offset of a key in the raw line, for schema diagnostics.
std::size_t offset_of(std::string_view line, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = line.find(quoted);
  return pos == std::string_view::npos ? 0 : pos;
}

[[noreturn]] void schema_fail(std::string_view line, std::string_view key, const std::string& what) {
  throw ParseError(what, offset_of(line, key));
}

SatelliteId sat_from_json(const json& j, std::string_view line, std::string_view key) {
  if (!j.is_array() || j.size() != 3) schema_fail(line, key, "satellite id must be [shell,plane,index]");
  for (const auto& v : j) {
    if (!v.is_number_integer()) schema_fail(line, key, "satellite id entries must be integers");
  }
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

FaultTarget target_from_json(const json& j, std::string_view line) {
  if (!j.is_object()) schema_fail(line, "target", "target must be an object");
  if (j.contains("gs")) {
    if (j.size() != 1 || !j["gs"].is_string()) schema_fail(line, "gs", "ground-link target is {\"gs\":id}");
    return GroundLinkTarget{j["gs"].get<std::string>()};
  }
  if (j.contains("isl")) {
    const json& isl = j["isl"];
    if (j.size() != 1 || !isl.is_array() || isl.size() != 2) {
      schema_fail(line, "isl", "isl target is {\"isl\":[a,b]}");
    }
    return IslTarget{sat_from_json(isl[0], line, "isl"), sat_from_json(isl[1], line, "isl")};
  }
  if (j.contains("sat")) {
    const SatelliteId sat = sat_from_json(j["sat"], line, "sat");
    if (j.contains("device")) {
      if (j.size() != 2 || !j["device"].is_number_integer()) {
        schema_fail(line, "device", "device target is {\"sat\":[...],\"device\":n}");
      }
      return DeviceTarget{sat, j["device"].get<int>()};
    }
    if (j.size() != 1) schema_fail(line, "target", "unexpected keys in satellite target");
    return SatelliteTarget{sat};
  }
  schema_fail(line, "target", "target must name a device, satellite, isl or gs");
}

}  // namespace

const char* to_string(FaultKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

FaultKind fault_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (name == kKindNames[i]) return static_cast<FaultKind>(i);
  }
  throw std::invalid_argument("unknown fault kind: " + std::string(name));
}

double canonical_number(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("trace numbers must be finite");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", kTraceSignificantDigits, v);
  return std::strtod(buf, nullptr);
}

void validate(const FaultEvent& e) {
  if (!(e.t_s >= 0.0)) throw std::invalid_argument("event time must be >= 0");
  if (!target_matches(e.kind, e.target)) {
    throw std::invalid_argument(std::string("target does not match kind ") + to_string(e.kind));
  }
  const auto expected = expected_params(e.kind);
  if (e.params.size() != expected.size() ||
      !std::all_of(e.params.begin(), e.params.end(),
                   [&](const auto& kv) { return expected.count(kv.first) == 1; })) {
    throw std::invalid_argument(std::string("parameter keys do not match kind ") + to_string(e.kind));
  }
}

FaultEvent make_event(double t_s, FaultKind kind, FaultTarget target,
                      std::map<std::string, double> params) {
  FaultEvent e{canonical_number(t_s), kind, std::move(target), std::move(params)};
  for (auto& [key, value] : e.params) value = canonical_number(value);
  validate(e);
  return e;
}

bool event_less(const FaultEvent& a, const FaultEvent& b) {
  if (a.t_s != b.t_s) return a.t_s < b.t_s;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.target != b.target) return a.target < b.target;
  return a.params < b.params;
}

std::vector<FaultEvent> merge_traces(std::span<const std::vector<FaultEvent>> traces) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& tr = traces[i];
    for (std::size_t k = 1; k < tr.size(); ++k) {
      if (tr[k].t_s < tr[k - 1].t_s) {
        throw std::invalid_argument("trace " + std::to_string(i) + " is not time-sorted at event " +
                                    std::to_string(k));
      }
    }
    total += tr.size();
  }
  std::vector<FaultEvent> out;
  out.reserve(total);
  for (const auto& tr : traces) out.insert(out.end(), tr.begin(), tr.end());
  std::stable_sort(out.begin(), out.end(), event_less);
  return out;
}

std::string serialize_event(const FaultEvent& e) {
  json j = json::object();
  j["t"] = e.t_s;
  j["kind"] = to_string(e.kind);
  j["target"] = target_json(e.target);
  json params = json::object();
  for (const auto& [key, value] : e.params) params[key] = value;
  j["params"] = std::move(params);
  return j.dump();
}

FaultEvent parse_event(std::string_view line) {
  json j;
  try {
    j = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), err.byte == 0 ? 0 : err.byte - 1);
  }
  if (!j.is_object()) throw ParseError("event must be a JSON object", 0);
  for (const auto& item : j.items()) {
    const auto& k = item.key();
    if (k != "t" && k != "kind" && k != "target" && k != "params") {
      schema_fail(line, k, "unknown event field '" + k + "'");
    }
  }
  if (!j.contains("t") || !j["t"].is_number()) schema_fail(line, "t", "missing numeric field 't'");
  if (!j.contains("kind") || !j["kind"].is_string()) schema_fail(line, "kind", "missing string field 'kind'");
  if (!j.contains("target")) schema_fail(line, "target", "missing field 'target'");
  if (!j.contains("params") || !j["params"].is_object()) {
    schema_fail(line, "params", "missing object field 'params'");
  }

  FaultEvent e;
  e.t_s = j["t"].get<double>();
  try {
    e.kind = fault_kind_from_string(j["kind"].get<std::string>());
  } catch (const std::invalid_argument& err) {
    schema_fail(line, "kind", err.what());
  }
  e.target = target_from_json(j["target"], line);
  for (const auto& item : j["params"].items()) {
    if (!item.value().is_number()) schema_fail(line, item.key(), "parameter values must be numbers");
    e.params[item.key()] = item.value().get<double>();
  }
  try {
    validate(e);
  } catch (const std::invalid_argument& err) {
    schema_fail(line, "params", err.what());
  }
  return e;
}

std::string trace_header() {
  json j = json::object();
  j["schema"] = kTraceSchema;
  return j.dump();
}

void write_trace(std::ostream& out, std::span<const FaultEvent> events) {
  out << trace_header() << '\n';
  for (const auto& e : events) out << serialize_event(e) << '\n';
}

std::vector<FaultEvent> read_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty trace: missing schema header", 0);
  json header;
  try {
    header = json::parse(line);
  } catch (const json::parse_error& err) {
    throw ParseError(std::string("line 1: ") + err.what(), err.byte == 0 ? 0 : err.byte - 1);
  }
  if (!header.is_object() || !header.contains("schema") || header["schema"] != kTraceSchema) {
    throw ParseError("line 1: expected schema header {\"schema\":\"leofault/1\"}", 0);
  }
  std::vector<FaultEvent> events;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      events.push_back(parse_event(line));
    } catch (const ParseError& err) {
      throw ParseError("line " + std::to_string(line_no) + ": " + err.what(), err.byte_offset());
    }
  }
  return events;
}

}  // namespace leofault
