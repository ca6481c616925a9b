#pragma once

// Fault events and the JSON-lines trace format.
//
// A trace file starts with the header line {"schema":"leofault/1"} followed
// by one event object per line:
//
//   {"t":12.5,"kind":"device_reboot","target":{"sat":[0,3,17],"device":42},
//    "params":{"downtime_s":30.0}}
//
// Targets:  device       {"sat":[shell,plane,index],"device":n}
//           satellite    {"sat":[shell,plane,index]}
//           isl          {"isl":[[shell,plane,index],[shell,plane,index]]}
//           ground_link  {"gs":"station-id"}
//
// Parameter keys per kind (exactly these, no others):
//   device_reboot             downtime_s
//   device_permanent_failure  (none)
//   gs_link_degraded          throughput_multiplier, latency_factor, precip_mm_h
//   handover_spike            loss_rate, duration_s
//   maneuver_start            dh_km, dwell_s
//   maneuver_end              dh_km
//   isl_down, isl_up          grazing_km
//
// Numbers carry at most 9 significant digits. Events built through
// make_event() are rounded to that precision up front, which makes
// parse_event(serialize_event(e)) == e exact.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "leofault/orbital.hpp"

namespace leofault {

inline constexpr std::string_view kTraceSchema = "leofault/1";
inline constexpr int kTraceSignificantDigits = 9;

enum class FaultKind {
  device_reboot,
  device_permanent_failure,
  gs_link_degraded,
  handover_spike,
  maneuver_start,
  maneuver_end,
  isl_down,
  isl_up,
};

inline constexpr int kFaultKindCount = 8;

const char* to_string(FaultKind kind);
// Throws std::invalid_argument for unknown names.
FaultKind fault_kind_from_string(std::string_view name);

struct DeviceTarget {
  SatelliteId sat;
  int device = 0;
  auto operator<=>(const DeviceTarget&) const = default;
};

struct SatelliteTarget {
  SatelliteId sat;
  auto operator<=>(const SatelliteTarget&) const = default;
};

struct IslTarget {
  SatelliteId a;
  SatelliteId b;
  auto operator<=>(const IslTarget&) const = default;
};

struct GroundLinkTarget {
  std::string gs_id;
  auto operator<=>(const GroundLinkTarget&) const = default;
};

using FaultTarget = std::variant<DeviceTarget, SatelliteTarget, IslTarget, GroundLinkTarget>;

struct FaultEvent {
  double t_s = 0.0;
  FaultKind kind = FaultKind::device_reboot;
  FaultTarget target;
  std::map<std::string, double> params;

  bool operator==(const FaultEvent&) const = default;
};

// Rounds to kTraceSignificantDigits significant digits.
double canonical_number(double v);

// Builds an event with canonical numbers; validates kind/target/params.
FaultEvent make_event(double t_s, FaultKind kind, FaultTarget target,
                      std::map<std::string, double> params = {});

// Throws std::invalid_argument when the target or parameter keys do not
// match the kind, or t < 0.
void validate(const FaultEvent& e);

// Total order used for deterministic merging: t, kind, target, params.
bool event_less(const FaultEvent& a, const FaultEvent& b);

// Merges individually time-sorted lists. Throws std::invalid_argument if an
// input is not sorted by time.
std::vector<FaultEvent> merge_traces(std::span<const std::vector<FaultEvent>> traces);

// Single JSON object, no trailing newline.
std::string serialize_event(const FaultEvent& e);
// Throws ParseError with the byte offset of the problem.
FaultEvent parse_event(std::string_view line);

std::string trace_header();
void write_trace(std::ostream& out, std::span<const FaultEvent> events);
// Throws ParseError (offset within the offending line, message names the
// line number) or on a missing/unknown schema header.
std::vector<FaultEvent> read_trace(std::istream& in);

}  // namespace leofault
