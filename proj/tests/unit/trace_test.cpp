#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "leofault/error.hpp"
#include "leofault/orbital.hpp"
#include "leofault/topology.hpp"
#include "leofault/trace.hpp"

using namespace leofault;

namespace {

FaultEvent reboot(double t, int device) {
  return make_event(t, FaultKind::device_reboot, DeviceTarget{{0, 1, 2}, device}, {{"downtime_s", 30.0}});
}

FaultEvent spike(double t, const std::string& gs) {
  return make_event(t, FaultKind::handover_spike, GroundLinkTarget{gs},
                    {{"loss_rate", 0.015}, {"duration_s", 1.0}});
}

std::size_t offset_of(const std::string& line) {
  try {
    parse_event(line);
  } catch (const ParseError& e) {
    return e.byte_offset();
  }
  FAIL("expected ParseError for: " << line);
  return 0;
}

}  // namespace

TEST_SUITE("trace") {

TEST_CASE("kind names") {
  for (int k = 0; k < kFaultKindCount; ++k) {
    const auto kind = static_cast<FaultKind>(k);
    CHECK(fault_kind_from_string(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(fault_kind_from_string("meteor"), std::invalid_argument);
}

TEST_CASE("event validation") {
  CHECK_THROWS_AS(make_event(-1.0, FaultKind::isl_up, IslTarget{}, {{"grazing_km", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_event(1.0, FaultKind::isl_up, SatelliteTarget{}, {{"grazing_km", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_event(1.0, FaultKind::isl_up, IslTarget{}, {{"grazing", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(make_event(1.0, FaultKind::device_permanent_failure, DeviceTarget{}, {{"x", 1.0}}),
                  std::invalid_argument);
  CHECK_NOTHROW(make_event(1.0, FaultKind::device_permanent_failure, DeviceTarget{}));
}

TEST_CASE("merge") {
  const std::vector<FaultEvent> one{reboot(1.0, 0), reboot(3.0, 0)};
  CHECK(merge_traces(std::vector<std::vector<FaultEvent>>{one}) == one);

  const std::vector<FaultEvent> other{spike(2.0, "x")};
  const auto merged = merge_traces(std::vector<std::vector<FaultEvent>>{one, other});
  REQUIRE(merged.size() == 3);
  CHECK(merged[0] == one[0]);
  CHECK(merged[1] == other[0]);
  CHECK(merged[2] == one[1]);

  const std::vector<FaultEvent> a{reboot(5.0, 1), spike(5.0, "b")};
  const std::vector<FaultEvent> b{spike(5.0, "a"), reboot(5.0, 0)};
  CHECK(merge_traces(std::vector<std::vector<FaultEvent>>{a, b}) ==
        merge_traces(std::vector<std::vector<FaultEvent>>{b, a}));

  const std::vector<FaultEvent> unsorted{reboot(3.0, 0), reboot(1.0, 0)};
  CHECK_THROWS_AS(merge_traces(std::vector<std::vector<FaultEvent>>{unsorted}), std::invalid_argument);
}

TEST_CASE("serialization") {
  const auto e = make_event(12.5, FaultKind::device_reboot, DeviceTarget{{0, 3, 17}, 42}, {{"downtime_s", 30.0}});
  const auto line = serialize_event(e);
  CHECK(line == R"({"t":12.5,"kind":"device_reboot","target":{"sat":[0,3,17],"device":42},"params":{"downtime_s":30.0}})");
  CHECK(parse_event(line) == e);

  const auto isl = make_event(1.0 / 3.0, FaultKind::isl_down, IslTarget{{0, 1, 2}, {0, 2, 2}},
                              {{"grazing_km", 79.123456789123}});
  CHECK(isl.t_s == 0.333333333);
  CHECK(parse_event(serialize_event(isl)) == isl);
  const auto sat = make_event(0.0, FaultKind::maneuver_end, SatelliteTarget{{1, 0, 3}}, {{"dh_km", -2.5}});
  CHECK(serialize_event(sat).find(R"("target":{"sat":[1,0,3]})") != std::string::npos);
  CHECK(parse_event(serialize_event(sat)) == sat);
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK(offset_of(R"({"t":1,"kind":"isl_up",)") >= 20);
  CHECK(offset_of(R"({"t":1,,"kind":"isl_up"})") == 7);
  CHECK(offset_of("[1,2]") == 0);
  const std::string unknown_kind = R"({"t":1,"kind":"meteor","target":{"gs":"a"},"params":{}})";
  CHECK(offset_of(unknown_kind) == unknown_kind.find("\"kind\""));
  const std::string extra = R"({"t":1,"kind":"isl_up","target":{"isl":[[0,0,0],[0,0,1]]},"params":{"grazing_km":1},"x":2})";
  CHECK(offset_of(extra) == extra.find("\"x\""));
  const std::string bad_param = R"({"t":1,"kind":"isl_up","target":{"isl":[[0,0,0],[0,0,1]]},"params":{"grazing_km":"high"}})";
  CHECK(offset_of(bad_param) == bad_param.find("\"grazing_km\""));
  const std::string bad_target = R"({"t":1,"kind":"isl_up","target":{"gs":"a"},"params":{"grazing_km":1}})";
  CHECK_THROWS_AS(parse_event(bad_target), ParseError);
}

TEST_CASE("trace files") {
  const std::vector<FaultEvent> events{reboot(1.0, 0), spike(2.0, "x")};
  std::stringstream ss;
  write_trace(ss, events);
  CHECK(ss.str().rfind("{\"schema\":\"leofault/1\"}\n", 0) == 0);
  CHECK(read_trace(ss) == events);

  std::istringstream no_header(serialize_event(events[0]) + "\n");
  CHECK_THROWS_AS(read_trace(no_header), ParseError);
  std::istringstream broken("{\"schema\":\"leofault/1\"}\n" + serialize_event(events[0]) + "\n{\"t\":\n");
  CHECK_THROWS_WITH_AS(read_trace(broken), doctest::Contains("line 3"), ParseError);
}

TEST_CASE("isl_down from a sparse-shell snapshot") {
  const std::vector<ShellSpec> shells{{560.0, 97.6, 6, 58}};
  const auto c = Constellation::from_shells(shells);
  auto prev = link_snapshot(c, 0.0, 80.0);
  bool found = false;
  for (double t = 10.0; t < 3600.0 && !found; t += 10.0) {
    const auto now = link_snapshot(c, t, 80.0);
    for (std::size_t i = 0; i < now.size() && !found; ++i) {
      if (!prev[i].viable || now[i].viable) continue;
      const auto e = make_event(t, FaultKind::isl_down, IslTarget{now[i].a, now[i].b},
                                {{"grazing_km", now[i].grazing_km}});
      const auto line = serialize_event(e);
      const auto back = parse_event(line);
      CHECK(back == e);
      const auto& target = std::get<IslTarget>(back.target);
      CHECK(target.a == now[i].a);
      CHECK(target.b == now[i].b);
      CHECK(target.a.plane != target.b.plane);
      found = true;
    }
    prev = now;
  }
  CHECK(found);
}

}  // TEST_SUITE
