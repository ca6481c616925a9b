#include <string>

#include "doctest.h"
#include "leofault/config.hpp"
#include "leofault/error.hpp"

using namespace leofault;

namespace {

const std::string kData = LEOFAULT_TEST_DATA_DIR;

std::string field_of(const std::string& text) {
  try {
    parse_config(text, kData);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal document gets defaults") {
  const auto c = parse_config(R"({"shells":[{"altitude_km":550,"inclination_deg":53,"planes":3,"sats_per_plane":3}],
                                  "duration_s":60})");
  REQUIRE(c.shells.size() == 1);
  CHECK(c.shells[0].raan_spread_deg == 360.0);
  CHECK(c.step_s == 10.0);
  CHECK(c.seed == 0);
  CHECK(c.isl_threshold_km == 80.0);
  CHECK(c.faults.devices_per_satellite == 60);
  CHECK(c.faults.handover_mode == HandoverMode::renewal);
}

TEST_CASE("file with relative paths") {
  const auto c = load_config(kData + "/small.json");
  REQUIRE(c.tle_files.size() == 1);
  CHECK(c.tle_files[0] == kData + "/leo_only.tle");
  REQUIRE(c.ground_stations.size() == 2);
  CHECK(c.ground_stations[0].precip_csv == kData + "/berlin_rain.csv");
  CHECK(c.ground_stations[1].precip_mm_h == 5.0);
  CHECK(c.seed == 42);
  CHECK(c.faults.seu_rate_per_device_day == 1e-3);
}

TEST_CASE("round trip through the effective config") {
  const auto c = load_config(kData + "/small.json");
  const auto again = parse_config(config_to_json(c), kData);
  CHECK(config_to_json(again) == config_to_json(c));
}

TEST_CASE("errors name the field") {
  const std::string shell = R"({"altitude_km":550,"inclination_deg":53,"planes":3,"sats_per_plane":3})";
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":60,"sede":1})") == "sede");
  CHECK(field_of(R"({"shells":[{"altitude_km":550,"inclination_deg":53,"planes":3,"sats_per_plane":3,"extra":1}],"duration_s":60})") ==
        "shells[0].extra");
  CHECK(field_of(R"({"shells":[{"altitude_km":5,"inclination_deg":53,"planes":3,"sats_per_plane":3}],"duration_s":60})") ==
        "shells[0].altitude_km");
  CHECK(field_of(R"({"shells":[)" + shell + R"(]})") == "duration_s");
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":"long"})") == "duration_s");
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":60,"faults":{"seu_rate":1}})") == "faults.seu_rate");
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":60,"faults":{"handover_mode":"psychic"}})") ==
        "faults.handover_mode");
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":60,"faults":{"handover_min_s":200}})").rfind("faults", 0) == 0);
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":60,"ground_stations":[{"id":"x","latitude_deg":95,"longitude_deg":0}]})") ==
        "ground_stations[0].latitude_deg");
  CHECK(field_of(R"({"shells":[)" + shell + R"(],"duration_s":60,"seed":-1})") == "seed");
  CHECK(field_of(R"({"duration_s":60})") == "shells");
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(load_config(kData + "/missing.json"), ConfigError);
}

}  // TEST_SUITE
