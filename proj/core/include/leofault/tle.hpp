#pragma once

// Two-line element sets, reduced to circular orbits.
//
// Column layout (1-based, inclusive):
//   line 1: 1 line no | 3-7 catalog | 8 class | 10-17 intl designator |
//           19-32 epoch YYDDD.DDDDDDDD | 34-43 ndot/2 | 45-52 nddot/6 |
//           54-61 B* | 63 ephemeris type | 65-68 element set | 69 checksum
//   line 2: 1 line no | 3-7 catalog | 9-16 inclination | 18-25 RAAN |
//           27-33 eccentricity (implied leading point) | 35-42 arg perigee |
//           44-51 mean anomaly | 53-63 mean motion | 64-68 rev number |
//           69 checksum

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leofault/orbital.hpp"

namespace leofault::tle {

inline constexpr std::size_t kLineLength = 69;
// Above this the circular approximation is flagged in reports.
inline constexpr double kEccentricityWarning = 0.02;

struct TleRecord {
  std::optional<std::string> name;
  int catalog_number = 0;
  char classification = 'U';
  std::string international_designator = "        ";
  int epoch_year = 2000;
  double epoch_day = 1.0;
  // Drag-related fields are carried verbatim; the circular model ignores them.
  std::string mean_motion_dot = " .00000000";
  std::string mean_motion_ddot = " 00000-0";
  std::string bstar = " 00000-0";
  int ephemeris_type = 0;
  int element_set_number = 0;

  double inclination_deg = 0.0;
  double raan_deg = 0.0;
  double eccentricity = 0.0;
  double arg_perigee_deg = 0.0;
  double mean_anomaly_deg = 0.0;
  double mean_motion_rev_per_day = 15.0;
  int revolution_number = 0;

  bool operator==(const TleRecord&) const = default;
};

// Sum of digits plus one per '-', modulo 10, over the first 68 columns.
// Throws FormatError when `line` is not 68 characters long.
int checksum(std::string_view line);

// Throws FormatError (line/column) or ChecksumError.
TleRecord parse_tle(std::string_view line1, std::string_view line2,
                    std::optional<std::string> name = std::nullopt);

// Canonical fixed-column rendering including checksums.
std::pair<std::string, std::string> serialize(const TleRecord& rec);

// Circular approximation; eccentricity is dropped. Throws
// std::invalid_argument for non-positive mean motion.
CircularElements tle_to_elements(const TleRecord& rec);

struct ParsedEntry {
  // Source line of the record's first element line (1-based).
  int source_line = 0;
  std::optional<TleRecord> record;
  std::string error;
};

// Reads 2-line or 3-line (named) text. A line is treated as a name when it
// does not begin with "1 " or "2 "; a leading "0 " is stripped from names.
// Malformed records are reported in-place instead of aborting the read.
std::vector<ParsedEntry> read_tle_stream(std::istream& in);

// Throws on the first malformed record.
std::vector<TleRecord> read_tle_file(const std::string& path);

}  // namespace leofault::tle
