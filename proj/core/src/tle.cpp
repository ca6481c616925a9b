#include "leofault/tle.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "leofault/error.hpp"

namespace leofault::tle {

namespace {

constexpr int kLine1 = 1;
constexpr int kLine2 = 2;

// 1-based inclusive column range.
std::string_view columns(std::string_view line, int first, int last) {
  return line.substr(static_cast<std::size_t>(first - 1), static_cast<std::size_t>(last - first + 1));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(int line, int column, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                        ": " + what,
                    line, column);
}

int parse_int(std::string_view line, int line_no, int first, int last, const char* what) {
  const std::string_view f = trim(columns(line, first, last));
  int value = 0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    fail(line_no, first, std::string("expected integer ") + what);
  }
  return value;
}

double parse_double(std::string_view line, int line_no, int first, int last, const char* what) {
  const std::string_view f = trim(columns(line, first, last));
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    fail(line_no, first, std::string("expected number ") + what);
  }
  return value;
}

void expect_blank(std::string_view line, int line_no, std::initializer_list<int> cols) {
  for (int c : cols) {
    if (line[static_cast<std::size_t>(c - 1)] != ' ') fail(line_no, c, "expected blank separator");
  }
}

void check_line(std::string_view line, int line_no) {
  if (line.size() != kLineLength) {
    fail(line_no, static_cast<int>(std::min(line.size(), kLineLength)) + 1,
         "line must be exactly 69 characters, got " + std::to_string(line.size()));
  }
  if (line[0] != static_cast<char>('0' + line_no)) {
    fail(line_no, 1, "expected line number " + std::to_string(line_no));
  }
  const char last = line[kLineLength - 1];
  if (last < '0' || last > '9') fail(line_no, 69, "checksum column is not a digit");
  const int expected = checksum(line.substr(0, kLineLength - 1));
  const int actual = last - '0';
  if (expected != actual) {
    throw ChecksumError("line " + std::to_string(line_no) + ": checksum mismatch (computed " +
                            std::to_string(expected) + ", found " + std::to_string(actual) + ")",
                        line_no, expected, actual);
  }
}

void check_angle(double v, double upper, int line_no, int column, const char* what) {
  if (!(v >= 0.0 && v < upper)) fail(line_no, column, std::string(what) + " out of range");
}

std::string format(const char* fmt, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string format_int(const char* fmt, long long v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void require_width(const std::string& field, std::size_t width, const char* what) {
  if (field.size() != width) {
    throw std::invalid_argument(std::string(what) + " must be " + std::to_string(width) +
                                " characters");
  }
}

}  // namespace

int checksum(std::string_view line) {
  if (line.size() != kLineLength - 1) {
    throw FormatError("checksum input must be 68 characters, got " + std::to_string(line.size()),
                      0, static_cast<int>(line.size()) + 1);
  }
  int sum = 0;
  for (char c : line) {
    if (c >= '0' && c <= '9') {
      sum += c - '0';
    } else if (c == '-') {
      sum += 1;
    }
  }
  return sum % 10;
}

TleRecord parse_tle(std::string_view line1, std::string_view line2,
                    std::optional<std::string> name) {
  check_line(line1, kLine1);
  check_line(line2, kLine2);
  expect_blank(line1, kLine1, {2, 9, 18, 33, 44, 53, 62, 64});
  expect_blank(line2, kLine2, {2, 8, 17, 26, 34, 43, 52});

  TleRecord rec;
  rec.name = std::move(name);
  rec.catalog_number = parse_int(line1, kLine1, 3, 7, "catalog number");
  if (parse_int(line2, kLine2, 3, 7, "catalog number") != rec.catalog_number) {
    fail(kLine2, 3, "catalog number differs from line 1");
  }
  rec.classification = line1[7];
  rec.international_designator = std::string(columns(line1, 10, 17));

  const int yy = parse_int(line1, kLine1, 19, 20, "epoch year");
  rec.epoch_year = yy >= 57 ? 1900 + yy : 2000 + yy;
  rec.epoch_day = parse_double(line1, kLine1, 21, 32, "epoch day");
  if (!(rec.epoch_day >= 1.0 && rec.epoch_day < 367.0)) fail(kLine1, 21, "epoch day out of range");

  rec.mean_motion_dot = std::string(columns(line1, 34, 43));
  rec.mean_motion_ddot = std::string(columns(line1, 45, 52));
  rec.bstar = std::string(columns(line1, 54, 61));
  rec.ephemeris_type = parse_int(line1, kLine1, 63, 63, "ephemeris type");
  rec.element_set_number = parse_int(line1, kLine1, 65, 68, "element set number");

  rec.inclination_deg = parse_double(line2, kLine2, 9, 16, "inclination");
  if (!(rec.inclination_deg >= 0.0 && rec.inclination_deg <= 180.0)) {
    fail(kLine2, 9, "inclination out of range");
  }
  rec.raan_deg = parse_double(line2, kLine2, 18, 25, "RAAN");
  check_angle(rec.raan_deg, 360.0, kLine2, 18, "RAAN");

  const std::string_view ecc = columns(line2, 27, 33);
  for (std::size_t i = 0; i < ecc.size(); ++i) {
    if (ecc[i] < '0' || ecc[i] > '9') fail(kLine2, 27 + static_cast<int>(i), "eccentricity digit expected");
  }
  rec.eccentricity = parse_int(line2, kLine2, 27, 33, "eccentricity") / 1e7;

  rec.arg_perigee_deg = parse_double(line2, kLine2, 35, 42, "argument of perigee");
  check_angle(rec.arg_perigee_deg, 360.0, kLine2, 35, "argument of perigee");
  rec.mean_anomaly_deg = parse_double(line2, kLine2, 44, 51, "mean anomaly");
  check_angle(rec.mean_anomaly_deg, 360.0, kLine2, 44, "mean anomaly");
  rec.mean_motion_rev_per_day = parse_double(line2, kLine2, 53, 63, "mean motion");
  if (!(rec.mean_motion_rev_per_day > 0.0)) fail(kLine2, 53, "mean motion must be positive");
  rec.revolution_number = parse_int(line2, kLine2, 64, 68, "revolution number");
  return rec;
}

std::pair<std::string, std::string> serialize(const TleRecord& rec) {
  require_width(rec.international_designator, 8, "international designator");
  require_width(rec.mean_motion_dot, 10, "mean motion derivative");
  require_width(rec.mean_motion_ddot, 8, "mean motion second derivative");
  require_width(rec.bstar, 8, "bstar");
  if (rec.catalog_number < 0 || rec.catalog_number > 99999) {
    throw std::invalid_argument("catalog number must fit five digits");
  }

  std::string l1 = "1 ";
  l1 += format_int("%05lld", rec.catalog_number);
  l1 += rec.classification;
  l1 += ' ';
  l1 += rec.international_designator;
  l1 += ' ';
  l1 += format_int("%02lld", rec.epoch_year % 100);
  l1 += format("%012.8f", rec.epoch_day);
  l1 += ' ';
  l1 += rec.mean_motion_dot;
  l1 += ' ';
  l1 += rec.mean_motion_ddot;
  l1 += ' ';
  l1 += rec.bstar;
  l1 += ' ';
  l1 += format_int("%1lld", rec.ephemeris_type);
  l1 += ' ';
  l1 += format_int("%4lld", rec.element_set_number);
  l1 += static_cast<char>('0' + checksum(l1));

  std::string l2 = "2 ";
  l2 += format_int("%05lld", rec.catalog_number);
  l2 += ' ';
  l2 += format("%8.4f", rec.inclination_deg);
  l2 += ' ';
  l2 += format("%8.4f", rec.raan_deg);
  l2 += ' ';
  l2 += format_int("%07lld", std::llround(rec.eccentricity * 1e7));
  l2 += ' ';
  l2 += format("%8.4f", rec.arg_perigee_deg);
  l2 += ' ';
  l2 += format("%8.4f", rec.mean_anomaly_deg);
  l2 += ' ';
  l2 += format("%11.8f", rec.mean_motion_rev_per_day);
  l2 += format_int("%5lld", rec.revolution_number);
  l2 += static_cast<char>('0' + checksum(l2));

  if (l1.size() != kLineLength || l2.size() != kLineLength) {
    throw std::invalid_argument("record fields overflow the fixed-column layout");
  }
  return {l1, l2};
}

CircularElements tle_to_elements(const TleRecord& rec) {
  if (!(rec.mean_motion_rev_per_day > 0.0)) {
    throw std::invalid_argument("mean motion must be positive");
  }
  const double period_s = constants::kSecondsPerDay / rec.mean_motion_rev_per_day;
  const double w = period_s / (2.0 * constants::kPi);
  CircularElements e;
  e.semi_major_axis_km = std::cbrt(constants::kEarthMuKm3PerS2 * w * w);
  e.inclination_deg = rec.inclination_deg;
  e.raan_deg = normalize_deg(rec.raan_deg);
  e.phase_deg = normalize_deg(rec.arg_perigee_deg + rec.mean_anomaly_deg);
  // The TLE epoch becomes the simulation time origin (snapshot semantics).
  e.epoch_s = 0.0;
  return e;
}

std::vector<ParsedEntry> read_tle_stream(std::istream& in) {
  std::vector<ParsedEntry> out;
  std::optional<std::string> pending_name;
  std::string pending_line1;
  int pending_line1_no = 0;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const bool is_line1 = line.rfind("1 ", 0) == 0;
    const bool is_line2 = line.rfind("2 ", 0) == 0;

    if (is_line1) {
      if (!pending_line1.empty()) {
        out.push_back({pending_line1_no, std::nullopt, "line 1 without matching line 2"});
      }
      pending_line1 = line;
      pending_line1_no = line_no;
    } else if (is_line2) {
      if (pending_line1.empty()) {
        out.push_back({line_no, std::nullopt, "line 2 without preceding line 1"});
        pending_name.reset();
        continue;
      }
      ParsedEntry entry{pending_line1_no, std::nullopt, {}};
      try {
        entry.record = parse_tle(pending_line1, line, pending_name);
      } catch (const FormatError& e) {
        const int src = e.line() == kLine2 ? line_no : pending_line1_no;
        entry.error = "source line " + std::to_string(src) + ": " + e.what();
      }
      out.push_back(std::move(entry));
      pending_line1.clear();
      pending_name.reset();
    } else {
      if (!pending_line1.empty()) {
        out.push_back({pending_line1_no, std::nullopt, "line 1 without matching line 2"});
        pending_line1.clear();
      }
      std::string name(trim(line));
      if (name.rfind("0 ", 0) == 0) name = std::string(trim(std::string_view(name).substr(2)));
      pending_name = std::move(name);
    }
  }
  if (!pending_line1.empty()) {
    out.push_back({pending_line1_no, std::nullopt, "line 1 without matching line 2"});
  }
  return out;
}

std::vector<TleRecord> read_tle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open TLE file " + path);
  std::vector<TleRecord> out;
  for (auto& entry : read_tle_stream(in)) {
    if (!entry.record) throw std::runtime_error(path + ": " + entry.error);
    out.push_back(std::move(*entry.record));
  }
  return out;
}

}  // namespace leofault::tle
