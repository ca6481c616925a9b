#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace leofault {

// Fixed-column text violation (TLE lines). `line` is 1-based within the
// record (or within the file when reading whole files), `column` is 1-based.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class ChecksumError : public FormatError {
 public:
  ChecksumError(const std::string& what, int line, int expected, int actual)
      : FormatError(what, line, 69), expected_(expected), actual_(actual) {}

  int expected() const noexcept { return expected_; }
  int actual() const noexcept { return actual_; }

 private:
  int expected_;
  int actual_;
};

// Malformed trace line. `byte_offset` is 0-based within the line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Invalid simulation configuration; `field` is a JSON path like
// "shells[0].altitude_km".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Geometry query outside its domain (e.g. a station that cannot see the
// satellite).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace leofault
