#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frqme {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent run configuration. Carries the offending line
// (0 when not tied to a line) and the field name.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::size_t line = 0, std::string field = {})
      : Error(format(message, line, field)), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(const std::string& message, std::size_t line, const std::string& field) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "'" + field + "': ";
    return out + message;
  }

  std::size_t line_;
  std::string field_;
};

// Non-finite values or a blown-up propagation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class InsufficientHorizonError : public Error {
 public:
  using Error::Error;
};

class NoPlateauError : public Error {
 public:
  using Error::Error;
};

class NoSpectralGapError : public Error {
 public:
  using Error::Error;
};

}  // namespace frqme
