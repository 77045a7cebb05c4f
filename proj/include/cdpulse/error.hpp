#pragma once

#include <stdexcept>
#include <string>

namespace cdpulse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a synthesis formula hits a vanishing denominator
/// (degenerate dispersive shifts, a pole at zero energy, ...).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration; `path()` names the offending field, e.g.
/// "scenario.cavity2.chi[1]".
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace cdpulse
