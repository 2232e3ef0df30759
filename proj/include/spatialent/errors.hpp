#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spatialent {

/// @brief A state or profile is expressed in the wrong transverse basis.
class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// @brief Operation not applicable to the given state (e.g. wrong beam count).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// @brief Invalid experiment configuration. `where()` names the offending field or line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace spatialent
