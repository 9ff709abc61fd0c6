#pragma once

#include <stdexcept>
#include <string>

namespace amoeba {

/// Raised for malformed TSP instances and map files.
class InvalidInstance : public std::invalid_argument {
 public:
  explicit InvalidInstance(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when run parameters or variant settings cannot be used as given.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace amoeba
