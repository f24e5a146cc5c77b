#pragma once

#include <stdexcept>
#include <string>

namespace agnoboost {

// Error categories mapped to CLI exit codes: config -> 2, data -> 3, budget -> 4.
// Contract violations inside the library throw std::invalid_argument and are
// treated as config errors at the CLI boundary.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace agnoboost
