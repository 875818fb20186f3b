// Configuration error classes. Each carries the full list of problems found.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ricegroup {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::vector<std::string> issues = {})
      : std::runtime_error(what), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// File missing or unreadable.
struct ConfigReadError : ConfigError {
  using ConfigError::ConfigError;
};

/// Malformed JSON, missing fields, wrong types.
struct ConfigSchemaError : ConfigError {
  using ConfigError::ConfigError;
};

/// Well-formed but violates a model invariant.
struct ConfigInvariantError : ConfigError {
  using ConfigError::ConfigError;
};

}  // namespace ricegroup
