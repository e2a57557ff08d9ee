#pragma once

#include <stdexcept>
#include <string>

namespace mher {

// Invalid configuration: bad dimensions, malformed episodes, bad tables.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Runtime failure while training: non-finite values, empty buffers.
class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string& what) : std::runtime_error(what) {}
};

// Bad command line or inconsistent inputs at the harness boundary.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures while writing run outputs.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mher
