#pragma once
#include <stdexcept>
#include <string>

namespace qotto {

// exit code 2
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

// exit code 3
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};

// exit code 4
struct AccuracyError : std::runtime_error {
  explicit AccuracyError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace qotto
