#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsens {

inline constexpr const char* kVersion = "0.1.0";

// Execution policy for the compute kernels. Every parallel kernel has a
// serial twin with identical summation order; tests compare the two.
enum class Exec { serial, parallel };

// Invalid user input: bad config fields, inconsistent dimensions, bad files.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model evaluation / ODE integration failure.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

class IntegrationError : public ModelError {
 public:
  IntegrationError(const std::string& msg, double last_time)
      : ModelError(msg), last_time_(last_time) {}
  double last_time() const { return last_time_; }

 private:
  double last_time_;
};

// Numerical degeneracy: zero variance, zero trace, indefinite covariance.
class DegenerateError : public std::runtime_error {
 public:
  explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tsens
