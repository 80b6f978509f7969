#pragma once

// Exception types shared across the library. Precondition violations on
// plain arguments throw std::invalid_argument / std::out_of_range directly;
// the types here exist where callers need to react to the failure kind.

#include <stdexcept>
#include <string>
#include <vector>

namespace rehypo {

// Linear system has an effectively zero pivot or is otherwise not solvable.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative method hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The hoarding equilibrium would require a bank to post more collateral than
// it holds. Carries the offending bank indices; callers must not clamp.
class InfeasibleHoardingError : public std::runtime_error {
 public:
  InfeasibleHoardingError(const std::string& what, std::vector<int> banks)
      : std::runtime_error(what), banks_(std::move(banks)) {}
  const std::vector<int>& banks() const noexcept { return banks_; }

 private:
  std::vector<int> banks_;
};

// Malformed or inconsistent run configuration (bad key, bad value, missing file).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable or syntactically invalid input file (edge lists, configs).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rehypo
