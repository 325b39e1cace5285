#pragma once

#include <stdexcept>
#include <string>

namespace hcube {

// Precondition violations: bad dimensions, out-of-range parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The parameter planner could not produce a usable plan (e.g. k = 0).
class PlanInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed, truncated or unreadable files.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hcube
