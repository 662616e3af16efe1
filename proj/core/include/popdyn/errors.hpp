#pragma once

#include <stdexcept>
#include <string>

namespace popdyn {

/// Iterative method failed to reach its tolerance (root bracketing, etc.).
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation requested outside the exponent regime it is defined for
/// (e.g. a threshold search with mu < nu).
struct UnsupportedRegime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// mu = nu + 2: the habitat size drops out of the survival condition and
/// only the total population is constrained.
struct DegenerateCase : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Time stepping produced a strongly negative density. Small negative
/// values are clamped; anything below the abort tolerance ends the run.
struct StabilityError : std::runtime_error {
  StabilityError(const std::string& msg, double time, int node, double value)
      : std::runtime_error(msg), time(time), node(node), value(value) {}
  double time;
  int node;
  double value;
};

/// Zero pivot in the tridiagonal elimination.
struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace popdyn
