#pragma once

#include <string>

#include "popdyn/errors.hpp"

namespace popdyn {

/// Growth exponent mu and diffusion exponent nu of the density model
///   u_t = D (u^{nu-1} u_x)_x + a u^mu.
/// Both exponents are positive. Threshold searches additionally require
/// mu >= nu (conditional persistence); for mu < nu the population
/// survives regardless of habitat size and no threshold is defined.
struct ModelExponents {
  double mu = 1.0;
  double nu = 1.0;

  bool equal_exponents() const { return mu == nu; }
  bool conditional_persistence() const { return mu >= nu; }

  void validate() const;
};

/// Initial-distribution family selector. Homogeneous behaves exactly as
/// either parametric family with shape parameter zero.
enum class Family {
  Homogeneous,
  Symmetric,   // (1/4 - s^2)^alpha kernel, peak at the habitat midpoint
  Asymmetric,  // ((1/2 - s)(1/2 + s)^2)^gamma kernel, peak at s = 1/6
};

const char* family_name(Family family);

/// Parses the CLI spelling of a family: "hom", "f1"/"sym", "f2"/"asym".
Family parse_family(const std::string& token);

}  // namespace popdyn
