#pragma once

#include "popdyn/model.hpp"

namespace popdyn {

/// Default tolerance on the log-residual of the gamma(alpha) link
/// equation. Chosen above the lgamma noise floor at alpha = 500.
inline constexpr double kGammaTolerance = 1e-10;

/// Solves 4^alpha B(1+alpha,1+alpha) = (27/4)^gamma B(1+gamma,1+2gamma)
/// for gamma >= 0. Both sides decrease strictly from 1, so the solution
/// is unique; it is found by expanding bisection on the log residual.
/// gamma(0) = 0 exactly. Throws ConvergenceError if the bracket search
/// or the bisection cannot reach `tol`.
double solve_gamma(double alpha, double tol = kGammaTolerance);

/// A one-parameter initial distribution: family tag, concentration
/// parameter alpha, and (for the asymmetric family) the cached solution
/// of the link equation that matches the two families' peak heights.
struct InitialProfile {
  Family family = Family::Homogeneous;
  double alpha = 0.0;
  double gamma = 0.0;     // only meaningful for Family::Asymmetric
  double log_norm = 0.0;  // log Beta normalization of the active kernel

  /// Exponent actually applied to the shape kernel.
  double shape_exponent() const {
    return family == Family::Asymmetric ? gamma : alpha;
  }

  static InitialProfile make(Family family, double alpha = 0.0,
                             double gamma_tol = kGammaTolerance);
};

/// Dimensional density u0(x) on a habitat [-l/2, l/2] holding a total
/// population n0. Zero at the habitat edges whenever alpha > 0.
/// Throws std::domain_error for x outside the habitat.
double eval_dimensional(const InitialProfile& profile, double x, double l,
                        double n0);

/// Domain length of the nondimensional problem: 1 for mu > nu,
/// sqrt(Q) for mu = nu.
double nondim_domain_length(const ModelExponents& exps, double q);

/// Nondimensional initial density rho0(X). For mu > nu the domain is
/// [-1/2, 1/2] and the mass is Q^{1/(mu-nu)}; for mu = nu the domain is
/// [-sqrt(Q)/2, sqrt(Q)/2] and the mass is 1. Throws UnsupportedRegime
/// for mu < nu and std::domain_error for X outside the domain.
double eval_nondim(const InitialProfile& profile, double X,
                   const ModelExponents& exps, double q);

}  // namespace popdyn
