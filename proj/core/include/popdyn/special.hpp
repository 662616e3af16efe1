#pragma once

namespace popdyn {

/// Thread-safe log-Gamma for positive arguments.
double log_gamma(double x);

/// log B(p,q) = lnGamma(p) + lnGamma(q) - lnGamma(p+q), p,q > 0.
/// Throws std::domain_error on non-positive arguments.
double log_beta(double p, double q);

/// Beta function B(p,q), computed in log space so that arguments of a
/// thousand or more neither overflow the Gamma factors nor lose the
/// leading digits (B(501,501) ~ 3.7e-303 is still representable).
double beta_function(double p, double q);

}  // namespace popdyn
