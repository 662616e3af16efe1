#include "popdyn/initial_profile.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "popdyn/special.hpp"

namespace popdyn {

namespace {

const double kLn4 = std::log(4.0);
const double kLn27Over4 = std::log(27.0 / 4.0);

/// Log residual of the family link equation at a candidate gamma:
///   g ln(27/4) + lnB(1+g, 1+2g) - [alpha ln4 + lnB(1+alpha, 1+alpha)].
/// Strictly decreasing in g; positive at g = 0 for alpha > 0.
double link_residual(double g, double log_lhs) {
  return g * kLn27Over4 + log_beta(1.0 + g, 1.0 + 2.0 * g) - log_lhs;
}

/// Log of the shape kernel at the scaled coordinate s in [-1/2, 1/2].
/// -inf at the endpoints, which exponentiates to the required zero.
double kernel_log(Family family, double expnt, double s) {
  if (family == Family::Asymmetric) {
    return expnt * (std::log(0.5 - s) + 2.0 * std::log(0.5 + s));
  }
  return expnt * std::log(0.25 - s * s);
}

/// Maps a coordinate into [-1/2, 1/2], tolerating round-off just outside.
double scaled_coordinate(double x, double half_width, const char* what) {
  const double tol = 1e-12 * (half_width > 1.0 ? half_width : 1.0);
  if (std::abs(x) > half_width + tol) {
    throw std::domain_error(std::string(what) + " outside the domain: " +
                            std::to_string(x));
  }
  double s = x / (2.0 * half_width);
  if (s > 0.5) s = 0.5;
  if (s < -0.5) s = -0.5;
  return s;
}

double kernel_value(const InitialProfile& profile, double s) {
  const double expnt = profile.shape_exponent();
  if (expnt == 0.0) return 1.0;
  const double lg = kernel_log(profile.family, expnt, s);
  if (lg == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(lg - profile.log_norm);
}

}  // namespace

double solve_gamma(double alpha, double tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("solve_gamma: alpha must be nonnegative");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("solve_gamma: tol must be positive");
  }
  if (alpha == 0.0) return 0.0;

  const double log_lhs = alpha * kLn4 + log_beta(1.0 + alpha, 1.0 + alpha);

  double lo = 0.0;
  double hi = 2.0 * (alpha > 1.0 ? alpha : 1.0);
  double r_hi = link_residual(hi, log_lhs);
  int doublings = 0;
  while (r_hi > 0.0) {
    lo = hi;
    hi *= 2.0;
    r_hi = link_residual(hi, log_lhs);
    if (++doublings > 200) {
      throw ConvergenceError(
          "solve_gamma: bracket expansion failed at alpha=" +
          std::to_string(alpha));
    }
  }
  if (r_hi == 0.0) return hi;

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    mid = 0.5 * (lo + hi);
    const double r = link_residual(mid, log_lhs);
    if (std::abs(r) < tol) return mid;
    if (r > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4e-16 * (hi > 1.0 ? hi : 1.0)) break;
  }
  mid = 0.5 * (lo + hi);
  if (std::abs(link_residual(mid, log_lhs)) < tol) return mid;
  throw ConvergenceError("solve_gamma: residual tolerance " +
                         std::to_string(tol) +
                         " not reachable at alpha=" + std::to_string(alpha));
}

InitialProfile InitialProfile::make(Family family, double alpha,
                                    double gamma_tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("InitialProfile: alpha must be nonnegative");
  }
  InitialProfile p;
  p.family = family;
  switch (family) {
    case Family::Homogeneous:
      if (alpha != 0.0) {
        throw std::invalid_argument(
            "InitialProfile: the homogeneous family takes no shape "
            "parameter");
      }
      p.alpha = 0.0;
      break;
    case Family::Symmetric:
      p.alpha = alpha;
      p.log_norm = log_beta(1.0 + alpha, 1.0 + alpha);
      break;
    case Family::Asymmetric:
      p.alpha = alpha;
      p.gamma = solve_gamma(alpha, gamma_tol);
      p.log_norm = log_beta(1.0 + p.gamma, 1.0 + 2.0 * p.gamma);
      break;
  }
  return p;
}

double eval_dimensional(const InitialProfile& profile, double x, double l,
                        double n0) {
  if (!(l > 0.0)) throw std::domain_error("eval_dimensional: l must be > 0");
  if (!(n0 > 0.0)) throw std::domain_error("eval_dimensional: n0 must be > 0");
  const double s = scaled_coordinate(x, 0.5 * l, "x");
  return n0 / l * kernel_value(profile, s);
}

double nondim_domain_length(const ModelExponents& exps, double q) {
  exps.validate();
  if (!(q > 0.0)) throw std::domain_error("Q must be positive");
  if (exps.mu < exps.nu) {
    throw UnsupportedRegime(
        "nondimensional problem is defined for mu >= nu only");
  }
  return exps.mu > exps.nu ? 1.0 : std::sqrt(q);
}

double eval_nondim(const InitialProfile& profile, double X,
                   const ModelExponents& exps, double q) {
  const double L = nondim_domain_length(exps, q);
  const double s = scaled_coordinate(X, 0.5 * L, "X");
  const double scale = exps.mu > exps.nu
                           ? std::pow(q, 1.0 / (exps.mu - exps.nu))
                           : 1.0 / std::sqrt(q);
  return scale * kernel_value(profile, s);
}

}  // namespace popdyn
