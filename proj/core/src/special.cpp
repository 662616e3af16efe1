#include "popdyn/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace popdyn {

double log_gamma(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw std::domain_error("log_beta: arguments must be positive, got p=" +
                            std::to_string(p) + " q=" + std::to_string(q));
  }
  return log_gamma(p) + log_gamma(q) - log_gamma(p + q);
}

double beta_function(double p, double q) { return std::exp(log_beta(p, q)); }

}  // namespace popdyn
