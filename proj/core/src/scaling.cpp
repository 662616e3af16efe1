#include "popdyn/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace popdyn {

void PhysicalParams::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("PhysicalParams: a must be > 0");
  if (!(D > 0.0)) throw std::invalid_argument("PhysicalParams: D must be > 0");
  if (!(l > 0.0)) throw std::invalid_argument("PhysicalParams: l must be > 0");
  if (!(n0 > 0.0))
    throw std::invalid_argument("PhysicalParams: n0 must be > 0");
}

double compute_q(const ModelExponents& exps, const PhysicalParams& phys) {
  exps.validate();
  phys.validate();
  return phys.a / phys.D * std::pow(phys.l, -exps.mu + exps.nu + 2.0) *
         std::pow(phys.n0, exps.mu - exps.nu);
}

NondimProblem make_nondim_problem(const ModelExponents& exps,
                                  const InitialProfile& profile, double q) {
  NondimProblem p;
  p.exps = exps;
  p.q = q;
  p.L = nondim_domain_length(exps, q);  // validates exps, q and the regime
  p.profile = profile;
  return p;
}

NondimProblem nondimensionalize(const ModelExponents& exps,
                                const PhysicalParams& phys,
                                const InitialProfile& profile) {
  return make_nondim_problem(exps, profile, compute_q(exps, phys));
}

CriticalSize critical_habitat(const ModelExponents& exps, double qc, double a,
                              double D, double n0) {
  exps.validate();
  if (!(qc > 0.0)) throw std::invalid_argument("Qc must be positive");
  if (!(a > 0.0) || !(D > 0.0))
    throw std::invalid_argument("a and D must be positive");
  if (exps.mu < exps.nu) {
    throw UnsupportedRegime(
        "critical habitat size is defined for mu >= nu only (for mu < nu "
        "the population survives regardless of habitat size)");
  }
  if (exps.equal_exponents()) {
    // Q = (a/D) l^2, so the critical length is sqrt((D/a) Qc); n0 drops out.
    return {std::sqrt(D / a * qc), SizeDirection::MinimumSize};
  }
  if (exps.mu == exps.nu + 2.0) {
    throw DegenerateCase(
        "mu = nu + 2: the survival condition does not involve the habitat "
        "size; use critical_population for the n0 condition");
  }
  if (!(n0 > 0.0)) throw std::invalid_argument("n0 must be positive");
  const double size = std::pow(D / a * qc, 1.0 / (-exps.mu + exps.nu + 2.0)) *
                      std::pow(n0, (exps.mu - exps.nu) /
                                       (exps.mu - exps.nu - 2.0));
  const SizeDirection dir = exps.mu < exps.nu + 2.0
                                ? SizeDirection::MinimumSize
                                : SizeDirection::MaximumSize;
  return {size, dir};
}

double critical_population(const ModelExponents& exps, double qc, double a,
                           double D, double l) {
  exps.validate();
  if (!(qc > 0.0)) throw std::invalid_argument("Qc must be positive");
  if (!(a > 0.0) || !(D > 0.0))
    throw std::invalid_argument("a and D must be positive");
  if (!(l > 0.0)) throw std::invalid_argument("l must be positive");
  if (!(exps.mu > exps.nu)) {
    throw UnsupportedRegime(
        "critical population is defined for mu > nu only (for mu = nu the "
        "survival condition does not constrain n0)");
  }
  return std::pow(D / a * qc, 1.0 / (exps.mu - exps.nu)) *
         std::pow(l, (exps.mu - exps.nu - 2.0) / (exps.mu - exps.nu));
}

}  // namespace popdyn
