#pragma once

#include "popdyn/initial_profile.hpp"
#include "popdyn/model.hpp"

namespace popdyn {

/// Dimensional model parameters: growth coefficient a, diffusion
/// coefficient D, habitat length l, total initial population n0.
struct PhysicalParams {
  double a = 1.0;
  double D = 1.0;
  double l = 1.0;
  double n0 = 1.0;

  void validate() const;
};

/// Survival parameter Q = (a/D) l^{nu-mu+2} n0^{mu-nu}. The fate of the
/// population depends on the dimensional parameters only through Q.
double compute_q(const ModelExponents& exps, const PhysicalParams& phys);

/// Fully nondimensionalized initial-boundary-value problem.
/// For mu > nu: domain [-1/2, 1/2] (L = 1), initial mass Q^{1/(mu-nu)}.
/// For mu = nu: domain [-L/2, L/2] with L = sqrt(Q), initial mass 1.
struct NondimProblem {
  ModelExponents exps;
  double L = 1.0;
  double q = 1.0;
  InitialProfile profile;
};

/// Builds the nondimensional problem directly from Q.
NondimProblem make_nondim_problem(const ModelExponents& exps,
                                  const InitialProfile& profile, double q);

/// Reduces a dimensional configuration to the nondimensional problem.
/// Requires mu >= nu.
NondimProblem nondimensionalize(const ModelExponents& exps,
                                const PhysicalParams& phys,
                                const InitialProfile& profile);

enum class SizeDirection {
  MinimumSize,  // survival requires l >= l_c  (mu < nu + 2)
  MaximumSize,  // survival requires l <= l_c  (mu > nu + 2)
};

struct CriticalSize {
  double size;
  SizeDirection direction;
};

/// Critical habitat size for a given critical Q and total population:
///   l_c = ((D/a) Qc)^{1/(nu-mu+2)} n0^{(mu-nu)/(mu-nu-2)}   (mu > nu)
///   l_c = sqrt((D/a) Qc)                                    (mu = nu)
/// Throws DegenerateCase at mu = nu + 2 (survival no longer constrains
/// the habitat size; see critical_population) and UnsupportedRegime for
/// mu < nu.
CriticalSize critical_habitat(const ModelExponents& exps, double qc,
                              double a, double D, double n0);

/// Critical total population at fixed habitat size, mu > nu:
///   n0c = ((D/a) Qc)^{1/(mu-nu)} l^{(mu-nu-2)/(mu-nu)}.
/// At mu = nu + 2 this is sqrt((D/a) Qc), independent of l. Throws
/// UnsupportedRegime for mu <= nu (survival does not constrain n0 when
/// mu = nu).
double critical_population(const ModelExponents& exps, double qc, double a,
                           double D, double l);

}  // namespace popdyn
