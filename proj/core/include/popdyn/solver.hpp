#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "popdyn/scaling.hpp"

namespace popdyn {

/// Uniform space-time mesh. h = L/m exactly; nodes X_i = -L/2 + i h,
/// i = 0..m; time levels T_j = j k up to the horizon t_max.
struct Grid {
  int m = 200;
  double h = 0.0;
  double k = 0.0;
  double t_max = 50.0;

  /// k <= 0 selects the default time step h^2/4.
  static Grid uniform(double L, int m = 200, double k = 0.0,
                      double t_max = 50.0);

  double length() const { return h * m; }
  std::int64_t step_count() const;
  void validate() const;
};

/// Deterministic replacement for reading a fate off an N(T) plot.
/// Extinction once N drops below floor_frac * N(0); growth once N
/// exceeds ceil_frac * N(0) while still rising over the trailing
/// window, or immediately when a node passes blowup_cap or turns
/// non-finite. A run that reaches the horizon unclassified is
/// Inconclusive.
struct FatePolicy {
  double floor_frac = 2e-2;
  double ceil_frac = 1e2;
  int window = 50;           // trailing steps that must be increasing
  double blowup_cap = 1e12;  // node-value guard
  double abort_tol = 1e-6;   // negative values below -abort_tol abort
  std::int64_t record_stride = 0;  // trajectory decimation; 0 = auto

  void validate() const;
};

/// Solver resolution bundle: grid count, time step, horizon and
/// classification thresholds. The spatial length comes from the problem,
/// so this is the portable part of a run configuration. An absolute k
/// takes precedence; otherwise k = k_rel * h^2, which stays meaningful
/// when the domain length (and hence h) varies across scan probes.
struct SolverConfig {
  int m = 200;
  double k = 0.0;      // absolute time step; 0 defers to k_rel
  double k_rel = 0.25; // time step as a multiple of h^2
  double t_max = 50.0;
  FatePolicy policy;

  Grid grid_for(double L) const {
    const double h = L / m;
    return Grid::uniform(L, m, k > 0.0 ? k : k_rel * h * h, t_max);
  }
};

/// Density samples at the grid nodes. The boundary nodes are pinned to
/// zero (hostile boundary) and every entry is nonnegative.
struct StateVector {
  std::vector<double> rho;
  double time = 0.0;
};

enum class Fate { Extinction, Growth, Inconclusive };
enum class StopReason {
  PopulationFloor,
  PopulationCeiling,
  BlowupGuard,
  HorizonReached,
};

const char* fate_name(Fate fate);
const char* stop_reason_name(StopReason reason);

struct FateReport {
  Fate outcome = Fate::Inconclusive;
  StopReason stop_reason = StopReason::HorizonReached;
  double stop_time = 0.0;
  double initial_population = 0.0;
  double final_population = 0.0;
  std::int64_t steps = 0;
  /// (T, N(T)) samples, strictly increasing in T. Decimated by
  /// record_stride; the first and final steps are always present.
  std::vector<std::pair<double, double>> trajectory;
};

/// Interior tridiagonal system of one linearized implicit step for the
/// increments W_1..W_{m-1}: lower[i] W_{i-1} + diag[i] W_i +
/// upper[i] W_{i+1} = rhs[i] (0-based storage, lower[0]/upper[n-1]
/// unused).
struct TriDiagSystem {
  std::vector<double> lower, diag, upper, rhs;
};

/// Assembles the step system for the current state:
///   diag  = -2 (rho_i^{nu-1} + h^2/k)
///   off   =     rho_{i +- 1}^{nu-1}
///   rhs   = -(2/nu) (rho_{i+1}^nu - 2 rho_i^nu + rho_{i-1}^nu)
///           - 2 h^2 rho_i^mu
TriDiagSystem assemble_step_system(const StateVector& state, const Grid& grid,
                                   const ModelExponents& exps);

/// Thomas elimination for a tridiagonal system; single forward sweep and
/// back substitution. Throws SingularSystem on a zero pivot.
std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 const std::vector<double>& rhs);

/// One step of the linearized implicit scheme: solves the assembled
/// system with the Thomas algorithm and adds the increments, keeping the
/// boundary nodes at zero and clamping negative round-off to zero.
StateVector step(const StateVector& state, const Grid& grid,
                 const ModelExponents& exps, double abort_tol = 1e-6);

/// Trapezoidal total population h (rho_0/2 + sum rho_i + rho_m/2).
double total_population(const StateVector& state, const Grid& grid);

/// Samples the problem's initial distribution at the grid nodes, with
/// the boundary nodes pinned to zero.
StateVector sample_initial_state(const NondimProblem& problem,
                                 const Grid& grid);

/// Integrates the problem and classifies the run. Requires mu >= nu.
FateReport classify_fate(const NondimProblem& problem, const Grid& grid,
                         const FatePolicy& policy = {});

/// classify_fate that additionally captures density snapshots at the
/// first step reaching each requested time (sorted ascending).
FateReport classify_fate_with_snapshots(
    const NondimProblem& problem, const Grid& grid, const FatePolicy& policy,
    const std::vector<double>& snapshot_times,
    std::vector<std::pair<double, StateVector>>* snapshots);

/// Steady marginal density C cos(sqrt(mu) X)^{1/mu} of the equal-
/// exponent problem on [-pi/(2 sqrt(mu)), pi/(2 sqrt(mu))]; used as a
/// residual check on the solver. Throws std::domain_error beyond the
/// cosine's zero.
double steady_profile(double mu, double C, double X);

namespace detail {

/// Power evaluator specialised at construction; small integer exponents
/// avoid std::pow in the hot loop. Inputs are nonnegative densities.
/// Exponent 0 evaluates to 1 everywhere (the nu = 1 convention for
/// rho^{nu-1} at a zero node); negative exponents (nu < 1) floor the
/// base at 1e-30 to keep the result finite.
class PowFn {
 public:
  explicit PowFn(double exponent);
  double operator()(double x) const {
    switch (kind_) {
      case Kind::Zero:
        return 1.0;
      case Kind::One:
        return x;
      case Kind::Two:
        return x * x;
      case Kind::SmallInt: {
        double r = 1.0, b = x;
        for (int n = n_;;) {
          if (n & 1) r *= b;
          n >>= 1;
          if (!n) break;
          b *= b;
        }
        return r;
      }
      case Kind::NegFloored:
        return std::pow(x < kFloor ? kFloor : x, e_);
      case Kind::General:
      default:
        return std::pow(x, e_);
    }
  }

 private:
  enum class Kind { Zero, One, Two, SmallInt, NegFloored, General };
  static constexpr double kFloor = 1e-30;
  Kind kind_;
  double e_;
  int n_ = 0;
};

}  // namespace detail

/// Reusable stepping engine: owns the workspace so that a long run makes
/// no allocations after construction.
class Stepper {
 public:
  Stepper(const Grid& grid, const ModelExponents& exps,
          double abort_tol = 1e-6);

  struct StepStats {
    double total_mass = 0.0;
    double max_value = 0.0;
    bool finite = true;
  };

  /// Advances the state by one time level in place.
  StepStats advance(StateVector& state);

  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  ModelExponents exps_;
  double abort_tol_;
  double h2_, h2k_, two_over_nu_;
  detail::PowFn pow_nu_minus_1_, pow_mu_;
  std::vector<double> dcoef_, flux_, cp_, dp_, w_;
};

}  // namespace popdyn
