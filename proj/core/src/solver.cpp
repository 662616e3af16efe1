#include "popdyn/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace popdyn {

Grid Grid::uniform(double L, int m, double k, double t_max) {
  if (!(L > 0.0)) throw std::invalid_argument("Grid: L must be positive");
  Grid g;
  g.m = m;
  g.h = L / m;
  g.k = k > 0.0 ? k : g.h * g.h / 4.0;
  g.t_max = t_max;
  g.validate();
  return g;
}

void Grid::validate() const {
  if (m < 4) throw std::invalid_argument("Grid: need at least 4 intervals");
  if (!(h > 0.0)) throw std::invalid_argument("Grid: h must be positive");
  if (!(k > 0.0)) throw std::invalid_argument("Grid: k must be positive");
  if (!(t_max >= k))
    throw std::invalid_argument("Grid: horizon shorter than one step");
}

std::int64_t Grid::step_count() const {
  return static_cast<std::int64_t>(std::ceil(t_max / k - 1e-9));
}

void FatePolicy::validate() const {
  if (!(floor_frac > 0.0) || !(floor_frac < 1.0))
    throw std::invalid_argument("FatePolicy: floor_frac must be in (0,1)");
  if (!(ceil_frac > 1.0))
    throw std::invalid_argument("FatePolicy: ceil_frac must exceed 1");
  if (window < 1) throw std::invalid_argument("FatePolicy: window >= 1");
  if (!(blowup_cap > 0.0))
    throw std::invalid_argument("FatePolicy: blowup_cap must be positive");
  if (!(abort_tol > 0.0))
    throw std::invalid_argument("FatePolicy: abort_tol must be positive");
}

const char* fate_name(Fate fate) {
  switch (fate) {
    case Fate::Extinction:
      return "extinction";
    case Fate::Growth:
      return "growth";
    case Fate::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::PopulationFloor:
      return "population_floor";
    case StopReason::PopulationCeiling:
      return "population_ceiling";
    case StopReason::BlowupGuard:
      return "blowup_guard";
    case StopReason::HorizonReached:
      return "horizon_reached";
  }
  return "?";
}

namespace detail {

PowFn::PowFn(double exponent) : e_(exponent) {
  const double r = std::floor(exponent);
  if (exponent == 0.0) {
    kind_ = Kind::Zero;
  } else if (exponent == 1.0) {
    kind_ = Kind::One;
  } else if (exponent == 2.0) {
    kind_ = Kind::Two;
  } else if (exponent > 0.0 && exponent == r && exponent <= 16.0) {
    kind_ = Kind::SmallInt;
    n_ = static_cast<int>(r);
  } else if (exponent < 0.0) {
    kind_ = Kind::NegFloored;
  } else {
    kind_ = Kind::General;
  }
}

}  // namespace detail

Stepper::Stepper(const Grid& grid, const ModelExponents& exps,
                 double abort_tol)
    : grid_(grid),
      exps_(exps),
      abort_tol_(abort_tol),
      pow_nu_minus_1_(exps.nu - 1.0),
      pow_mu_(exps.mu) {
  grid.validate();
  exps.validate();
  h2_ = grid.h * grid.h;
  h2k_ = h2_ / grid.k;
  two_over_nu_ = 2.0 / exps.nu;
  const std::size_t n = static_cast<std::size_t>(grid.m) + 1;
  dcoef_.assign(n, 0.0);
  flux_.assign(n, 0.0);
  cp_.assign(n, 0.0);
  dp_.assign(n, 0.0);
  w_.assign(n, 0.0);
}

Stepper::StepStats Stepper::advance(StateVector& state) {
  const int m = grid_.m;
  std::vector<double>& rho = state.rho;
  if (static_cast<int>(rho.size()) != m + 1) {
    throw std::invalid_argument("Stepper: state size does not match grid");
  }

  // rho^{nu-1} and rho^nu at every node. flux = dcoef * rho equals
  // rho^nu for every branch of the power rules, including the floored
  // nu < 1 case where a zero node must still give zero flux.
  for (int i = 0; i <= m; ++i) {
    const double d = pow_nu_minus_1_(rho[i]);
    dcoef_[i] = d;
    flux_[i] = d * rho[i];
  }

  // Assemble the interior increment system and run the forward
  // elimination in the same pass.
  double prev_cp = 0.0, prev_dp = 0.0;
  for (int i = 1; i < m; ++i) {
    const double diag = -2.0 * (dcoef_[i] + h2k_);
    const double lower = dcoef_[i - 1];
    const double upper = dcoef_[i + 1];
    const double rhs =
        -two_over_nu_ * (flux_[i + 1] - 2.0 * flux_[i] + flux_[i - 1]) -
        2.0 * h2_ * pow_mu_(rho[i]);
    const double denom = (i == 1) ? diag : diag - lower * prev_cp;
    if (denom == 0.0) {
      throw SingularSystem("step: zero pivot in the tridiagonal solve");
    }
    const double inv = 1.0 / denom;
    prev_cp = upper * inv;
    prev_dp = (i == 1 ? rhs : rhs - lower * prev_dp) * inv;
    cp_[i] = prev_cp;
    dp_[i] = prev_dp;
  }

  // Back substitution, then apply the increments with the negative-value
  // policy: round-off negatives snap to zero, anything below -abort_tol
  // means the run went unstable.
  double back = 0.0;
  for (int i = m - 1; i >= 1; --i) {
    back = dp_[i] - cp_[i] * back;
    w_[i] = back;
  }

  StepStats stats;
  double sum = 0.0, maxv = 0.0;
  for (int i = 1; i < m; ++i) {
    double v = rho[i] + w_[i];
    if (!(v >= 0.0)) {
      if (!std::isfinite(v)) {
        stats.finite = false;
      } else if (v <= -abort_tol_) {
        throw StabilityError(
            "step: density " + std::to_string(v) + " at node " +
                std::to_string(i) + ", T=" + std::to_string(state.time) +
                " fell below the stability threshold",
            state.time, i, v);
      } else {
        v = 0.0;
      }
    }
    rho[i] = v;
    sum += v;
    if (v > maxv) maxv = v;
  }
  rho[0] = 0.0;
  rho[m] = 0.0;
  state.time += grid_.k;

  stats.total_mass = grid_.h * sum;
  stats.max_value = maxv;
  if (!std::isfinite(sum)) stats.finite = false;
  return stats;
}

TriDiagSystem assemble_step_system(const StateVector& state, const Grid& grid,
                                   const ModelExponents& exps) {
  grid.validate();
  exps.validate();
  const int m = grid.m;
  if (static_cast<int>(state.rho.size()) != m + 1) {
    throw std::invalid_argument("assemble_step_system: state/grid mismatch");
  }
  detail::PowFn pnu1(exps.nu - 1.0), pmu(exps.mu);
  const double h2 = grid.h * grid.h;
  const double h2k = h2 / grid.k;
  std::vector<double> dcoef(m + 1), flux(m + 1);
  for (int i = 0; i <= m; ++i) {
    dcoef[i] = pnu1(state.rho[i]);
    flux[i] = dcoef[i] * state.rho[i];
  }
  TriDiagSystem sys;
  sys.lower.resize(m - 1);
  sys.diag.resize(m - 1);
  sys.upper.resize(m - 1);
  sys.rhs.resize(m - 1);
  for (int i = 1; i < m; ++i) {
    sys.lower[i - 1] = dcoef[i - 1];
    sys.diag[i - 1] = -2.0 * (dcoef[i] + h2k);
    sys.upper[i - 1] = dcoef[i + 1];
    sys.rhs[i - 1] =
        -2.0 / exps.nu * (flux[i + 1] - 2.0 * flux[i] + flux[i - 1]) -
        2.0 * h2 * pmu(state.rho[i]);
  }
  return sys;
}

std::vector<double> thomas_solve(const std::vector<double>& lower,
                                 const std::vector<double>& diag,
                                 const std::vector<double>& upper,
                                 const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw std::invalid_argument("thomas_solve: size mismatch");
  }
  if (n == 0) return {};
  std::vector<double> cp(n), dp(n), x(n);
  if (diag[0] == 0.0) throw SingularSystem("thomas_solve: zero pivot");
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double denom = diag[i] - lower[i] * cp[i - 1];
    if (denom == 0.0) throw SingularSystem("thomas_solve: zero pivot");
    cp[i] = upper[i] / denom;
    dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / denom;
  }
  x[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = dp[i] - cp[i] * x[i + 1];
  }
  return x;
}

StateVector step(const StateVector& state, const Grid& grid,
                 const ModelExponents& exps, double abort_tol) {
  Stepper stepper(grid, exps, abort_tol);
  StateVector next = state;
  stepper.advance(next);
  return next;
}

double total_population(const StateVector& state, const Grid& grid) {
  const int m = grid.m;
  if (static_cast<int>(state.rho.size()) != m + 1) {
    throw std::invalid_argument("total_population: state/grid mismatch");
  }
  double sum = 0.5 * (state.rho[0] + state.rho[m]);
  for (int i = 1; i < m; ++i) sum += state.rho[i];
  return grid.h * sum;
}

StateVector sample_initial_state(const NondimProblem& problem,
                                 const Grid& grid) {
  grid.validate();
  const int m = grid.m;
  StateVector state;
  state.rho.assign(m + 1, 0.0);
  state.time = 0.0;
  const double half = 0.5 * grid.length();
  for (int i = 1; i < m; ++i) {
    const double X = -half + i * grid.h;
    state.rho[i] = eval_nondim(problem.profile, X, problem.exps, problem.q);
  }
  return state;
}

namespace {

FateReport run_fate(const NondimProblem& problem, const Grid& grid,
                    const FatePolicy& policy,
                    const std::vector<double>* snapshot_times,
                    std::vector<std::pair<double, StateVector>>* snapshots) {
  problem.exps.validate();
  if (problem.exps.mu < problem.exps.nu) {
    throw UnsupportedRegime("classify_fate requires mu >= nu");
  }
  grid.validate();
  policy.validate();
  if (std::abs(grid.length() - problem.L) > 1e-9 * problem.L) {
    throw std::invalid_argument(
        "classify_fate: grid length does not match the problem domain");
  }

  StateVector state = sample_initial_state(problem, grid);
  const double n_init = total_population(state, grid);

  FateReport report;
  report.initial_population = n_init;
  report.trajectory.emplace_back(0.0, n_init);

  const std::int64_t n_steps = grid.step_count();
  const std::int64_t stride =
      policy.record_stride > 0
          ? policy.record_stride
          : std::max<std::int64_t>(1, n_steps / 2000);

  std::size_t snap_idx = 0;
  if (snapshot_times && snapshots) {
    while (snap_idx < snapshot_times->size() &&
           (*snapshot_times)[snap_idx] <= 0.0) {
      snapshots->emplace_back(0.0, state);
      ++snap_idx;
    }
  }

  Stepper stepper(grid, problem.exps, policy.abort_tol);
  const double floor_level = policy.floor_frac * n_init;
  const double ceil_level = policy.ceil_frac * n_init;

  double prev_n = n_init;
  int incr_run = 0;
  bool stopped = false;
  std::int64_t j = 0;
  while (j < n_steps && !stopped) {
    ++j;
    const Stepper::StepStats stats = stepper.advance(state);
    state.time = static_cast<double>(j) * grid.k;
    const double n_now = stats.total_mass;

    if (snapshot_times && snapshots) {
      while (snap_idx < snapshot_times->size() &&
             state.time + 1e-12 >= (*snapshot_times)[snap_idx]) {
        snapshots->emplace_back(state.time, state);
        ++snap_idx;
      }
    }

    incr_run = n_now > prev_n ? incr_run + 1 : 0;
    prev_n = n_now;

    if (!stats.finite || stats.max_value > policy.blowup_cap) {
      report.outcome = Fate::Growth;
      report.stop_reason = StopReason::BlowupGuard;
      stopped = true;
    } else if (n_now < floor_level) {
      report.outcome = Fate::Extinction;
      report.stop_reason = StopReason::PopulationFloor;
      stopped = true;
    } else if (n_now > ceil_level && incr_run >= policy.window) {
      report.outcome = Fate::Growth;
      report.stop_reason = StopReason::PopulationCeiling;
      stopped = true;
    }

    if (stopped || j % stride == 0 || j == n_steps) {
      report.trajectory.emplace_back(state.time, n_now);
    }
    report.final_population = n_now;
  }

  if (!stopped) {
    report.outcome = Fate::Inconclusive;
    report.stop_reason = StopReason::HorizonReached;
  }
  report.stop_time = state.time;
  report.steps = j;
  return report;
}

}  // namespace

FateReport classify_fate(const NondimProblem& problem, const Grid& grid,
                         const FatePolicy& policy) {
  return run_fate(problem, grid, policy, nullptr, nullptr);
}

FateReport classify_fate_with_snapshots(
    const NondimProblem& problem, const Grid& grid, const FatePolicy& policy,
    const std::vector<double>& snapshot_times,
    std::vector<std::pair<double, StateVector>>* snapshots) {
  return run_fate(problem, grid, policy, &snapshot_times, snapshots);
}

double steady_profile(double mu, double C, double X) {
  if (!(mu > 0.0)) throw std::domain_error("steady_profile: mu must be > 0");
  if (!(C > 0.0)) throw std::domain_error("steady_profile: C must be > 0");
  const double root_mu = std::sqrt(mu);
  const double half = M_PI / (2.0 * root_mu);
  if (std::abs(X) > half * (1.0 + 1e-12)) {
    throw std::domain_error("steady_profile: X beyond the cosine zero");
  }
  double c = std::cos(root_mu * X);
  if (c < 0.0) c = 0.0;
  return C * std::pow(c, 1.0 / mu);
}

}  // namespace popdyn
