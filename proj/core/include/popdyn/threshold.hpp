#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popdyn/solver.hpp"

namespace popdyn {

/// Failure of a descending threshold scan. Carries the fates classified
/// before the failure so callers can still export the partial trace.
struct ScanError : std::runtime_error {
  enum class Kind {
    BadStart,           // fate at the scan start is not Growth
    Exhausted,          // walked to the bottom without an extinction
    InconclusiveStart,  // start probe hit the horizon, cannot verify
    MonotoneViolation,  // trace contradicts monotone survival
  };
  ScanError(Kind kind, const std::string& msg,
            std::vector<std::pair<double, Fate>> trace = {})
      : std::runtime_error(msg), kind(kind), trace(std::move(trace)) {}
  Kind kind;
  std::vector<std::pair<double, Fate>> trace;
};

/// Descending-scan configuration. The scan starts at `start` (0 picks
/// the built-in default), walks down in coarse-to-fine stages whose
/// final step is `step`, and classifies the fate at every probe.
/// step = 0 selects auto mode: the stages stop refining once the step
/// is at most 1% of the running bracket midpoint.
struct ScanConfig {
  double start = 0.0;
  double step = 0.0;
  std::int64_t max_iters = 10000000;  // total fate evaluations allowed
  bool refine = false;              // optional bisection inside the bracket
  double refine_tol = 1e-4;

  void validate(double resolved_start) const;
};

enum class ScanStatus {
  Bracketed,        // regular bracket (lower extinct, upper grows)
  SurvivesAtZero,   // alpha scan only: already supercritical at alpha = 0
};

/// Bracketing result of a threshold scan. `lower` is the largest probed
/// value with Extinction, `upper` the smallest with Growth; probes that
/// hit the horizon unclassified lie strictly between them and are kept
/// in the trace. For Q scans the estimate is the bracket midpoint; for
/// alpha scans it is the upper endpoint (the last surviving alpha).
struct ThresholdEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double estimate = 0.0;
  std::int64_t evaluations = 0;
  ScanStatus status = ScanStatus::Bracketed;
  bool refined = false;
  std::vector<std::pair<double, Fate>> per_point_fates;
};

/// Default scan start for Q: max(2 pi^2 / mu, 12), comfortably above
/// every critical value in the conditional-persistence regime.
double default_q_start(const ModelExponents& exps);

/// Default scan start for alpha.
inline constexpr double kDefaultAlphaStart = 1000.0;

/// Estimates the critical survival parameter Q_c(mu, nu, alpha) by
/// walking Q down from a supercritical start until the first extinction.
/// Requires mu >= nu. Throws ScanError on a bad start, an exhausted
/// scan, or a monotonicity violation along the trace.
ThresholdEstimate estimate_qc(const ModelExponents& exps, Family family,
                              double alpha, const ScanConfig& scan,
                              const SolverConfig& solver);

/// Estimates the minimum concentration parameter alpha that lets a
/// population with survival parameter q persist. Requires mu > nu
/// (for mu = nu the critical value does not depend on alpha). If the
/// homogeneous distribution already survives, returns estimate 0 with
/// status SurvivesAtZero.
ThresholdEstimate estimate_alpha_min(const ModelExponents& exps,
                                     Family family, double q,
                                     const ScanConfig& scan,
                                     const SolverConfig& solver);

enum class SweepAxis { OverMu, OverNu, OverQ };
enum class SweepTask { Qc, AlphaMin };

/// Parameters shared by every point of a sweep; the axis decides which
/// field each point overrides.
struct SweepFixed {
  ModelExponents exps;
  Family family = Family::Homogeneous;
  double alpha = 0.0;
  double q = 0.0;  // only used by alpha-min sweeps over mu or nu
};

struct SweepRow {
  double point = 0.0;
  std::optional<ThresholdEstimate> estimate;
  std::string status = "ok";
};

/// Runs one threshold estimate per point, distributing points over
/// `workers` threads. Points must be strictly increasing. A failing
/// point records its error in the row instead of aborting the sweep;
/// rows are returned in input order.
std::vector<SweepRow> sweep(SweepAxis axis, const SweepFixed& fixed,
                            const std::vector<double>& points, SweepTask task,
                            const ScanConfig& scan, const SolverConfig& solver,
                            int workers = 1);

}  // namespace popdyn
