#include "popdyn/threshold.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace popdyn {

void ScanConfig::validate(double resolved_start) const {
  if (!(resolved_start > 0.0)) {
    throw std::invalid_argument("ScanConfig: start must be positive");
  }
  if (step < 0.0 || !std::isfinite(step)) {
    throw std::invalid_argument("ScanConfig: step must be >= 0");
  }
  if (step > 0.0 && !(step < resolved_start)) {
    throw std::invalid_argument("ScanConfig: step must be below the start");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("ScanConfig: max_iters must be positive");
  }
  if (step > 0.0 && static_cast<double>(max_iters) * step < resolved_start) {
    throw std::invalid_argument(
        "ScanConfig: max_iters * step must reach the scan start");
  }
  if (refine && !(refine_tol > 0.0)) {
    throw std::invalid_argument("ScanConfig: refine_tol must be positive");
  }
}

double default_q_start(const ModelExponents& exps) {
  const double twice_equal_exponent_qc = 2.0 * M_PI * M_PI / exps.mu;
  return twice_equal_exponent_qc > 12.0 ? twice_equal_exponent_qc : 12.0;
}

namespace {

enum class EstimatePick { Midpoint, Upper };

/// Walks `probe` down from `start` in stages whose steps shrink by
/// factors of ten toward the requested resolution, keeping the invariant
/// that everything below `highest_ext` is extinct and everything above
/// `lowest_growth` survives. Probes that hit the horizon unclassified
/// are recorded and skipped, so the bracket may span them; this keeps
/// hairline probes near the critical value from wedging the scan.
ThresholdEstimate descend_scan(const std::function<Fate(double)>& probe,
                               double start, const ScanConfig& cfg,
                               bool zero_allowed, EstimatePick pick,
                               ThresholdEstimate seeded) {
  ThresholdEstimate est = std::move(seeded);

  double lowest_growth = std::numeric_limits<double>::quiet_NaN();
  double highest_ext = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [v, f] : est.per_point_fates) {
    if (f == Fate::Growth) lowest_growth = v;
    if (f == Fate::Extinction) highest_ext = v;
  }

  auto fail = [&](ScanError::Kind kind, const std::string& msg) {
    throw ScanError(kind, msg, est.per_point_fates);
  };

  auto classify = [&](double v) {
    if (est.evaluations >= cfg.max_iters) {
      fail(ScanError::Kind::Exhausted,
           "scan: evaluation budget exhausted after " +
               std::to_string(est.evaluations) + " probes");
    }
    const Fate f = probe(v);
    ++est.evaluations;
    est.per_point_fates.emplace_back(v, f);
    if (f == Fate::Growth) {
      if (!std::isnan(highest_ext) && v < highest_ext) {
        fail(ScanError::Kind::MonotoneViolation,
             "scan: growth at " + std::to_string(v) +
                 " below an extinction at " + std::to_string(highest_ext));
      }
      if (std::isnan(lowest_growth) || v < lowest_growth) lowest_growth = v;
    } else if (f == Fate::Extinction) {
      if (!std::isnan(lowest_growth) && v > lowest_growth) {
        fail(ScanError::Kind::MonotoneViolation,
             "scan: extinction at " + std::to_string(v) +
                 " above a growth at " + std::to_string(lowest_growth));
      }
      if (std::isnan(highest_ext) || v > highest_ext) highest_ext = v;
    }
    return f;
  };

  // Start verification: the scan descends from a supercritical value.
  if (std::isnan(lowest_growth) || lowest_growth > start) {
    const Fate f0 = classify(start);
    if (f0 == Fate::Extinction) {
      fail(ScanError::Kind::BadStart,
           "scan: start " + std::to_string(start) +
               " is not supercritical; raise the start value");
    }
    if (f0 == Fate::Inconclusive) {
      fail(ScanError::Kind::InconclusiveStart,
           "scan: fate at start " + std::to_string(start) +
               " is inconclusive; extend the horizon");
    }
  }

  const bool auto_step = cfg.step == 0.0;
  double step;
  if (auto_step) {
    step = std::pow(10.0, std::floor(std::log10(start / 10.0)));
  } else {
    step = cfg.step;
    while (step * 10.0 <= start / 10.0) step *= 10.0;
  }

  const double bottom_eps = 1e-12 * start;
  while (true) {
    // One stage: walk down from the lowest known growth value.
    const double top = lowest_growth;
    bool found_ext_this_stage = false;
    for (std::int64_t r = 1;; ++r) {
      double v = top - static_cast<double>(r) * step;
      if (!std::isnan(highest_ext) && v <= highest_ext + bottom_eps) {
        break;  // below here is already known to be extinct
      }
      if (v < bottom_eps) {
        if (!zero_allowed) break;
        v = 0.0;
      }
      const Fate f = classify(v);
      if (f == Fate::Extinction) {
        found_ext_this_stage = true;
        break;
      }
      if (v == 0.0) break;  // alpha scan reached zero and it survives
    }

    if (std::isnan(highest_ext)) {
      if (zero_allowed && !std::isnan(lowest_growth) && lowest_growth == 0.0) {
        // Survival all the way down to alpha = 0.
        est.status = ScanStatus::SurvivesAtZero;
        est.lower = 0.0;
        est.upper = 0.0;
        est.estimate = 0.0;
        return est;
      }
      const bool at_final_step = auto_step ? step <= bottom_eps * 10.0
                                           : step <= cfg.step * (1.0 + 1e-12);
      if (!found_ext_this_stage && at_final_step) {
        fail(ScanError::Kind::Exhausted,
             "scan: no extinction found down to the bottom; the critical "
             "value may be 0");
      }
    }

    const bool have_bracket = !std::isnan(highest_ext);
    if (have_bracket) {
      const double mid = 0.5 * (highest_ext + lowest_growth);
      const bool fine_enough =
          auto_step ? (step <= 0.01 * mid || step <= bottom_eps * 10.0)
                    : step <= cfg.step * (1.0 + 1e-12);
      if (fine_enough) break;
    }
    step /= 10.0;
    if (!auto_step && step < cfg.step * (1.0 - 1e-12)) step = cfg.step;
  }

  if (cfg.refine) {
    while (lowest_growth - highest_ext > cfg.refine_tol) {
      const double mid = 0.5 * (highest_ext + lowest_growth);
      if (mid <= highest_ext || mid >= lowest_growth) break;  // ulp limit
      const Fate f = classify(mid);
      if (f == Fate::Inconclusive) break;  // cannot refine through a plateau
    }
    est.refined = true;
  }

  est.lower = highest_ext;
  est.upper = lowest_growth;
  est.estimate = pick == EstimatePick::Midpoint
                     ? 0.5 * (est.lower + est.upper)
                     : est.upper;
  return est;
}

}  // namespace

ThresholdEstimate estimate_qc(const ModelExponents& exps, Family family,
                              double alpha, const ScanConfig& scan,
                              const SolverConfig& solver) {
  exps.validate();
  if (!exps.conditional_persistence()) {
    throw UnsupportedRegime(
        "estimate_qc requires mu >= nu (no critical value below)");
  }
  const InitialProfile profile = InitialProfile::make(family, alpha);
  const double start = scan.start > 0.0 ? scan.start : default_q_start(exps);
  scan.validate(start);

  auto probe = [&](double q) {
    const NondimProblem problem = make_nondim_problem(exps, profile, q);
    const Grid grid = solver.grid_for(problem.L);
    return classify_fate(problem, grid, solver.policy).outcome;
  };
  return descend_scan(probe, start, scan, /*zero_allowed=*/false,
                      EstimatePick::Midpoint, {});
}

ThresholdEstimate estimate_alpha_min(const ModelExponents& exps,
                                     Family family, double q,
                                     const ScanConfig& scan,
                                     const SolverConfig& solver) {
  exps.validate();
  if (!(exps.mu > exps.nu)) {
    throw UnsupportedRegime(
        "estimate_alpha_min requires mu > nu (for mu = nu the critical "
        "value does not depend on alpha)");
  }
  if (!(q > 0.0)) throw std::invalid_argument("estimate_alpha_min: q <= 0");
  if (family == Family::Homogeneous) {
    throw std::invalid_argument(
        "estimate_alpha_min needs a parametric family (f1 or f2)");
  }
  const double start = scan.start > 0.0 ? scan.start : kDefaultAlphaStart;
  scan.validate(start);

  auto probe = [&](double alpha) {
    const InitialProfile profile = InitialProfile::make(family, alpha);
    const NondimProblem problem = make_nondim_problem(exps, profile, q);
    const Grid grid = solver.grid_for(problem.L);
    return classify_fate(problem, grid, solver.policy).outcome;
  };

  // If the homogeneous distribution already survives, no concentration
  // is needed at all.
  ThresholdEstimate seeded;
  const Fate at_zero = probe(0.0);
  ++seeded.evaluations;
  seeded.per_point_fates.emplace_back(0.0, at_zero);
  if (at_zero == Fate::Growth) {
    seeded.status = ScanStatus::SurvivesAtZero;
    seeded.lower = 0.0;
    seeded.upper = 0.0;
    seeded.estimate = 0.0;
    return seeded;
  }
  if (at_zero == Fate::Inconclusive) {
    seeded.per_point_fates.clear();  // unusable as a bracket seed
    seeded.evaluations = 1;
  }

  return descend_scan(probe, start, scan, /*zero_allowed=*/true,
                      EstimatePick::Upper, std::move(seeded));
}

std::vector<SweepRow> sweep(SweepAxis axis, const SweepFixed& fixed,
                            const std::vector<double>& points, SweepTask task,
                            const ScanConfig& scan, const SolverConfig& solver,
                            int workers) {
  if (points.empty()) throw std::invalid_argument("sweep: no points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) {
      throw std::invalid_argument("sweep: points must be strictly increasing");
    }
  }
  if (task == SweepTask::Qc && axis == SweepAxis::OverQ) {
    throw std::invalid_argument(
        "sweep: a Qc sweep scans Q itself; the axis must be mu or nu");
  }
  if (workers < 1) workers = 1;
  if (workers > static_cast<int>(points.size())) {
    workers = static_cast<int>(points.size());
  }

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};

  auto run_point = [&](std::size_t idx) {
    SweepRow& row = rows[idx];
    row.point = points[idx];
    ModelExponents exps = fixed.exps;
    double q = fixed.q;
    switch (axis) {
      case SweepAxis::OverMu:
        exps.mu = points[idx];
        break;
      case SweepAxis::OverNu:
        exps.nu = points[idx];
        break;
      case SweepAxis::OverQ:
        q = points[idx];
        break;
    }
    try {
      if (task == SweepTask::Qc) {
        row.estimate = estimate_qc(exps, fixed.family, fixed.alpha, scan,
                                   solver);
      } else {
        row.estimate = estimate_alpha_min(exps, fixed.family, q, scan,
                                          solver);
      }
      row.status = "ok";
    } catch (const std::exception& e) {
      row.estimate.reset();
      row.status = e.what();
    }
  };

  if (workers == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < points.size();
             i = next.fetch_add(1)) {
          run_point(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace popdyn
