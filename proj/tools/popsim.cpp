// popsim: simulate the nonlinear reaction-diffusion population model on a
// bounded hostile-boundary habitat, classify survival, and estimate the
// critical thresholds (Q_c, alpha_min, critical habitat size and critical
// total population).
//
// Subcommands: simulate, qc, alpha-min, sweep, critical, rerun.
// Every run writes a manifest.json that `popsim rerun` replays exactly.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "popdyn/io.hpp"
#include "popdyn/scaling.hpp"
#include "popdyn/solver.hpp"
#include "popdyn/threshold.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace popdyn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInconclusive = 2;

int default_workers() {
  if (const char* env = std::getenv("POPSIM_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

// ---------------------------------------------------------------------------
// Run configuration shared by the subcommands, serialized into manifests.

struct RunConfig {
  std::string command;
  double mu = 0.0, nu = 0.0;
  std::string family = "hom";
  double alpha = 0.0;
  std::optional<double> q;
  std::optional<PhysicalParams> physical;
  SolverConfig solver;
  ScanConfig scan;
  // sweep only
  std::string task = "qc", axis = "mu";
  std::vector<double> points;
  int workers = 1;
  // simulate only
  std::vector<double> snapshot_times;
  std::string out_dir = "popsim_out";
};

json policy_to_json(const FatePolicy& p) {
  return json{{"floor_frac", p.floor_frac},
              {"ceil_frac", p.ceil_frac},
              {"window", p.window},
              {"blowup_cap", p.blowup_cap},
              {"abort_tol", p.abort_tol},
              {"record_stride", p.record_stride}};
}

FatePolicy policy_from_json(const json& j) {
  FatePolicy p;
  p.floor_frac = j.at("floor_frac");
  p.ceil_frac = j.at("ceil_frac");
  p.window = j.at("window");
  p.blowup_cap = j.at("blowup_cap");
  p.abort_tol = j.at("abort_tol");
  p.record_stride = j.at("record_stride");
  return p;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["model"] = {{"mu", c.mu}, {"nu", c.nu}};
  j["profile"] = {{"family", c.family}, {"alpha", c.alpha}};
  if (c.q) j["q"] = *c.q;
  if (c.physical) {
    j["physical"] = {{"a", c.physical->a},
                     {"D", c.physical->D},
                     {"l", c.physical->l},
                     {"n0", c.physical->n0}};
  }
  j["solver"] = {{"m", c.solver.m},
                 {"k", c.solver.k},
                 {"k_rel", c.solver.k_rel},
                 {"t_max", c.solver.t_max},
                 {"policy", policy_to_json(c.solver.policy)}};
  if (c.command == "qc" || c.command == "alpha-min" || c.command == "sweep") {
    j["scan"] = {{"start", c.scan.start},
                 {"step", c.scan.step},
                 {"max_iters", c.scan.max_iters},
                 {"refine", c.scan.refine},
                 {"refine_tol", c.scan.refine_tol}};
  }
  if (c.command == "sweep") {
    j["sweep"] = {{"task", c.task},
                  {"axis", c.axis},
                  {"points", c.points},
                  {"workers", c.workers}};
  }
  if (c.command == "simulate") j["snapshot_times"] = c.snapshot_times;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command");
  c.mu = j.at("model").at("mu");
  c.nu = j.at("model").at("nu");
  c.family = j.at("profile").at("family");
  c.alpha = j.at("profile").at("alpha");
  if (j.contains("q")) c.q = j.at("q").get<double>();
  if (j.contains("physical")) {
    const json& p = j.at("physical");
    c.physical = PhysicalParams{p.at("a"), p.at("D"), p.at("l"), p.at("n0")};
  }
  const json& s = j.at("solver");
  c.solver.m = s.at("m");
  c.solver.k = s.at("k");
  c.solver.k_rel = s.at("k_rel");
  c.solver.t_max = s.at("t_max");
  c.solver.policy = policy_from_json(s.at("policy"));
  if (j.contains("scan")) {
    const json& sc = j.at("scan");
    c.scan.start = sc.at("start");
    c.scan.step = sc.at("step");
    c.scan.max_iters = sc.at("max_iters");
    c.scan.refine = sc.at("refine");
    c.scan.refine_tol = sc.at("refine_tol");
  }
  if (j.contains("sweep")) {
    const json& sw = j.at("sweep");
    c.task = sw.at("task");
    c.axis = sw.at("axis");
    c.points = sw.at("points").get<std::vector<double>>();
    c.workers = sw.at("workers");
  }
  if (j.contains("snapshot_times")) {
    c.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
  }
  return c;
}

void write_manifest(const RunConfig& c, const json& results) {
  fs::create_directories(c.out_dir);
  json j = config_to_json(c);
  if (!results.is_null()) j["results"] = results;
  io::write_file((fs::path(c.out_dir) / "manifest.json").string(),
                 j.dump(2) + "\n");
}

// Parses "a:b:step" ranges or comma-separated lists of points.
std::vector<double> parse_points(const std::string& spec) {
  std::vector<double> pts;
  if (spec.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
        step <= 0) {
      throw std::invalid_argument("bad point range '" + spec +
                                  "' (expected a:b:step)");
    }
    for (double v = a; v <= b + 1e-12 * step; v += step) pts.push_back(v);
    return pts;
  }
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (!tok.empty()) pts.push_back(std::stod(tok));
  }
  return pts;
}

InitialProfile make_profile(const RunConfig& c) {
  return InitialProfile::make(parse_family(c.family), c.alpha);
}

json estimate_to_json(const ThresholdEstimate& est) {
  json j;
  j["estimate"] = est.estimate;
  j["bracket_lo"] = est.lower;
  j["bracket_hi"] = est.upper;
  j["evaluations"] = est.evaluations;
  j["status"] = est.status == ScanStatus::SurvivesAtZero ? "survives_at_zero"
                                                         : "bracketed";
  j["refined"] = est.refined;
  return j;
}

// ---------------------------------------------------------------------------
// Subcommand implementations (shared by the flag path and `rerun`).

int run_simulate(const RunConfig& cfg) {
  RunConfig c = cfg;
  const ModelExponents exps{c.mu, c.nu};
  const InitialProfile profile = make_profile(c);

  NondimProblem problem;
  if (c.physical) {
    problem = nondimensionalize(exps, *c.physical, profile);
    c.q = problem.q;
    std::cout << "survival parameter Q = " << io::format_double(problem.q)
              << " (from a, D, l, n0)\n";
  } else {
    problem = make_nondim_problem(exps, profile, *c.q);
  }
  const Grid grid = c.solver.grid_for(problem.L);

  std::vector<std::pair<double, StateVector>> snaps;
  const FateReport report = classify_fate_with_snapshots(
      problem, grid, c.solver.policy, c.snapshot_times, &snaps);

  fs::create_directories(c.out_dir);
  io::write_file((fs::path(c.out_dir) / "trajectory.csv").string(),
                 io::trajectory_csv(report.trajectory));
  for (const auto& [t, state] : snaps) {
    std::ostringstream name;
    name << "snapshot_T" << io::format_double(t) << ".csv";
    io::write_file((fs::path(c.out_dir) / name.str()).string(),
                   io::snapshot_csv(state, grid));
  }

  json results;
  results["fate"] = fate_name(report.outcome);
  results["stop_reason"] = stop_reason_name(report.stop_reason);
  results["stop_time"] = report.stop_time;
  results["initial_population"] = report.initial_population;
  results["final_population"] = report.final_population;
  results["steps"] = report.steps;
  results["grid"] = {{"m", grid.m}, {"h", grid.h}, {"k", grid.k},
                     {"t_max", grid.t_max}};
  results["snapshot_actual_times"] = [&] {
    std::vector<double> ts;
    for (const auto& s : snaps) ts.push_back(s.first);
    return ts;
  }();
  write_manifest(c, results);

  std::cout << "fate: " << fate_name(report.outcome) << " ("
            << stop_reason_name(report.stop_reason) << ") at T = "
            << io::format_double(report.stop_time) << "\n"
            << "N(0) = " << io::format_double(report.initial_population)
            << ", N(end) = " << io::format_double(report.final_population)
            << "\n"
            << "outputs in " << c.out_dir << "\n";
  return report.outcome == Fate::Inconclusive ? kExitInconclusive : kExitOk;
}

int run_qc(const RunConfig& cfg) {
  RunConfig c = cfg;
  const ModelExponents exps{c.mu, c.nu};
  ThresholdEstimate est;
  std::string error;
  try {
    est = estimate_qc(exps, parse_family(c.family), c.alpha, c.scan,
                      c.solver);
  } catch (const ScanError& e) {
    error = e.what();
    est.per_point_fates = e.trace;
  }

  fs::create_directories(c.out_dir);
  io::write_file((fs::path(c.out_dir) / "scan.csv").string(),
                 io::scan_trace_csv(est.per_point_fates));
  json results = error.empty() ? estimate_to_json(est)
                               : json{{"error", error}};
  write_manifest(c, results);

  if (!error.empty()) {
    std::cerr << "qc failed: " << error << "\n"
              << "partial trace written to " << c.out_dir << "/scan.csv\n";
    return kExitInvalid;
  }
  std::cout << "Q_c(" << io::format_double(c.mu) << ", "
            << io::format_double(c.nu) << ", alpha=" << io::format_double(
            c.alpha) << ") ~= " << io::format_double(est.estimate) << "\n"
            << "bracket: [" << io::format_double(est.lower) << ", "
            << io::format_double(est.upper) << "], evaluations: "
            << est.evaluations << "\n"
            << "outputs in " << c.out_dir << "\n";
  return kExitOk;
}

int run_alpha_min(const RunConfig& cfg) {
  RunConfig c = cfg;
  const ModelExponents exps{c.mu, c.nu};
  ThresholdEstimate est;
  std::string error;
  try {
    est = estimate_alpha_min(exps, parse_family(c.family), *c.q, c.scan,
                             c.solver);
  } catch (const ScanError& e) {
    error = e.what();
    est.per_point_fates = e.trace;
  }

  fs::create_directories(c.out_dir);
  io::write_file((fs::path(c.out_dir) / "scan.csv").string(),
                 io::scan_trace_csv(est.per_point_fates));
  json results = error.empty() ? estimate_to_json(est)
                               : json{{"error", error}};
  write_manifest(c, results);

  if (!error.empty()) {
    std::cerr << "alpha-min failed: " << error << "\n"
              << "partial trace written to " << c.out_dir << "/scan.csv\n";
    return kExitInvalid;
  }
  if (est.status == ScanStatus::SurvivesAtZero) {
    std::cout << "alpha_min = 0 (the homogeneous distribution already "
                 "survives at Q = " << io::format_double(*c.q) << ")\n";
  } else {
    std::cout << "alpha_min(" << io::format_double(c.mu) << ", "
              << io::format_double(c.nu) << ", Q=" << io::format_double(*c.q)
              << ") ~= " << io::format_double(est.estimate) << "\n"
              << "bracket: [" << io::format_double(est.lower) << ", "
              << io::format_double(est.upper) << "], evaluations: "
              << est.evaluations << "\n";
  }
  std::cout << "outputs in " << c.out_dir << "\n";
  return kExitOk;
}

int run_sweep(const RunConfig& cfg) {
  RunConfig c = cfg;
  SweepFixed fixed;
  fixed.exps = {c.mu, c.nu};
  fixed.family = parse_family(c.family);
  fixed.alpha = c.alpha;
  fixed.q = c.q.value_or(0.0);

  const SweepAxis axis = c.axis == "mu"  ? SweepAxis::OverMu
                         : c.axis == "nu" ? SweepAxis::OverNu
                                          : SweepAxis::OverQ;
  const SweepTask task =
      c.task == "alpha-min" ? SweepTask::AlphaMin : SweepTask::Qc;

  const auto rows =
      sweep(axis, fixed, c.points, task, c.scan, c.solver, c.workers);

  fs::create_directories(c.out_dir);
  io::write_file((fs::path(c.out_dir) / "sweep.csv").string(),
                 io::sweep_csv(rows));

  int failures = 0;
  json jrows = json::array();
  for (const auto& row : rows) {
    json jr;
    jr["point"] = row.point;
    jr["status"] = row.status;
    if (row.estimate) jr["result"] = estimate_to_json(*row.estimate);
    else ++failures;
    jrows.push_back(jr);
  }
  write_manifest(c, json{{"rows", jrows}, {"failed_points", failures}});

  std::cout << "sweep over " << c.axis << " (" << rows.size()
            << " points, task " << c.task << "): " << failures
            << " failed\n" << "outputs in " << c.out_dir << "\n";
  for (const auto& row : rows) {
    std::cout << "  " << io::format_double(row.point) << " -> ";
    if (row.estimate) {
      std::cout << io::format_double(row.estimate->estimate) << "\n";
    } else {
      std::cout << row.status << "\n";
    }
  }
  return failures == 0 ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "popsim: survival thresholds for the density-dependent population "
      "model u_t = D (u^{nu-1} u_x)_x + a u^mu on a habitat with hostile "
      "boundaries"};
  app.require_subcommand(1);

  // ---- shared option state ----
  RunConfig c;
  double a = 1.0, D = 1.0, l = 0.0, n0 = 0.0;
  std::string points_spec;
  std::string preset;
  double qc_given = 0.0;
  c.workers = default_workers();

  // mu/nu are validated after presets fill their defaults.
  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--mu", c.mu, "growth exponent");
    cmd->add_option("--nu", c.nu, "diffusion exponent");
  };
  auto add_profile = [&](CLI::App* cmd) {
    cmd->add_option("--family", c.family, "initial family: hom, f1 or f2");
    cmd->add_option("--alpha", c.alpha, "concentration parameter alpha");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--m", c.solver.m, "grid intervals (default 200)");
    cmd->add_option("--dt", c.solver.k, "time step (default h^2/4)");
    cmd->add_option("--dt-rel", c.solver.k_rel,
                    "time step as a multiple of h^2");
    cmd->add_option("--tmax", c.solver.t_max, "integration horizon");
    cmd->add_option("--floor", c.solver.policy.floor_frac,
                    "extinction once N < floor * N(0)");
    cmd->add_option("--ceil", c.solver.policy.ceil_frac,
                    "growth once N > ceil * N(0) and rising");
    cmd->add_option("--window", c.solver.policy.window,
                    "trailing rising-steps window for the growth call");
    cmd->add_option("--blowup-cap", c.solver.policy.blowup_cap,
                    "node value that triggers the blow-up guard");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", c.out_dir, "output directory");
  };

  // ---- simulate ----
  CLI::App* sim = app.add_subcommand(
      "simulate", "integrate one run and classify its fate");
  add_model(sim);
  add_profile(sim);
  add_solver(sim);
  add_out(sim);
  auto* q_opt = sim->add_option("--q", "survival parameter Q");
  auto* a_opt = sim->add_option("--a", a, "growth coefficient");
  auto* D_opt = sim->add_option("--D", D, "diffusion coefficient");
  auto* l_opt = sim->add_option("--l", l, "habitat length");
  auto* n_opt = sim->add_option("--n0", n0, "total initial population");
  q_opt->excludes(a_opt)->excludes(D_opt)->excludes(l_opt)->excludes(n_opt);
  std::string snaps_spec;
  sim->add_option("--snapshots", snaps_spec,
                  "comma separated times for density snapshots");
  sim->add_option("--preset", preset,
                  "parameter preset fig3..fig10 (see README)");

  // ---- qc ----
  CLI::App* qc = app.add_subcommand(
      "qc", "estimate the critical survival parameter Q_c(mu, nu, alpha)");
  add_model(qc);
  add_profile(qc);
  add_solver(qc);
  add_out(qc);
  qc->add_option("--dq", c.scan.step, "scan step (0 = auto)");
  qc->add_option("--start", c.scan.start, "scan start (0 = default)");
  qc->add_option("--max-iters", c.scan.max_iters, "fate evaluation budget");
  qc->add_flag("--refine", c.scan.refine, "bisect inside the final bracket");
  qc->add_option("--refine-tol", c.scan.refine_tol, "refinement width");
  qc->add_option("--preset", preset, "parameter preset fig11 (see README)");

  // ---- alpha-min ----
  CLI::App* am = app.add_subcommand(
      "alpha-min",
      "estimate the minimum concentration parameter for survival");
  add_model(am);
  add_profile(am);
  add_solver(am);
  add_out(am);
  auto* am_q = am->add_option("--q", "survival parameter Q");
  am->add_option("--dalpha", c.scan.step, "scan step (0 = auto)");
  am->add_option("--start", c.scan.start, "scan start (0 = default 1000)");
  am->add_option("--max-iters", c.scan.max_iters, "fate evaluation budget");
  am->add_flag("--refine", c.scan.refine, "bisect inside the final bracket");
  am->add_option("--refine-tol", c.scan.refine_tol, "refinement width");
  am->add_option("--preset", preset, "parameter preset fig16 (see README)");

  // ---- sweep ----
  CLI::App* sw = app.add_subcommand(
      "sweep", "run a threshold estimate over a list of parameter points");
  add_model(sw);
  add_profile(sw);
  add_solver(sw);
  add_out(sw);
  sw->add_option("--task", c.task, "qc or alpha-min")
      ->check(CLI::IsMember({"qc", "alpha-min"}));
  sw->add_option("--axis", c.axis, "mu, nu or q")
      ->check(CLI::IsMember({"mu", "nu", "q"}));
  sw->add_option("--points", points_spec, "a:b:step range or v1,v2,...")
      ->required();
  auto* sw_q = sw->add_option("--q", "fixed Q for alpha-min sweeps");
  sw->add_option("--dq", c.scan.step, "scan step (0 = auto)");
  sw->add_option("--start", c.scan.start, "scan start (0 = default)");
  sw->add_option("--max-iters", c.scan.max_iters, "fate evaluation budget");
  sw->add_option("--workers", c.workers,
                 "worker threads (default POPSIM_WORKERS or 1)");

  // ---- critical ----
  CLI::App* cr = app.add_subcommand(
      "critical",
      "critical habitat size (given n0) or total population (given l)");
  add_model(cr);
  add_profile(cr);
  add_solver(cr);
  cr->add_option("--a", a, "growth coefficient");
  cr->add_option("--D", D, "diffusion coefficient");
  auto* cr_qc = cr->add_option("--qc", qc_given,
                               "critical Q (otherwise estimated by a scan)");
  cr->add_option("--dq", c.scan.step, "scan step when estimating Q_c");
  auto* cr_n0 = cr->add_option("--n0", n0, "total population (habitat mode)");
  auto* cr_l = cr->add_option("--l", l, "habitat length (population mode)");

  // ---- rerun ----
  CLI::App* rr = app.add_subcommand(
      "rerun", "replay a run exactly from an emitted manifest.json");
  std::string manifest_path;
  std::string rerun_out;
  rr->add_option("manifest", manifest_path, "path to manifest.json")
      ->required();
  rr->add_option("--out", rerun_out, "output directory override");

  CLI11_PARSE(app, argc, argv);

  try {
    // Apply figure presets for options the user did not pass explicitly.
    if (!preset.empty()) {
      struct Preset {
        double mu, nu, alpha, q;
        const char* family;
      };
      const std::map<std::string, Preset> sim_presets = {
          {"fig3", {4, 2, 100, 0.9, "f1"}}, {"fig4", {4, 2, 100, 1.1, "f1"}},
          {"fig5", {4, 2, 100, 0.9, "f2"}}, {"fig6", {4, 2, 100, 1.1, "f2"}},
          {"fig7", {4, 2, 100, 0.9, "f1"}}, {"fig8", {4, 2, 100, 1.1, "f1"}},
          {"fig9", {4, 2, 100, 0.9, "f2"}}, {"fig10", {4, 2, 100, 1.1, "f2"}},
      };
      if (sim->parsed() && sim_presets.count(preset)) {
        const Preset& p = sim_presets.at(preset);
        if (!sim->count("--mu")) c.mu = p.mu;
        if (!sim->count("--nu")) c.nu = p.nu;
        if (!sim->count("--alpha")) c.alpha = p.alpha;
        if (!sim->count("--family")) c.family = p.family;
        if (!q_opt->count() && !l_opt->count()) c.q = p.q;
      } else if (qc->parsed() && preset == "fig11") {
        if (!qc->count("--mu")) c.mu = 4;
        if (!qc->count("--nu")) c.nu = 2;
        if (!qc->count("--alpha")) c.alpha = 100;
        if (!qc->count("--family")) c.family = "f1";
        if (!qc->count("--dq")) c.scan.step = 0.0002;
      } else if (am->parsed() && preset == "fig16") {
        if (!am->count("--mu")) c.mu = 4;
        if (!am->count("--nu")) c.nu = 2;
        if (!am->count("--family")) c.family = "f1";
        if (!am_q->count()) c.q = 2.0;
        if (!am->count("--dalpha")) c.scan.step = 0.001;
      } else {
        std::cerr << "unknown preset '" << preset
                  << "' for this subcommand\n";
        return kExitInvalid;
      }
    }
    // The sweep axis supplies its own exponent per point.
    const bool need_mu = sim->parsed() || qc->parsed() || am->parsed() ||
                         cr->parsed() || (sw->parsed() && c.axis != "mu");
    const bool need_nu = sim->parsed() || qc->parsed() || am->parsed() ||
                         cr->parsed() || (sw->parsed() && c.axis != "nu");
    if ((need_mu && c.mu <= 0.0) || (need_nu && c.nu <= 0.0)) {
      std::cerr << "--mu and --nu are required (positive)\n";
      return kExitInvalid;
    }

    if (sim->parsed()) {
      c.command = "simulate";
      if (q_opt->count()) c.q = q_opt->as<double>();
      if (l_opt->count() || n_opt->count()) {
        if (!l_opt->count() || !n_opt->count()) {
          std::cerr << "physical mode needs --a --D --l --n0\n";
          return kExitInvalid;
        }
        c.physical = PhysicalParams{a, D, l, n0};
      }
      if (!c.q && !c.physical) {
        std::cerr << "pass either --q or the physical parameters "
                     "--a --D --l --n0\n";
        return kExitInvalid;
      }
      if (!snaps_spec.empty()) c.snapshot_times = parse_points(snaps_spec);
      return run_simulate(c);
    }
    if (qc->parsed()) {
      c.command = "qc";
      return run_qc(c);
    }
    if (am->parsed()) {
      c.command = "alpha-min";
      if (am_q->count()) c.q = am_q->as<double>();
      if (!c.q) {
        std::cerr << "alpha-min needs --q (or a preset that sets it)\n";
        return kExitInvalid;
      }
      return run_alpha_min(c);
    }
    if (sw->parsed()) {
      c.command = "sweep";
      c.points = parse_points(points_spec);
      if (sw_q->count()) c.q = sw_q->as<double>();
      if (c.task == "alpha-min" && c.axis != "q" && !c.q) {
        std::cerr << "an alpha-min sweep over mu/nu needs a fixed --q\n";
        return kExitInvalid;
      }
      return run_sweep(c);
    }
    if (cr->parsed()) {
      const ModelExponents exps{c.mu, c.nu};
      exps.validate();
      if (c.mu < c.nu) {
        std::cerr << "mu < nu: the population survives for every habitat "
                     "size and total population; no critical value exists\n";
        return kExitInvalid;
      }
      if (!cr_n0->count() && !cr_l->count()) {
        std::cerr << "pass --n0 (critical habitat size) or --l (critical "
                     "total population)\n";
        return kExitInvalid;
      }

      double qc_value;
      if (cr_qc->count()) {
        qc_value = qc_given;
      } else if (c.mu == c.nu) {
        qc_value = M_PI * M_PI / c.mu;
        std::cout << "Q_c = pi^2/mu = " << io::format_double(qc_value)
                  << " (exact for mu = nu)\n";
      } else {
        std::cout << "estimating Q_c by fate scan...\n";
        const ThresholdEstimate est = estimate_qc(
            exps, parse_family(c.family), c.alpha, c.scan, c.solver);
        qc_value = est.estimate;
        std::cout << "Q_c ~= " << io::format_double(qc_value) << " (bracket ["
                  << io::format_double(est.lower) << ", "
                  << io::format_double(est.upper) << "])\n";
      }

      if (cr_n0->count()) {
        if (c.mu == c.nu + 2.0) {
          std::cout
              << "mu = nu + 2: survival does not constrain the habitat "
                 "size.\nThe condition falls on the total population "
                 "alone: n0 >= sqrt((D/a) Q_c) = "
              << io::format_double(std::sqrt(D / a * qc_value)) << "\n";
          return kExitOk;
        }
        const CriticalSize lc = critical_habitat(exps, qc_value, a, D, n0);
        std::cout << "critical habitat size l_c = "
                  << io::format_double(lc.size) << "\n"
                  << (lc.direction == SizeDirection::MinimumSize
                          ? "survival requires l >= l_c\n"
                          : "survival requires l <= l_c\n");
      } else {
        if (c.mu == c.nu) {
          std::cerr << "mu = nu: survival does not constrain the total "
                       "population (the habitat condition l >= l_c is the "
                       "only one)\n";
          return kExitInvalid;
        }
        const double n0c = critical_population(exps, qc_value, a, D, l);
        std::cout << "critical total population n0_c = "
                  << io::format_double(n0c) << "\n"
                  << "survival requires n0 >= n0_c\n";
      }
      return kExitOk;
    }
    if (rr->parsed()) {
      std::ifstream in(manifest_path);
      if (!in) {
        std::cerr << "cannot read " << manifest_path << "\n";
        return kExitInvalid;
      }
      json j = json::parse(in);
      RunConfig rc = config_from_json(j);
      rc.out_dir = rerun_out.empty() ? c.out_dir : rerun_out;
      if (rc.command == "simulate") return run_simulate(rc);
      if (rc.command == "qc") return run_qc(rc);
      if (rc.command == "alpha-min") return run_alpha_min(rc);
      if (rc.command == "sweep") return run_sweep(rc);
      std::cerr << "manifest command '" << rc.command << "' not replayable\n";
      return kExitInvalid;
    }
  } catch (const ScanError& e) {
    std::cerr << "scan error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
