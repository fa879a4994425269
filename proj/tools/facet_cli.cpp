// Command-line front end: effham, onedim, homogenize, nonhomog, verify.
// Exit codes: 0 ok, 1 input error, 2 partial table, 3 refused assumptions,
// 4 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "facet/cell.hpp"
#include "facet/effective.hpp"
#include "facet/homog.hpp"
#include "facet/kernels.hpp"
#include "facet/onedim.hpp"
#include "facet/problem_io.hpp"
#include "facet/report.hpp"

namespace fs = std::filesystem;
using namespace facet;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  bool force = false;
  int grid_override = 0;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "JSON config path")->required();
  cmd->add_option("--out", a.out_dir, "output directory");
  cmd->add_flag("--force", a.force, "run despite failed assumptions");
  cmd->add_option("--grid", a.grid_override, "override grid points per axis");
  cmd->add_option("--jobs", a.jobs, "worker threads for parallel maps");
}

Config load(const CommonArgs& a) {
  Config c = load_config(a.config_path);
  if (a.grid_override > 0) {
    c.effham.grid.n = a.grid_override;
    c.verify.grid.n = a.grid_override;
    c.homogenize.sweep.cell_grid.n = a.grid_override;
  }
  if (a.jobs > 0) {
    c.effham.jobs = a.jobs;
    c.homogenize.sweep.jobs = a.jobs;
  }
  return c;
}

void write_csv(const fs::path& p, const std::string& content) {
  std::ofstream os(p);
  os << content;
}

int cmd_effham(const CommonArgs& args) {
  Config c = load(args);
  RunReport rep("effham");
  rep.inputs() = echo_problem(c);
  rep.inputs()["lattice"] = {{"radius", c.effham.lattice.radius},
                             {"spacing", c.effham.lattice.spacing}};
  rep.inputs()["grid"] = c.effham.grid.n;
  StopWatch sw;

  EffectiveTable t = build_table(c.problem, c.effham.lattice, c.effham.grid,
                                 c.effham.ladder, c.effham.jobs);
  rep.time_section("build_table", sw.seconds());

  fs::create_directories(args.out_dir);
  {
    std::ofstream os(fs::path(args.out_dir) / "table.csv");
    write_table_csv(t, os);
  }
  rep.add_artifact("table", "table.csv");
  rep.outputs()["points"] = t.points.size();
  rep.outputs()["partial"] = t.partial;
  rep.outputs()["ball_in_d"] = ball_in_d(c.problem);
  rep.outputs()["sufficient_condition_full_solvability"] =
      sufficient_condition_full_solvability(c.problem);
  rep.outputs()["regime"] = regime_name(check_regime(c.problem));
  rep.diagnostics()["kernel_backend"] =
      kernels::backend_name(kernels::active_backend());
  long sweeps = 0;
  double resid = 0.0;
  for (const auto& p : t.points) {
    sweeps += p.total_sweeps;
    resid = std::max(resid, p.residual);
  }
  rep.diagnostics()["total_sweeps"] = sweeps;
  rep.diagnostics()["max_residual"] = resid;
  rep.write(args.out_dir);
  return t.partial ? 2 : 0;
}

int cmd_onedim(const CommonArgs& args) {
  Config c = load(args);
  if (c.dim != 1) {
    std::cerr << "onedim needs a one-dimensional problem\n";
    return 1;
  }
  OneDimProblem prob(c.problem.sigma, c.problem.m);
  RunReport rep("onedim");
  rep.inputs() = echo_problem(c);
  StopWatch sw;

  SolvabilityInterval D = solvability_interval(prob, c.onedim.tol);
  std::string ddesc;
  double W = 0.0;
  switch (D.kind) {
    case SolvabilityInterval::Kind::empty: ddesc = "empty"; break;
    case SolvabilityInterval::Kind::whole_line: ddesc = "R"; break;
    case SolvabilityInterval::Kind::bounded:
      ddesc = "interval";
      W = D.half_width;
      break;
  }
  rep.outputs()["D"] = ddesc;
  if (D.kind == SolvabilityInterval::Kind::bounded) rep.outputs()["W"] = W;

  std::string csv = "P,c,in_D,W\n";
  for (double p : c.onedim.p_values) {
    bool in_d = false;
    double cv = 0.0;
    if (D.kind != SolvabilityInterval::Kind::empty) {
      try {
        cv = critical_value_1d(prob, p, c.onedim.tol);
        in_d = D.kind == SolvabilityInterval::Kind::whole_line ||
               std::abs(p) < D.half_width;
      } catch (const NotSolvableError&) {
        in_d = false;
        cv = std::nan("");
      }
    } else {
      cv = std::nan("");
    }
    csv += format_double(p) + "," + format_double(cv) + "," +
           (in_d ? "1" : "0") + "," +
           (D.kind == SolvabilityInterval::Kind::bounded ? format_double(W)
                                                         : "inf") +
           "\n";
  }
  fs::create_directories(args.out_dir);
  write_csv(fs::path(args.out_dir) / "critical_values.csv", csv);
  rep.add_artifact("critical_values", "critical_values.csv");

  if (c.onedim.corrector_p &&
      D.kind != SolvabilityInterval::Kind::empty) {
    try {
      Corrector1D corr = corrector_1d(prob, *c.onedim.corrector_p,
                                      c.onedim.tol, c.onedim.corrector_samples);
      std::string ccsv = "x,u\n";
      for (std::size_t i = 0; i < corr.xs.size(); ++i)
        ccsv += format_double(corr.xs[i]) + "," + format_double(corr.us[i]) +
                "\n";
      write_csv(fs::path(args.out_dir) / "corrector.csv", ccsv);
      rep.add_artifact("corrector", "corrector.csv");
      rep.outputs()["corrector_periodicity_defect"] = corr.periodicity_defect;
      rep.outputs()["corrector_case"] = corr.large_p ? "large-P" : "small-P";
    } catch (const NotSolvableError& e) {
      rep.outputs()["corrector_error"] = e.what();
    }
  }
  rep.time_section("onedim", sw.seconds());
  rep.write(args.out_dir);
  return 0;
}

int cmd_homogenize(const CommonArgs& args) {
  Config c = load(args);
  if (c.dim != 1) {
    std::cerr << "homogenize covers one space dimension\n";
    return 1;
  }
  RunReport rep("homogenize");
  rep.inputs() = echo_problem(c);
  rep.inputs()["u0"] = {{"preset", c.homogenize.u0.name()},
                        {"amplitude", c.homogenize.u0.amplitude}};
  rep.inputs()["T"] = c.homogenize.T;
  StopWatch sw;
  SweepOptions opt = c.homogenize.sweep;
  opt.force = args.force;

  SweepReport r = epsilon_sweep(c.problem.sigma, c.problem.m, c.homogenize.u0,
                                c.homogenize.T, c.homogenize.eps, opt);
  rep.time_section("epsilon_sweep", sw.seconds());
  fs::create_directories(args.out_dir);
  if (r.refused) {
    rep.outputs()["verdict"] = "refused";
    rep.outputs()["reason"] = r.refusal;
    rep.write(args.out_dir);
    std::cerr << "refused: " << r.refusal << " (use --force to explore)\n";
    return 3;
  }
  std::string csv = "eps,error\n";
  for (std::size_t i = 0; i < r.eps.size(); ++i)
    csv += format_double(r.eps[i]) + "," + format_double(r.err[i]) + "\n";
  write_csv(fs::path(args.out_dir) / "sweep.csv", csv);
  rep.add_artifact("sweep", "sweep.csv");
  rep.outputs()["verdict"] = r.decreasing ? "converging" : "not-converging";
  rep.outputs()["ratio_last_first"] = r.ratio_last_first;
  rep.outputs()["assumption_full_solvability"] = r.assumption_full_solvability;
  rep.outputs()["assumption_lipschitz"] = r.assumption_lipschitz;
  rep.outputs()["budget_l_time"] = r.budget.l_time;
  rep.outputs()["budget_k_space"] = r.budget.k_space;
  rep.diagnostics()["max_slopes"] = r.max_slopes;
  rep.diagnostics()["time_moduli"] = r.time_moduli;
  rep.diagnostics()["table_partial_in_range"] = r.table_partial_in_range;
  rep.write(args.out_dir);
  return 0;
}

int cmd_nonhomog(const CommonArgs& args) {
  Config c = load(args);
  if (c.dim != 1) {
    std::cerr << "nonhomog covers one space dimension\n";
    return 1;
  }
  RunReport rep("nonhomog");
  rep.inputs() = echo_problem(c);
  StopWatch sw;
  GapReport g = non_homog_gap(c.problem.sigma, c.problem.m, c.nonhomog.u0,
                              c.nonhomog.T, c.nonhomog.eps, c.nonhomog.window,
                              c.nonhomog.cells_per_period, c.nonhomog.cfl,
                              c.nonhomog.min_cells);
  rep.time_section("non_homog_gap", sw.seconds());
  fs::create_directories(args.out_dir);
  if (g.rejected) {
    rep.outputs()["verdict"] = "refused";
    rep.outputs()["reason"] = g.reason;
    rep.write(args.out_dir);
    std::cerr << "refused: " << g.reason << "\n";
    return 3;
  }
  std::string csv = "scale,upper,lower,gap\n";
  for (std::size_t i = 0; i < g.scales.size(); ++i)
    csv += format_double(g.scales[i]) + "," + format_double(g.upper[i]) + "," +
           format_double(g.lower[i]) + "," + format_double(g.gap[i]) + "\n";
  write_csv(fs::path(args.out_dir) / "gap.csv", csv);
  rep.add_artifact("gap", "gap.csv");
  rep.outputs()["gap_estimate"] = g.gap_estimate;
  rep.outputs()["envelope_bound"] = g.envelope_bound;
  rep.outputs()["worst_envelope_violation"] = g.worst_envelope_violation;
  rep.outputs()["verdict"] =
      g.gap_estimate >= 0.5 * g.envelope_bound ? "not-converging" : "inconclusive";
  rep.write(args.out_dir);
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  Config c = load(args);
  if (c.dim != 1) {
    std::cerr << "verify needs a one-dimensional problem\n";
    return 1;
  }
  RunReport rep("verify");
  rep.inputs() = echo_problem(c);
  StopWatch sw;
  OneDimProblem oracle(c.problem.sigma, c.problem.m);
  const double smin = c.problem.sigma.sigma_min();

  struct Check {
    std::string name;
    bool ok;
    double slack;
  };
  std::vector<Check> checks;

  // cross-oracle agreement and sandwich/symmetry at the configured P values
  bool any_sandwich_fail = false;
  for (double p : c.verify.p_values) {
    EffectivePoint ep = effective_hamiltonian(c.problem, {p, 0.0},
                                              c.verify.grid, c.verify.ladder);
    EffectivePoint en = effective_hamiltonian(c.problem, {-p, 0.0},
                                              c.verify.grid, c.verify.ladder);
    double cv;
    bool oracle_ok = true;
    try {
      cv = critical_value_1d(oracle, p, 1e-10);
    } catch (const NotSolvableError&) {
      oracle_ok = false;
      cv = 0.0;
    }
    if (oracle_ok) {
      double rel = std::abs(ep.hbar_inf - cv) / smin;
      checks.push_back({"oracle P=" + format_double(p), rel <= c.verify.rel_tol,
                        rel - c.verify.rel_tol});
    }
    double sym = std::abs(ep.hbar_inf - en.hbar_inf);
    checks.push_back({"symmetry P=" + format_double(p),
                      sym <= 2e-3, sym - 2e-3});
    double lo = std::max(smin * c.problem.m(std::abs(p)),
                         c.problem.sigma.sigma_max() * c.problem.m.m0());
    double hi = c.problem.sigma.sigma_max() * c.problem.m(std::abs(p));
    double viol = std::max(lo - c.verify.ladder.sandwich_slack - ep.hbar_inf,
                           ep.hbar_inf - hi - c.verify.ladder.sandwich_slack);
    if (viol > 0) any_sandwich_fail = true;
    checks.push_back({"sandwich P=" + format_double(p), viol <= 0, viol});
  }
  (void)any_sandwich_fail;

  rep.time_section("verify", sw.seconds());
  bool all_ok = true;
  for (const auto& ch : checks) {
    rep.outputs()[ch.name] = {{"pass", ch.ok}, {"slack", ch.slack}};
    all_ok = all_ok && ch.ok;
  }
  rep.write(args.out_dir);
  if (!all_ok) {
    for (const auto& ch : checks)
      if (!ch.ok) {
        std::cerr << "verification failed: " << ch.name
                  << " (slack " << ch.slack << ")\n";
        return 4;
      }
  }
  std::cout << "verify: all " << checks.size() << " checks passed\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized effective Hamiltonians for non-coercive "
               "Hamilton-Jacobi homogenization"};
  app.require_subcommand(1);

  CommonArgs a_eff, a_one, a_hom, a_non, a_ver;
  CLI::App* eff = app.add_subcommand("effham", "build an effective table");
  add_common(eff, a_eff);
  CLI::App* one = app.add_subcommand("onedim", "closed-form 1D theory");
  add_common(one, a_one);
  CLI::App* hom = app.add_subcommand("homogenize", "epsilon sweep vs the "
                                                   "effective equation");
  add_common(hom, a_hom);
  CLI::App* non = app.add_subcommand("nonhomog", "relaxed-limit gap run");
  add_common(non, a_non);
  CLI::App* ver = app.add_subcommand("verify", "cross-oracle invariant suite");
  add_common(ver, a_ver);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eff->parsed()) return cmd_effham(a_eff);
    if (one->parsed()) return cmd_onedim(a_one);
    if (hom->parsed()) return cmd_homogenize(a_hom);
    if (non->parsed()) return cmd_nonhomog(a_non);
    if (ver->parsed()) return cmd_verify(a_ver);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
