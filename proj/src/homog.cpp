#include "facet/homog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "facet/cell.hpp"

namespace facet {

namespace {
constexpr double kPi = 3.14159265358979323846;
double frac(double x) {
  double f = x - std::floor(x);
  return f == 1.0 ? 0.0 : f;
}
} // namespace

double InitialDatum::operator()(double x) const {
  switch (kind) {
    case Kind::constant: return amplitude;
    case Kind::sine: return amplitude * std::sin(2.0 * kPi * x);
    case Kind::cosine: return amplitude * std::cos(2.0 * kPi * x);
  }
  return 0.0;
}

double InitialDatum::lipschitz() const {
  return kind == Kind::constant ? 0.0 : std::abs(amplitude) * 2.0 * kPi;
}

std::string InitialDatum::name() const {
  switch (kind) {
    case Kind::constant: return "constant";
    case Kind::sine: return "sine";
    case Kind::cosine: return "cosine";
  }
  return "?";
}

void EvolutionProblem::validate() const {
  if (sigma.dim() != 1)
    throw std::invalid_argument("evolution solvers cover one space dimension");
  if (T <= 0.0) throw std::invalid_argument("final time must be positive");
  if (epsilon <= 0.0 || epsilon > 1.0)
    throw std::invalid_argument("epsilon must lie in (0,1]");
  double k = 1.0 / epsilon;
  if (std::abs(k - std::round(k)) > 1e-9)
    throw std::invalid_argument("epsilon must be 1/k for integer k");
}

RegularityBudget regularity_budget(const SupplyField& sigma,
                                   const KineticModel& m, double lip_u0) {
  RegularityBudget b;
  b.l_time = sigma.sigma_max() * m(lip_u0);
  double arg = sigma.sigma_max() / sigma.sigma_min() * m(lip_u0);
  if (arg < m.saturation()) {
    b.k_space = m.inverse(arg);
    b.finite = true;
  } else {
    b.k_space = std::numeric_limits<double>::infinity();
    b.finite = false;
  }
  return b;
}

double envelope_lower(const EvolutionProblem& p, double x, double t) {
  return p.u0(x) - p.sigma(frac(x / p.epsilon)) * t;
}

double envelope_upper(const EvolutionProblem& p, double x, double t) {
  return p.u0(x) - p.sigma(frac(x / p.epsilon)) * p.m.m0() * t;
}

namespace {

struct Stepper {
  int n;
  double h;
  std::vector<double> u, unew, sig_eps;
  kernels::SweepParams sp;

  void fill_sigma(const SupplyField& sigma, double eps) {
    sig_eps.assign(std::size_t(n) + 2, 0.0);
    for (int i = 1; i <= n; ++i)
      sig_eps[std::size_t(i)] = sigma(frac((i - 1) * h / eps));
    kernels::fill_ghost_1d(sig_eps.data(), n);
  }

  void step(double dt) {
    sp.dt = dt;
    kernels::fill_ghost_1d(u.data(), n);
    kernels::lf_sweep_1d(u.data(), unew.data(), sig_eps.data(), n, sp);
    std::swap(u, unew);
  }
};

double max_one_sided_slope(const std::vector<double>& u, int n, double h) {
  double g = 0.0;
  for (int i = 1; i <= n; ++i) {
    double right = (u[std::size_t(i == n ? 1 : i + 1)] - u[std::size_t(i)]) / h;
    g = std::max(g, std::abs(right));
  }
  return g;
}

} // namespace

EvolutionResult solve_hje(const EvolutionProblem& p, int n, double cfl,
                          const std::vector<double>& snap_times,
                          const ProbeWindow* window) {
  p.validate();
  if (cfl <= 0.0 || cfl > 1.0) throw std::invalid_argument("cfl in (0,1]");
  if (double(n) * p.epsilon < 32.0 - 1e-9)
    throw std::invalid_argument(
        "grid under-resolves the oscillation: need n*epsilon >= 32");

  EvolutionResult out;
  out.n = n;
  out.h = 1.0 / n;

  Stepper st;
  st.n = n;
  st.h = out.h;
  st.u.assign(std::size_t(n) + 2, 0.0);
  st.unew.assign(std::size_t(n) + 2, 0.0);
  for (int i = 1; i <= n; ++i) st.u[std::size_t(i)] = p.u0((i - 1) * out.h);
  st.fill_sigma(p.sigma, p.epsilon);

  const double theta = p.sigma.sigma_max() * p.m.lipschitz();
  st.sp.h = out.h;
  st.sp.delta = 0.0;
  st.sp.theta = theta;
  st.sp.Px = st.sp.Py = 0.0;
  kernels::KineticSpec ms;
  switch (p.m.kind()) {
    case KineticModel::Kind::rational:
      ms.kind = kernels::KineticSpec::Kind::rational;
      break;
    case KineticModel::Kind::tanh_sat:
      ms.kind = kernels::KineticSpec::Kind::tanh_sat;
      break;
    case KineticModel::Kind::sampled:
      ms.kind = kernels::KineticSpec::Kind::sampled;
      ms.tab_r = p.m.sample_r().data();
      ms.tab_m = p.m.sample_m().data();
      ms.tab_len = int(p.m.sample_r().size());
      break;
  }
  ms.L = p.m.lipschitz();
  st.sp.m = ms;

  std::vector<double> snaps = snap_times;
  snaps.push_back(p.T);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              snaps.end());

  const double dt0 = cfl * out.h / (2.0 * theta);
  double t = 0.0;

  double win_tmin = 0.0, win_tmax = -1.0, max_scale = 0.0;
  if (window) {
    for (double s : window->scales) max_scale = std::max(max_scale, s);
    win_tmin = window->t - max_scale;
    win_tmax = window->t + max_scale;
    out.window_max.assign(window->scales.size(),
                          -std::numeric_limits<double>::infinity());
    out.window_min.assign(window->scales.size(),
                          std::numeric_limits<double>::infinity());
    out.window_active.assign(window->scales.size(), false);
  }

  // node index lists per scale, precomputed once
  std::vector<std::vector<int>> win_nodes;
  if (window) {
    win_nodes.resize(window->scales.size());
    for (std::size_t s = 0; s < window->scales.size(); ++s) {
      if (p.epsilon > window->scales[s] + 1e-12) continue; // epsilon cap
      for (int i = 1; i <= n; ++i) {
        double x = (i - 1) * out.h;
        double d = std::abs(x - window->x);
        d = std::min(d, 1.0 - d);
        if (d <= window->scales[s] + 1e-12) win_nodes[s].push_back(i);
      }
    }
  }
  auto record_window = [&](double tcur) {
    if (!window || tcur < win_tmin - 1e-12 || tcur > win_tmax + 1e-12) return;
    for (std::size_t s = 0; s < window->scales.size(); ++s) {
      if (win_nodes[s].empty()) continue;
      if (std::abs(tcur - window->t) > window->scales[s] + 1e-12) continue;
      out.window_active[s] = true;
      for (int i : win_nodes[s]) {
        out.window_max[s] = std::max(out.window_max[s], st.u[std::size_t(i)]);
        out.window_min[s] = std::min(out.window_min[s], st.u[std::size_t(i)]);
      }
    }
  };

  auto check_envelopes = [&](double tcur) {
    double viol = 0.0;
    for (int i = 1; i <= n; ++i) {
      double x = (i - 1) * out.h;
      double lo = envelope_lower(p, x, tcur);
      double hi = envelope_upper(p, x, tcur);
      viol = std::max(viol, std::max(lo - st.u[std::size_t(i)],
                                     st.u[std::size_t(i)] - hi));
    }
    out.envelope_violation = std::max(out.envelope_violation, viol);
  };

  auto snapshot = [&](double tcur) {
    out.snap_t.push_back(tcur);
    out.snap_u.emplace_back(st.u.begin() + 1, st.u.begin() + 1 + n);
    out.max_slope = std::max(out.max_slope, max_one_sided_slope(st.u, n, out.h));
    check_envelopes(tcur);
  };

  snapshot(0.0);
  record_window(0.0);
  for (double target : snaps) {
    while (t < target - 1e-12) {
      double dt = std::min(dt0, target - t);
      st.step(dt);
      t += dt;
      ++out.steps;
      // extremes move O(dt * max|u_t|) per step; a stride-8 scan is exact
      // to ~1e-4 at these time steps
      if (out.steps % 8 == 0 || t >= target - 1e-12) record_window(t);
      if (out.steps % 32 == 0) check_envelopes(t);
    }
    snapshot(t);
  }

  for (std::size_t i = 1; i < out.snap_t.size(); ++i) {
    double dtm = out.snap_t[i] - out.snap_t[i - 1];
    if (dtm <= 1e-12) continue;
    double d = 0.0;
    for (int k = 0; k < n; ++k)
      d = std::max(d, std::abs(out.snap_u[i][std::size_t(k)] -
                               out.snap_u[i - 1][std::size_t(k)]));
    out.time_modulus = std::max(out.time_modulus, d / dtm);
  }
  return out;
}

EvolutionResult solve_effective(const InitialDatum& u0, double T,
                                const EffectiveTable& table, int n, double cfl,
                                const std::vector<double>& snap_times,
                                double theta_hint) {
  if (table.dim != 1 || table.points.size() < 2)
    throw std::invalid_argument("effective solve needs a 1D table");
  if (cfl <= 0.0 || cfl > 1.0) throw std::invalid_argument("cfl in (0,1]");

  EvolutionResult out;
  out.n = n;
  out.h = 1.0 / n;

  std::vector<double> hv(table.points.size());
  for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = table.points[i].hbar_inf;
  const double p0 = table.points.front().P[0];
  const double dp = table.lattice.spacing;

  // viscosity: sigma_max * L from the caller when known, and never below
  // the table's own worst slope so the interpolant stays monotone
  double worst = 0.0;
  for (std::size_t i = 1; i < hv.size(); ++i)
    worst = std::max(worst, std::abs(hv[i] - hv[i - 1]) / dp);
  const double theta = std::max(worst, theta_hint);

  std::vector<double> u(std::size_t(n) + 2, 0.0), unew(std::size_t(n) + 2, 0.0);
  for (int i = 1; i <= n; ++i) u[std::size_t(i)] = u0((i - 1) * out.h);

  std::vector<double> snaps = snap_times;
  snaps.push_back(T);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              snaps.end());

  const double dt0 = cfl * out.h / (2.0 * theta);
  double t = 0.0;

  auto snapshot = [&](double tcur) {
    out.snap_t.push_back(tcur);
    out.snap_u.emplace_back(u.begin() + 1, u.begin() + 1 + n);
    out.max_slope = std::max(out.max_slope, max_one_sided_slope(u, n, out.h));
  };

  snapshot(0.0);
  for (double target : snaps) {
    while (t < target - 1e-12) {
      double dt = std::min(dt0, target - t);
      kernels::fill_ghost_1d(u.data(), n);
      bool oor = false;
      double pmin = 0.0, pmax = 0.0;
      kernels::lf_sweep_tab_1d(u.data(), unew.data(), n, out.h, dt, theta,
                               hv.data(), p0, dp, int(hv.size()), &oor, &pmin,
                               &pmax);
      if (oor)
        throw EffectiveSolveError(std::abs(pmin) > std::abs(pmax) ? pmin : pmax,
                                  "gradient left the effective table range");
      if (table.near_uncertain(pmin) || table.near_uncertain(pmax))
        throw EffectiveSolveError(pmax,
                                  "gradient entered an uncertain table cell");
      std::swap(u, unew);
      t += dt;
      ++out.steps;
    }
    snapshot(t);
  }

  for (std::size_t i = 1; i < out.snap_t.size(); ++i) {
    double dtm = out.snap_t[i] - out.snap_t[i - 1];
    if (dtm <= 1e-12) continue;
    double d = 0.0;
    for (int k = 0; k < n; ++k)
      d = std::max(d, std::abs(out.snap_u[i][std::size_t(k)] -
                               out.snap_u[i - 1][std::size_t(k)]));
    out.time_modulus = std::max(out.time_modulus, d / dtm);
  }
  return out;
}

SweepReport epsilon_sweep(const SupplyField& sigma, const KineticModel& m,
                          const InitialDatum& u0, double T,
                          const std::vector<double>& eps_list,
                          const SweepOptions& opt) {
  SweepReport rep;
  Hamiltonian H{sigma, m};
  rep.assumption_full_solvability = sufficient_condition_full_solvability(H);
  rep.budget = regularity_budget(sigma, m, u0.lipschitz());
  rep.assumption_lipschitz =
      m(u0.lipschitz()) < sigma.sigma_min() / sigma.sigma_max();

  if (!rep.assumption_full_solvability && !rep.assumption_lipschitz &&
      !opt.force) {
    rep.refused = true;
    rep.refusal =
        "neither homogenization assumption holds: the supply is not "
        "compactly heterogeneous and m(Lip[u0]) >= sigma_min/sigma_max";
    return rep;
  }

  // table must cover the gradient budget
  double need = rep.budget.finite ? rep.budget.k_space
                                  : std::max(1.0, 2.0 * u0.lipschitz());
  double radius = std::ceil(need / opt.table_spacing) * opt.table_spacing;
  LatticeSpec lat{radius, opt.table_spacing};
  rep.table = build_table(H, lat, opt.cell_grid, opt.ladder, opt.jobs);
  for (const auto& p : rep.table.points)
    if (p.verdict == Verdict::uncertain && std::abs(p.P[0]) <= need)
      rep.table_partial_in_range = true;

  std::vector<double> eps = eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<double>());
  int n_fine = int(std::lround(opt.cells_per_period / eps.back()));
  std::vector<double> snap{T / 2.0, T};

  EvolutionResult eff = solve_effective(u0, T, rep.table, n_fine, opt.cfl,
                                        snap, H.theta());

  int n_coarse = int(std::lround(opt.cells_per_period / eps.front()));
  for (double e : eps) {
    int n = int(std::lround(opt.cells_per_period / e));
    EvolutionProblem prob{sigma, m, u0, T, e};
    EvolutionResult r = solve_hje(prob, n, opt.cfl, snap);
    rep.max_slopes.push_back(r.max_slope);
    rep.time_moduli.push_back(r.time_modulus);

    // error on the common coarse nodes at T/2 and T
    double err = 0.0;
    for (std::size_t si = 0; si < r.snap_t.size(); ++si) {
      if (r.snap_t[si] < 1e-12) continue;
      // match snapshot times
      std::size_t se = 0;
      for (; se < eff.snap_t.size(); ++se)
        if (std::abs(eff.snap_t[se] - r.snap_t[si]) < 1e-9) break;
      if (se == eff.snap_t.size()) continue;
      if (n % n_coarse != 0 || n_fine % n_coarse != 0)
        throw std::invalid_argument(
            "epsilon list must give nested grids (powers of two)");
      int stride_r = n / n_coarse;
      int stride_e = n_fine / n_coarse;
      for (int k = 0; k < n_coarse; ++k) {
        double a = r.snap_u[si][std::size_t(k * stride_r)];
        double b = eff.snap_u[se][std::size_t(k * stride_e)];
        err = std::max(err, std::abs(a - b));
      }
    }
    rep.eps.push_back(e);
    rep.err.push_back(err);
  }

  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.err.size(); ++i)
    if (!(rep.err[i] < rep.err[i - 1])) rep.decreasing = false;
  if (!rep.err.empty() && rep.err.front() > 0.0)
    rep.ratio_last_first = rep.err.back() / rep.err.front();
  return rep;
}

GapReport non_homog_gap(const SupplyField& sigma, const KineticModel& m,
                        const InitialDatum& u0, double T,
                        const std::vector<double>& eps_list,
                        const ProbeWindow& window, int cells_per_period,
                        double cfl, int min_cells) {
  GapReport rep;
  if (sigma.sigma_max() * m.m0() <= sigma.sigma_min()) {
    rep.rejected = true;
    rep.reason = "needs sigma_max * m0 > sigma_min (scale the supply)";
    return rep;
  }
  if (eps_list.size() < 6) {
    rep.rejected = true;
    rep.reason = "needs at least 6 epsilon values";
    return rep;
  }
  if (window.t >= T) {
    rep.rejected = true;
    rep.reason = "probe time must lie before the final time";
    return rep;
  }

  rep.scales = window.scales;
  std::vector<double> up(window.scales.size(),
                         -std::numeric_limits<double>::infinity());
  std::vector<double> lo(window.scales.size(),
                         std::numeric_limits<double>::infinity());

  // The relaxed-limit extremes at scale delta are read off the computed
  // oscillation, which the scheme viscosity damps by roughly
  // exp(-nu k^2 t) with nu = theta h / 2 and k = 2 pi / eps. For each scale
  // the cheapest qualifying run is the largest eps <= delta; that run gets
  // enough cells to keep nu k^2 t of order one, the rest stay at the
  // baseline resolution.
  const double theta = sigma.sigma_max() * m.lipschitz();
  double max_scale_all = 0.0;
  for (double sc : window.scales) max_scale_all = std::max(max_scale_all, sc);
  const double t_end = std::min(T, window.t + max_scale_all);
  std::vector<double> resolved;
  for (double sc : window.scales) {
    double best = 0.0;
    for (double e : eps_list)
      if (e <= sc + 1e-12) best = std::max(best, e);
    if (best > 0.0) resolved.push_back(best);
  }
  const double kPi2 = 9.8696044010893586;
  for (double e : eps_list) {
    int n = std::max(min_cells, int(std::lround(cells_per_period / e)));
    for (double r : resolved)
      if (std::abs(r - e) < 1e-12) {
        // nu k^2 t <= 1.2 at this run
        double need = 2.0 * kPi2 * theta * t_end / (1.2 * e * e);
        n = std::max(n, int(std::lround(need)));
      }
    // keep n a multiple of 1/e so the sampled oscillation stays exact
    int k = int(std::lround(1.0 / e));
    n = ((n + k - 1) / k) * k;
    double max_scale = 0.0;
    for (double sc : window.scales) max_scale = std::max(max_scale, sc);
    EvolutionProblem prob{sigma, m, u0, std::min(T, window.t + max_scale), e};
    EvolutionResult r = solve_hje(prob, n, cfl, {window.t}, &window);
    rep.worst_envelope_violation =
        std::max(rep.worst_envelope_violation, r.envelope_violation);
    for (std::size_t s = 0; s < window.scales.size(); ++s) {
      if (!r.window_active[s]) continue;
      up[s] = std::max(up[s], r.window_max[s]);
      lo[s] = std::min(lo[s], r.window_min[s]);
    }
  }
  for (std::size_t s = 0; s < window.scales.size(); ++s) {
    rep.upper.push_back(up[s]);
    rep.lower.push_back(lo[s]);
    rep.gap.push_back(up[s] - lo[s]);
  }
  rep.gap_estimate = rep.gap.back(); // smallest scale
  rep.envelope_bound =
      (sigma.sigma_max() * m.m0() - sigma.sigma_min()) * window.t;
  return rep;
}

} // namespace facet
