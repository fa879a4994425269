#include "facet/cell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace facet {

using kernels::SweepParams;
using kernels::SweepStats;

double CellDiscretization::pnorm() const { return std::hypot(P[0], P[1]); }

CellDiscretization discretize(const Hamiltonian& h, std::array<double, 2> P,
                              GridSpec grid, const Approximant* apx) {
  grid.validate();
  if (grid.dim != h.dim())
    throw std::invalid_argument("grid and supply dimension mismatch");
  CellDiscretization d;
  d.grid = grid;
  d.sig = Field(grid);
  d.theta = h.theta();
  d.P = P;
  const int n = grid.n;
  const double hh = grid.h();
  if (grid.dim == 1) {
    for (int i = 1; i <= n; ++i) d.sig.at1(i) = h.sigma((i - 1) * hh);
    kernels::fill_ghost_1d(d.sig.a.data(), n);
  } else {
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i)
        d.sig.at2(i, j) = h.sigma((i - 1) * hh, (j - 1) * hh);
    kernels::fill_ghost_2d(d.sig.a.data(), n);
  }
  kernels::KineticSpec ms;
  switch (h.m.kind()) {
    case KineticModel::Kind::rational:
      ms.kind = kernels::KineticSpec::Kind::rational;
      break;
    case KineticModel::Kind::tanh_sat:
      ms.kind = kernels::KineticSpec::Kind::tanh_sat;
      break;
    case KineticModel::Kind::sampled:
      ms.kind = kernels::KineticSpec::Kind::sampled;
      ms.tab_r = h.m.sample_r().data();
      ms.tab_m = h.m.sample_m().data();
      ms.tab_len = int(h.m.sample_r().size());
      break;
  }
  ms.L = h.m.lipschitz();
  if (apx) {
    ms.capped = true;
    ms.cap_n = double(apx->n);
  }
  d.mspec = ms;
  return d;
}

SolveOptions default_solve_options(int dim) {
  SolveOptions o;
  o.tol = dim == 1 ? 1e-8 : 1e-6;
  return o;
}

namespace {

SweepStats run_sweep(const CellDiscretization& d, Field& u, Field& unew,
                     const SweepParams& sp) {
  if (d.grid.dim == 1) {
    kernels::fill_ghost_1d(u.a.data(), d.grid.n);
    return kernels::lf_sweep_1d(u.a.data(), unew.a.data(), d.sig.a.data(),
                                d.grid.n, sp);
  }
  kernels::fill_ghost_2d(u.a.data(), d.grid.n);
  return kernels::lf_sweep_2d(u.a.data(), unew.a.data(), d.sig.a.data(),
                              d.grid.n, sp);
}

void shift_interior(Field& f, double s) {
  int n = f.grid.n;
  if (f.grid.dim == 1) {
    for (int i = 1; i <= n; ++i) f.at1(i) += s;
  } else {
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i) f.at2(i, j) += s;
  }
}

} // namespace

DiscountedSolution solve_discounted(const CellDiscretization& d, double delta,
                                    const SolveOptions& opt,
                                    const Field* warm_start) {
  if (delta <= 0.0) throw std::invalid_argument("discount must be positive");
  if (opt.tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
  const int n = d.grid.n;
  const int N = d.grid.dim;
  const double h = d.grid.h();
  const double dt =
      opt.cfl_safety * h / (2.0 * d.theta * double(N) + delta * h);
  const double inv_nodes = 1.0 / double(d.grid.nodes());

  DiscountedSolution out;
  out.delta = delta;
  Field u = warm_start ? *warm_start : Field(d.grid);
  if (warm_start && warm_start->grid.n != n)
    throw std::invalid_argument("warm start grid mismatch");
  Field unew(d.grid);

  SweepParams sp;
  sp.h = h;
  sp.dt = dt;
  sp.delta = delta;
  sp.theta = d.theta;
  sp.Px = d.P[0];
  sp.Py = d.P[1];
  sp.m = d.mspec;

  double rate = std::numeric_limits<double>::infinity();
  long sweeps = 0;
  while (sweeps < opt.max_sweeps) {
    SweepStats st = run_sweep(d, u, unew, sp);
    ++sweeps;
    // slave the grid mean to its equilibrium for the current shape
    double target = -(st.sum_h * inv_nodes) / delta;
    double shift = target - st.sum_unew * inv_nodes;
    shift_interior(unew, shift);
    std::swap(u.a, unew.a);
    rate = std::max(std::abs(st.min_du + shift), std::abs(st.max_du + shift)) / dt;
    if (rate < opt.tol) break;
  }
  out.sweeps = sweeps;
  out.update_rate = rate;
  out.converged = rate < opt.tol;

  // final diagnostics on the settled iterate
  SweepStats st = run_sweep(d, u, unew, sp);
  auto [hbar, spread] = extract_critical(u, delta);
  out.hbar = hbar;
  out.spread = spread;
  out.residual =
      std::max(st.max_h - hbar, hbar - st.min_h);
  out.u = std::move(u);
  return out;
}

std::pair<double, double> extract_critical(const Field& u, double delta) {
  double mean = field_mean(u);
  double mn = field_min(u), mx = field_max(u);
  return {-delta * mean, delta * (mx - mn)};
}

double gradient_bound(const Field& u, std::array<double, 2> P) {
  const int n = u.grid.n;
  const double inv_h = double(n);
  double g = 0.0;
  if (u.grid.dim == 1) {
    for (int i = 1; i <= n; ++i) {
      double right = (u.at1(i == n ? 1 : i + 1) - u.at1(i)) * inv_h + P[0];
      g = std::max(g, std::abs(right));
    }
  } else {
    for (int j = 1; j <= n; ++j)
      for (int i = 1; i <= n; ++i) {
        double dx = (u.at2(i == n ? 1 : i + 1, j) - u.at2(i, j)) * inv_h + P[0];
        double dy = (u.at2(i, j == n ? 1 : j + 1) - u.at2(i, j)) * inv_h + P[1];
        g = std::max(g, std::hypot(dx, dy));
      }
  }
  return g;
}

CellSolution solve_cell(const Hamiltonian& h, std::array<double, 2> P, int n,
                        GridSpec grid, const DeltaSchedule& sched,
                        const SolveOptions& opt, double sandwich_slack,
                        const Field* warm_start, bool richardson) {
  if (sched.deltas.empty())
    throw std::invalid_argument("delta schedule is empty");
  for (std::size_t i = 1; i < sched.deltas.size(); ++i)
    if (!(sched.deltas[i] < sched.deltas[i - 1]))
      throw std::invalid_argument("delta schedule must strictly decrease");

  Approximant apx = make_approximant(h.m, n);
  CellDiscretization d = discretize(h, P, grid, &apx);

  CellSolution cs;
  cs.n = n;
  cs.alpha_n = apx.alpha_n;

  DiscountedSolution sol;
  const Field* start = warm_start;
  double hbar_prev = 0.0;
  for (std::size_t k = 0; k < sched.deltas.size(); ++k) {
    hbar_prev = k > 0 ? sol.hbar : 0.0;
    sol = solve_discounted(d, sched.deltas[k], opt, start);
    cs.total_sweeps += sol.sweeps;
    cs.converged = cs.converged && sol.converged;
    start = &sol.u;
  }
  cs.hbar_n = sol.hbar;
  if (richardson && sched.deltas.size() >= 2) {
    // two-point extrapolation assuming an O(delta) discount bias
    double d1 = sched.deltas[sched.deltas.size() - 2];
    double d2 = sched.deltas.back();
    cs.hbar_n = (hbar_prev * d2 - sol.hbar * d1) / (d2 - d1);
  }
  cs.delta_used = sched.deltas.back();
  cs.spread = sol.spread;
  cs.residual = sol.residual;

  cs.u = std::move(sol.u);
  double umin = field_min(cs.u);
  shift_interior(cs.u, -umin);
  cs.grad_bound = gradient_bound(cs.u, P);

  double pn = std::hypot(P[0], P[1]);
  cs.sandwich_lo = h.sigma.sigma_min() * apx(pn);
  cs.sandwich_hi = h.sigma.sigma_max() * apx(pn);
  cs.sandwich_ok = cs.hbar_n >= cs.sandwich_lo - sandwich_slack &&
                   cs.hbar_n <= cs.sandwich_hi + sandwich_slack;
  return cs;
}

} // namespace facet
