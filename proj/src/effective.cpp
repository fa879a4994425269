#include "facet/effective.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace facet {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::in_d: return "in-D";
    case Verdict::not_in_d: return "not-in-D";
    case Verdict::uncertain: return "uncertain";
  }
  return "?";
}

double LadderOptions::class_threshold(double sigma_min) const {
  return std::max(5.0 * solve.tol, 1e-3 * sigma_min);
}

EffectivePoint effective_hamiltonian(const Hamiltonian& h,
                                     std::array<double, 2> P, GridSpec grid,
                                     const LadderOptions& opt) {
  const double smin = h.sigma.sigma_min();
  const double threshold = opt.class_threshold(smin);
  const double pn = std::hypot(P[0], P[1]);
  const Regime regime = check_regime(h);

  EffectivePoint pt;
  pt.P = P;

  if (opt.n0 < 1 || opt.n_max < 2 * opt.n0)
    throw std::invalid_argument("ladder needs n0 >= 1 and n_max >= 2*n0");

  Field warm;
  bool have_warm = false;
  double hbar_prev = 0.0;
  bool have_prev = false;
  bool grew_every_rung = true;
  bool success = false;
  CellSolution last;

  for (int n = opt.n0; n <= opt.n_max; n *= 2) {
    CellSolution cs =
        solve_cell(h, P, n, grid, opt.schedule, opt.solve, opt.sandwich_slack,
                   have_warm ? &warm : nullptr, opt.richardson);
    pt.ladder.emplace_back(n, cs.hbar_n);
    pt.total_sweeps += cs.total_sweeps;

    bool captured = cs.grad_bound + pn <= cs.alpha_n;
    bool stabilized = have_prev && std::abs(cs.hbar_n - hbar_prev) < opt.stab_tol;
    grew_every_rung = grew_every_rung && !captured;

    warm = cs.u;
    have_warm = true;
    hbar_prev = cs.hbar_n;
    have_prev = true;
    last = std::move(cs);

    if (captured && stabilized) {
      success = true;
      pt.n_star = n;
      break;
    }
  }

  pt.hbar_inf = last.hbar_n;
  pt.grad_bound = last.grad_bound;
  pt.alpha_n_star = last.alpha_n;
  pt.residual = last.residual;
  pt.margin = smin - pt.hbar_inf;

  if (success) {
    if (pt.margin > threshold) pt.verdict = Verdict::in_d;
    else if (pt.margin < -threshold) pt.verdict = Verdict::not_in_d;
    else pt.verdict = Verdict::uncertain;
  } else {
    pt.ladder_exhausted = true;
    pt.n_star = last.n;
    // no computable certificate of non-solvability: declare not-in-D only
    // with the gradient growing past every cap and the value pinned at or
    // above sigma_min
    if (grew_every_rung && pt.hbar_inf >= smin - threshold)
      pt.verdict = Verdict::not_in_d;
    else
      pt.verdict = Verdict::uncertain;
  }

  if (regime == Regime::empty_d) pt.verdict = Verdict::not_in_d;
  return pt;
}

static std::vector<std::array<double, 2>> lattice_points(int dim,
                                                         LatticeSpec lat) {
  std::vector<std::array<double, 2>> pts;
  int k = int(std::floor(lat.radius / lat.spacing + 1e-9));
  if (dim == 1) {
    for (int i = -k; i <= k; ++i) pts.push_back({i * lat.spacing, 0.0});
  } else {
    for (int j = -k; j <= k; ++j)
      for (int i = -k; i <= k; ++i) {
        double px = i * lat.spacing, py = j * lat.spacing;
        if (std::hypot(px, py) <= lat.radius + 1e-12) pts.push_back({px, py});
      }
  }
  return pts;
}

EffectiveTable build_table(const Hamiltonian& h, LatticeSpec lattice,
                           GridSpec grid, const LadderOptions& opt, int jobs) {
  EffectiveTable t;
  t.dim = h.dim();
  t.lattice = lattice;
  auto pts = lattice_points(t.dim, lattice);
  t.points.resize(pts.size());

  jobs = std::max(1, jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= pts.size()) return;
      t.points[i] = effective_hamiltonian(h, pts[i], grid, opt);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& p : t.points)
    if (p.verdict == Verdict::uncertain) t.partial = true;
  return t;
}

double EffectiveTable::value_at(double p) const {
  if (dim != 1) throw std::logic_error("value_at is for 1D tables");
  const double s = lattice.spacing;
  const double lo = points.front().P[0];
  const double hi = points.back().P[0];
  if (p < lo - 1e-12 || p > hi + 1e-12)
    throw std::out_of_range("p outside effective table range");
  double t = (std::clamp(p, lo, hi) - lo) / s;
  std::size_t k = std::min(std::size_t(t), points.size() - 2);
  double w = t - double(k);
  return points[k].hbar_inf + w * (points[k + 1].hbar_inf - points[k].hbar_inf);
}

bool EffectiveTable::near_uncertain(double p) const {
  const double s = lattice.spacing;
  const double lo = points.front().P[0];
  double t = (p - lo) / s;
  long k = long(std::floor(t));
  for (long q = k; q <= k + 1; ++q) {
    if (q < 0 || std::size_t(q) >= points.size()) continue;
    if (points[std::size_t(q)].verdict == Verdict::uncertain) return true;
  }
  return false;
}

const EffectivePoint* EffectiveTable::find(double p) const {
  for (const auto& q : points)
    if (std::abs(q.P[0] - p) < 1e-9 && std::abs(q.P[1]) < 1e-9) return &q;
  return nullptr;
}

double ball_in_d(const Hamiltonian& h) {
  double num = h.sigma.sigma_min() - h.sigma.sigma_max() * h.m.m0();
  if (num <= 0.0) return 0.0;
  return num / (h.sigma.sigma_max() * h.m.lipschitz());
}

bool sufficient_condition_full_solvability(const Hamiltonian& h, int scan_n) {
  const SupplyField& sig = h.sigma;
  if (sig.sigma_max() * h.m.m0() >= sig.sigma_min()) return false;

  double flat_tol;
  if (sig.is_preset()) {
    flat_tol = 1e-9 * sig.sigma_min();
  } else {
    // one grid cell of resolution: the largest sample-to-sample move
    flat_tol = 0.0;
    int n = sig.sample_count();
    const auto& v = sig.samples();
    for (std::size_t i = 0; i < v.size(); ++i)
      flat_tol = std::max(flat_tol, std::abs(v[(i + 1) % v.size()] - v[i]));
    (void)n;
  }

  const double cell = 1.0 / scan_n;
  const double smin = sig.sigma_min();
  if (h.dim() == 1) {
    for (int i = 0; i <= scan_n; ++i) {
      double x = double(i) / scan_n;
      if (sig(x) > smin + flat_tol) {
        if (x <= cell || x >= 1.0 - cell) return false;
      }
    }
    return true;
  }
  int n2 = std::min(scan_n, 512);
  double cell2 = 1.0 / n2;
  for (int j = 0; j <= n2; ++j)
    for (int i = 0; i <= n2; ++i) {
      double x = double(i) / n2, y = double(j) / n2;
      if (sig(x, y) > smin + flat_tol) {
        if (x <= cell2 || x >= 1.0 - cell2 || y <= cell2 || y >= 1.0 - cell2)
          return false;
      }
    }
  return true;
}

void write_table_csv(const EffectiveTable& t, std::ostream& os) {
  if (t.dim == 1) os << "P_1,hbar_inf,n_star,verdict,margin,grad_bound\n";
  else os << "P_1,P_2,hbar_inf,n_star,verdict,margin,grad_bound\n";
  char buf[256];
  for (const auto& p : t.points) {
    if (t.dim == 1) {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%d,%s,%.12g,%.12g\n",
                    p.P[0], p.hbar_inf, p.n_star, verdict_name(p.verdict),
                    p.margin, p.grad_bound);
    } else {
      std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%d,%s,%.12g,%.12g\n",
                    p.P[0], p.P[1], p.hbar_inf, p.n_star,
                    verdict_name(p.verdict), p.margin, p.grad_bound);
    }
    os << buf;
  }
}

std::vector<InvariantReport> check_table_invariants(const EffectiveTable& t,
                                                    const Hamiltonian& h,
                                                    double tol) {
  std::vector<InvariantReport> out;
  const double smin = h.sigma.sigma_min();
  const double smax = h.sigma.sigma_max();
  const double lipP = smax * h.m.lipschitz();

  auto norm = [](const std::array<double, 2>& p) {
    return std::hypot(p[0], p[1]);
  };

  { // symmetry under P -> -P
    InvariantReport r{"symmetry", true, 0.0, {}};
    for (const auto& a : t.points)
      for (const auto& b : t.points) {
        if (std::abs(a.P[0] + b.P[0]) < 1e-12 &&
            std::abs(a.P[1] + b.P[1]) < 1e-12) {
          double d = std::abs(a.hbar_inf - b.hbar_inf) - 2.0 * tol;
          r.slack = std::max(r.slack, d);
        }
      }
    r.ok = r.slack <= 0.0;
    out.push_back(r);
  }
  if (t.dim == 1) { // discrete Lipschitz slope between adjacent points
    InvariantReport r{"lipschitz", true, 0.0, {}};
    for (std::size_t i = 1; i < t.points.size(); ++i) {
      double slope = std::abs(t.points[i].hbar_inf - t.points[i - 1].hbar_inf) /
                     t.lattice.spacing;
      r.slack = std::max(r.slack, slope - (lipP + tol / t.lattice.spacing));
    }
    r.ok = r.slack <= 0.0;
    out.push_back(r);
  }
  { // sandwich bounds at every point
    InvariantReport r{"sandwich", true, 0.0, {}};
    for (const auto& p : t.points) {
      double mn = std::max(smin * h.m(norm(p.P)), smax * h.m.m0());
      double mx = smax * h.m(norm(p.P));
      r.slack = std::max(r.slack, mn - tol - p.hbar_inf);
      r.slack = std::max(r.slack, p.hbar_inf - (mx + tol));
    }
    r.ok = r.slack <= 0.0;
    out.push_back(r);
  }
  { // ray monotonicity for lattice-aligned k in {2,3}
    InvariantReport r{"ray-monotonicity", true, 0.0, {}};
    for (const auto& a : t.points)
      for (int k : {2, 3}) {
        std::array<double, 2> q{a.P[0] * k, a.P[1] * k};
        for (const auto& b : t.points)
          if (std::abs(b.P[0] - q[0]) < 1e-12 && std::abs(b.P[1] - q[1]) < 1e-12)
            r.slack = std::max(r.slack, a.hbar_inf - b.hbar_inf - 2.0 * tol);
      }
    r.ok = r.slack <= 0.0;
    out.push_back(r);
  }
  { // ladder values non-increasing within 2 tol
    InvariantReport r{"ladder-monotone", true, 0.0, {}};
    for (const auto& p : t.points)
      for (std::size_t i = 1; i < p.ladder.size(); ++i)
        r.slack = std::max(r.slack,
                           p.ladder[i].second - p.ladder[i - 1].second - 2.0 * tol);
    r.ok = r.slack <= 0.0;
    out.push_back(r);
  }
  return out;
}

} // namespace facet
