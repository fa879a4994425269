// Acceptance suite: one line per criterion, [PASS]/[FAIL] plus measured
// values and wall time. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "facet/effective.hpp"
#include "facet/homog.hpp"
#include "facet/kernels.hpp"
#include "facet/onedim.hpp"

using namespace facet;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int id, const std::string& label, bool pass, double seconds,
            const std::string& detail) {
  std::printf("[%s] A%02d %-34s (%.1fs) %s\n", pass ? "PASS" : "FAIL", id,
              label.c_str(), seconds, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

Hamiltonian tri_tanh() {
  return {SupplyField::triangular(1.5, 2.5), KineticModel::tanh_sat()};
}

LadderOptions ladder_1d() {
  LadderOptions o;
  o.solve = default_solve_options(1);
  return o;
}

const double kExpectedW = 1.0 + 0.5 * std::log(6.0); // 1.8958797...

std::string fmt(double v) {
  char b[64];
  std::snprintf(b, sizeof b, "%.8g", v);
  return b;
}

void criterion_1_exact_endpoint() {
  Timer t;
  OneDimProblem p(SupplyField::triangular(1.5, 2.5), KineticModel::tanh_sat());
  IntegralResult r = integral_f(p, 1.5, 1e-8);
  double err = std::abs(r.value - kExpectedW);
  bool pass = !r.infinite && err <= 1e-6 && t.s() < 1.0;
  report(1, "exact endpoint integral", pass, t.s(),
         "value=" + fmt(r.value) + " expected=" + fmt(kExpectedW) +
             " |err|=" + fmt(err));
  if (!pass)
    std::printf("       note: independent quadrature and the closed form "
                "(1+ln 1.5)/2 = %.12g agree for this profile; the expected "
                "constant is not attained by any tent with range [1.5,2.5]\n",
                (1.0 + std::log(1.5)) / 2.0);
}

void criterion_2_divergence() {
  Timer t;
  OneDimProblem p(SupplyField::triangular(1.5, 2.5), KineticModel::rational());
  IntegralResult r = integral_f(p, 1.5, 1e-8);
  SolvabilityInterval D = solvability_interval(p);
  bool pass = r.infinite &&
              D.kind == SolvabilityInterval::Kind::whole_line && t.s() < 1.0;
  report(2, "divergence detection (D = R)", pass, t.s(),
         std::string("infinite=") + (r.infinite ? "yes" : "no"));
}

void criterion_3_zero_momentum() {
  Hamiltonian h = tri_tanh();
  LadderOptions opt = ladder_1d();
  Timer t256;
  EffectivePoint p256 =
      effective_hamiltonian(h, {0.0, 0.0}, GridSpec{1, 256}, opt);
  double s256 = t256.s();
  Timer t1024;
  EffectivePoint p1024 =
      effective_hamiltonian(h, {0.0, 0.0}, GridSpec{1, 1024}, opt);
  double s1024 = t1024.s();
  double e256 = std::abs(p256.hbar_inf - 1.25);
  double e1024 = std::abs(p1024.hbar_inf - 1.25);
  bool pass = e256 <= 2e-2 && e1024 <= 5e-3 && s256 < 30.0 && s1024 < 30.0;
  report(3, "value at P=0 is sigma_max*m0", pass, s256 + s1024,
         "err256=" + fmt(e256) + " err1024=" + fmt(e1024));
}

void criterion_4_oracle_cross_validation() {
  Timer t;
  Hamiltonian h = tri_tanh();
  OneDimProblem oracle(h.sigma, h.m);
  LadderOptions opt = ladder_1d();
  const std::vector<double> ps{0.25, 0.5, 1.0, 1.5};
  bool pass = true;
  std::string detail;
  for (double pv : ps) {
    EffectivePoint ep =
        effective_hamiltonian(h, {pv, 0.0}, GridSpec{1, 256}, opt);
    double cv = 0.0;
    bool solvable = true;
    try {
      cv = critical_value_1d(oracle, pv);
    } catch (const NotSolvableError& e) {
      solvable = false;
      detail += "P=" + fmt(pv) + ":outside-D(W=" + fmt(e.half_width) + ") ";
    }
    if (!solvable) {
      pass = false;
      continue;
    }
    double rel = std::abs(ep.hbar_inf - cv) / 1.5;
    if (rel > 2e-2) pass = false;
    // self-convergence: the doubled grid may not be farther from the oracle
    EffectivePoint ep2 =
        effective_hamiltonian(h, {pv, 0.0}, GridSpec{1, 512}, opt);
    double rel2 = std::abs(ep2.hbar_inf - cv) / 1.5;
    if (rel2 > rel + 1e-4) pass = false;
    detail += "P=" + fmt(pv) + ":rel=" + fmt(rel) + "->" + fmt(rel2) + " ";
  }
  if (t.s() >= 180.0) pass = false;
  report(4, "oracle cross-validation", pass, t.s(), detail);
  if (!pass)
    std::printf("       note: the solvability half-width of this instance is "
                "%.9g, so P in {1.0, 1.5} has no finite-P corrector to "
                "compare against\n",
                solvability_interval(oracle).half_width);
}

void criterion_5_classification() {
  Timer t;
  Hamiltonian h = tri_tanh();
  LadderOptions opt = ladder_1d();
  opt.n_max = 32;
  GridSpec g{1, 256};
  int wrong = 0, checked = 0;
  std::string detail;
  for (int k = 1; k <= 20; ++k) {
    for (double sgn : {1.0, -1.0}) {
      double pv = sgn * 0.2 * k;
      ++checked;
      EffectivePoint ep = effective_hamiltonian(h, {pv, 0.0}, g, opt);
      double a = std::abs(pv);
      if (a <= 0.9 * kExpectedW && ep.verdict != Verdict::in_d) ++wrong;
      if (a >= 1.1 * kExpectedW && ep.verdict == Verdict::in_d) ++wrong;
    }
  }
  bool pass = wrong == 0;
  report(5, "solvability classification", pass, t.s(),
         "lattice=" + std::to_string(checked) +
             " misclassified=" + std::to_string(wrong) +
             " (boundary taken at W=" + fmt(kExpectedW) + ")");
  if (!pass)
    std::printf("       note: the interval half-width computed for this "
                "instance is %.9g; verdicts follow the computed boundary\n",
                0.702732554054082191);
}

void criterion_6_table_properties() {
  Timer t;
  Hamiltonian h = tri_tanh();
  LadderOptions opt = ladder_1d();
  opt.n_max = 32;
  const double tol = 1e-2;
  EffectiveTable tab =
      build_table(h, {1.5, 0.1}, GridSpec{1, 256}, opt, 2);
  bool sym = true, lip = true, sand = true, ladder_mono = true;
  for (const auto& a : tab.points) {
    const EffectivePoint* b = tab.find(-a.P[0]);
    if (b && std::abs(a.hbar_inf - b->hbar_inf) > 2.0 * tol) sym = false;
    double mn = std::max(1.5 * h.m(std::abs(a.P[0])), 1.25);
    double mx = 2.5 * h.m(std::abs(a.P[0]));
    if (a.hbar_inf < mn - tol || a.hbar_inf > mx + tol) sand = false;
    for (std::size_t i = 1; i < a.ladder.size(); ++i)
      if (a.ladder[i].second > a.ladder[i - 1].second + 2.0 * tol)
        ladder_mono = false;
  }
  for (std::size_t i = 1; i < tab.points.size(); ++i) {
    double slope =
        std::abs(tab.points[i].hbar_inf - tab.points[i - 1].hbar_inf) / 0.1;
    if (slope > 1.25 + tol / 0.1) lip = false;
  }
  bool pass = sym && lip && sand && ladder_mono;
  report(6, "effective table property suite", pass, t.s(),
         std::string("symmetry=") + (sym ? "ok" : "BAD") +
             " lipschitz=" + (lip ? "ok" : "BAD") +
             " sandwich=" + (sand ? "ok" : "BAD") +
             " ladder=" + (ladder_mono ? "ok" : "BAD"));
}

void criterion_7_guaranteed_ball() {
  Timer t;
  Hamiltonian h = tri_tanh();
  double radius = ball_in_d(h); // 0.2 for this instance
  LadderOptions opt = ladder_1d();
  bool pass = std::abs(radius - 0.2) <= 1e-12;
  for (double pv : {-0.19, -0.1, 0.05, 0.125, 0.19}) {
    if (std::abs(pv) >= radius) continue;
    EffectivePoint ep =
        effective_hamiltonian(h, {pv, 0.0}, GridSpec{1, 256}, opt);
    if (ep.verdict != Verdict::in_d) pass = false;
  }
  report(7, "guaranteed ball classified in-D", pass, t.s(),
         "radius=" + fmt(radius));
}

SweepReport g_sweep; // reused by criterion 10

void criterion_8_homogenization_sweep() {
  Timer t;
  SweepOptions opt;
  opt.cells_per_period = 32;
  opt.cfl = 0.9;
  opt.cell_grid = GridSpec{1, 256};
  opt.ladder = ladder_1d();
  opt.ladder.n_max = 32;
  opt.table_spacing = 0.1;
  opt.jobs = 2;
  InitialDatum u0{InitialDatum::Kind::sine, 0.03}; // m(Lip) = 0.593 < 0.6
  g_sweep = epsilon_sweep(SupplyField::triangular(1.5, 2.5),
                          KineticModel::tanh_sat(), u0, 0.5,
                          {0.25, 0.125, 0.0625, 0.03125}, opt);
  bool pass = !g_sweep.refused && g_sweep.decreasing &&
              g_sweep.ratio_last_first <= 0.5 && t.s() < 600.0;
  std::string detail = "e=";
  for (double e : g_sweep.err) detail += fmt(e) + " ";
  detail += "ratio=" + fmt(g_sweep.ratio_last_first);
  report(8, "homogenization sweep", pass, t.s(), detail);
}

void criterion_9_non_homogenization() {
  Timer t;
  InitialDatum u0{InitialDatum::Kind::sine, 0.1};
  ProbeWindow w;
  w.x = 0.5;
  w.t = 1.0;
  w.scales = {0.1, 0.05, 0.025};
  GapReport g = non_homog_gap(
      SupplyField::triangular(1.5, 4.5), KineticModel::tanh_sat(), u0, 1.2,
      {0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125}, w, 32, 0.9, 2048);
  bool pass = !g.rejected && g.worst_envelope_violation <= 5e-3 &&
              g.gap_estimate >= 0.5 * g.envelope_bound && t.s() < 600.0;
  report(9, "non-homogenization gap", pass, t.s(),
         "gap=" + fmt(g.gap_estimate) + " bound=" + fmt(g.envelope_bound) +
             " env_viol=" + fmt(g.worst_envelope_violation));
}

void criterion_10_regularity_budget() {
  Timer t;
  InitialDatum u0{InitialDatum::Kind::sine, 0.03};
  RegularityBudget b = regularity_budget(SupplyField::triangular(1.5, 2.5),
                                         KineticModel::tanh_sat(),
                                         u0.lipschitz());
  bool pass = b.finite && !g_sweep.refused && !g_sweep.eps.empty();
  double worst_mod = 0.0, worst_slope = 0.0;
  for (double v : g_sweep.time_moduli) worst_mod = std::max(worst_mod, v);
  for (double v : g_sweep.max_slopes) worst_slope = std::max(worst_slope, v);
  if (worst_mod > b.l_time + 5e-2) pass = false;
  if (worst_slope > b.k_space + 5e-2) pass = false;
  report(10, "regularity budget", pass, t.s(),
         "modulus=" + fmt(worst_mod) + "<=L+" + fmt(b.l_time) +
             " slope=" + fmt(worst_slope) + "<=K=" + fmt(b.k_space));
}

void criterion_11_monotone_scheme() {
  Timer t;
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> ud(-1.0, 1.0), bump(0.01, 0.4);
  std::uniform_int_distribution<int> node(1, 64);
  bool pass = true;
  for (auto kind : {kernels::KineticSpec::Kind::tanh_sat,
                    kernels::KineticSpec::Kind::rational})
    for (bool capped : {false, true})
      for (double delta : {0.0, 1e-2}) {
        kernels::SweepParams p;
        p.h = 1.0 / 64;
        p.theta = 1.25;
        p.delta = delta;
        p.dt = p.h / (2.0 * p.theta + delta * p.h);
        p.Px = 0.3;
        p.m.kind = kind;
        p.m.L = 0.5;
        p.m.capped = capped;
        p.m.cap_n = 2.0;
        for (int trial = 0; trial < 100; ++trial) {
          std::vector<double> u(66), v(66), sig(66, 2.0), ou(66), ov(66);
          for (int i = 1; i <= 64; ++i) u[std::size_t(i)] = ud(rng);
          v = u;
          v[std::size_t(node(rng))] += bump(rng);
          kernels::fill_ghost_1d(u.data(), 64);
          kernels::fill_ghost_1d(v.data(), 64);
          kernels::lf_sweep_1d(u.data(), ou.data(), sig.data(), 64, p);
          kernels::lf_sweep_1d(v.data(), ov.data(), sig.data(), 64, p);
          for (int i = 1; i <= 64; ++i)
            if (ov[std::size_t(i)] < ou[std::size_t(i)] - 1e-13) pass = false;
        }
      }
  report(11, "monotone scheme perturbation", pass, t.s(),
         "100 trials per configuration");
}

} // namespace

int main() {
  std::printf("acceptance suite (kernel backend: %s)\n",
              kernels::backend_name(kernels::active_backend()));
  criterion_1_exact_endpoint();
  criterion_2_divergence();
  criterion_3_zero_momentum();
  criterion_4_oracle_cross_validation();
  criterion_5_classification();
  criterion_6_table_properties();
  criterion_7_guaranteed_ball();
  criterion_8_homogenization_sweep();
  criterion_9_non_homogenization();
  criterion_10_regularity_budget();
  criterion_11_monotone_scheme();
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures;
}
