#include "facet/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "facet/quadrature.hpp"

namespace facet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCap = 1e6; // partial-integral cap for divergence detection
}

OneDimProblem::OneDimProblem(SupplyField s, KineticModel k)
    : sigma(std::move(s)), m(std::move(k)) {
  if (sigma.dim() != 1)
    throw std::invalid_argument("one-dimensional theory needs dim 1 supply");
}

double OneDimProblem::f(double a, double x) const {
  // denominator sigma(x) - a built from the exact excess so the profile
  // stays smooth to rounding even when a approaches sigma_min
  double d = sigma.excess(x) + (sigma.sigma_min() - a);
  if (d <= 0.0) return kInf;
  switch (m.kind()) {
    case KineticModel::Kind::tanh_sat: {
      // m^{-1}(s) = (1/2) ln(s/(1-s)) with s/(1-s) = a/d
      double r = 0.5 * (std::log(a) - std::log(d));
      return r > 0.0 ? r : 0.0;
    }
    case KineticModel::Kind::rational: {
      double r = (a - d) / (2.0 * d);
      return r > 0.0 ? r : 0.0;
    }
    case KineticModel::Kind::sampled:
      return m.inverse(a / sigma(x));
  }
  return m.inverse(a / sigma(x));
}

namespace {

// Integral over [0,1] minus delta-balls around the minimizers.
double excised_integral(const OneDimProblem& p, double a, double delta,
                        double tol, bool* hit_inf) {
  auto mins = p.sigma.minimizers();
  std::vector<double> cuts{0.0, 1.0};
  for (double x : mins) {
    cuts.push_back(std::max(0.0, x - delta));
    cuts.push_back(std::min(1.0, x + delta));
    if (x - delta < 0.0) cuts.push_back(1.0 + (x - delta)); // wrap
    if (x + delta > 1.0) cuts.push_back(x + delta - 1.0);
  }
  std::sort(cuts.begin(), cuts.end());
  auto near_min = [&](double x) {
    for (double xm : mins) {
      double d = std::abs(x - xm);
      d = std::min(d, 1.0 - d);
      if (d < delta - 1e-15) return true;
    }
    return false;
  };
  auto breaks = p.sigma.breakpoints();
  double total = 0.0;
  *hit_inf = false;
  auto fn = [&](double x) {
    double v = p.f(a, x);
    if (!std::isfinite(v)) {
      *hit_inf = true;
      return 0.0;
    }
    return v;
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi - lo < 1e-15) continue;
    if (near_min(0.5 * (lo + hi))) continue;
    std::vector<double> bseg;
    for (double b : breaks)
      if (b > lo && b < hi) bseg.push_back(b);
    total += integrate_piecewise(fn, lo, hi, bseg, tol);
    if (*hit_inf || total > kCap) return total;
  }
  return total;
}

// Integral over the two rings delta_new <= |x - x*| <= delta_old around each
// minimizer (torus distance); equals I(delta_new) - I(delta_old).
double ring_integral(const OneDimProblem& p, double a, double delta_old,
                     double delta_new, double tol, bool* hit_inf) {
  *hit_inf = false;
  auto fn = [&](double x) {
    double v = p.f(a, x);
    if (!std::isfinite(v)) {
      *hit_inf = true;
      return 0.0;
    }
    return v;
  };
  double total = 0.0;
  for (double xm : p.sigma.minimizers()) {
    total += adaptive_simpson(fn, xm + delta_new, xm + delta_old, tol);
    total += adaptive_simpson(fn, xm - delta_old, xm - delta_new, tol);
    if (*hit_inf) return total;
  }
  return total;
}

} // namespace

IntegralResult integral_f(const OneDimProblem& p, double a, double tol) {
  const double lo_a = p.sigma_bar_m0();
  const double hi_a = p.sigma.sigma_min();
  if (a < lo_a - 1e-9 * std::max(1.0, lo_a) ||
      a > hi_a + 1e-9 * std::max(1.0, hi_a))
    throw std::invalid_argument("integral_f: a outside [sigma_max m0, sigma_min]");

  IntegralResult res;
  const bool at_top = a >= hi_a * (1.0 - 1e-12);

  if (!at_top) {
    // f_a is bounded: a/sigma <= a/sigma_min < 1 (presets saturate at 1).
    bool hit_inf = false;
    auto fn = [&](double x) {
      double v = p.f(a, x);
      if (!std::isfinite(v)) {
        hit_inf = true;
        return 0.0;
      }
      return v;
    };
    std::vector<double> breaks = p.sigma.breakpoints();
    if (hi_a - a < 1e-2 * hi_a) {
      // steep peak at each minimizer: pre-split geometrically so the
      // adaptive refinement stays local
      for (double xm : p.sigma.minimizers())
        for (int j = 2; j <= 14; ++j) {
          double d = std::pow(10.0, -j);
          for (double x : {xm - d, xm + d}) {
            double w = x - std::floor(x);
            if (w > 1e-15 && w < 1.0 - 1e-15) breaks.push_back(w);
          }
        }
    }
    res.value = integrate_piecewise(fn, 0.0, 1.0, breaks, tol);
    if (hit_inf || res.value > kCap) {
      // sampled kinetic tables saturate early; the profile is not integrable
      res.infinite = true;
      res.value = kInf;
    }
    return res;
  }

  // a = sigma_min: excise shrinking neighborhoods of the minimizers,
  // integrate outside, and extrapolate the tail over the levels.
  auto mins = p.sigma.minimizers();
  if (mins.empty()) { // flat minimum set (constant sigma): f == m^{-1}(1)
    res.infinite = true;
    res.value = kInf;
    return res;
  }
  // a coarse scan far from the minimizers catches positive-measure blowup
  for (int i = 0; i < 1024; ++i) {
    double x = (i + 0.5) / 1024.0;
    bool excluded = false;
    for (double xm : mins) {
      double d = std::abs(x - xm);
      d = std::min(d, 1.0 - d);
      if (d < 2e-2) excluded = true;
    }
    if (!excluded && !std::isfinite(p.f(a, x))) {
      res.infinite = true;
      res.value = kInf;
      return res;
    }
  }

  bool hit_inf = false;
  double val = excised_integral(p, a, 1e-2, std::min(tol * 0.125, 1e-9),
                                &hit_inf);
  res.levels = 1;
  if (hit_inf || val > kCap) {
    res.infinite = true;
    res.value = kInf;
    return res;
  }
  double prev_inc = 0.0;
  int bad_levels = 0;
  for (int k = 3; k <= 12; ++k) {
    // shrink the excision one decade and add the uncovered rings
    double d_old = std::pow(10.0, -(k - 1));
    double d_new = std::pow(10.0, -k);
    double inc = ring_integral(p, a, d_old, d_new,
                               std::min(tol * 0.0625, 1e-10), &hit_inf);
    val += inc;
    res.levels = k - 1;
    if (hit_inf || val > kCap) {
      res.infinite = true;
      res.value = kInf;
      return res;
    }
    if (k > 3) {
      // integrable endpoint singularities shrink the per-level increment;
      // divergence keeps it flat or growing
      if (inc >= 0.5 * prev_inc && inc > tol) ++bad_levels;
      else bad_levels = 0;
      if (bad_levels >= 3) {
        res.infinite = true;
        res.value = kInf;
        return res;
      }
      if (inc < 0.5 * tol && prev_inc >= inc) {
        double r = prev_inc > 0.0 ? std::clamp(inc / prev_inc, 0.0, 0.5) : 0.0;
        res.value = val + inc * r / (1.0 - r); // geometric tail estimate
        return res;
      }
    }
    prev_inc = inc;
  }
  res.value = val;
  return res;
}

SolvabilityInterval solvability_interval(const OneDimProblem& p, double tol) {
  SolvabilityInterval s;
  if (p.sigma_bar_m0() >= p.sigma.sigma_min() - 1e-12) {
    s.kind = SolvabilityInterval::Kind::empty;
    return s;
  }
  IntegralResult w = integral_f(p, p.sigma.sigma_min(), tol);
  if (w.infinite) {
    s.kind = SolvabilityInterval::Kind::whole_line;
    s.half_width = kInf;
  } else {
    s.kind = SolvabilityInterval::Kind::bounded;
    s.half_width = w.value;
  }
  return s;
}

double critical_value_1d(const OneDimProblem& p, double P, double tol) {
  const double a0 = p.sigma_bar_m0();
  const double smin = p.sigma.sigma_min();
  if (a0 >= smin - 1e-12)
    throw NotSolvableError(0.0, false, "cell problem unsolvable for every P");

  const double Pa = std::abs(P);
  IntegralResult i0 = integral_f(p, a0, 1e-9);
  if (Pa <= i0.value) return a0; // flat regime; boundary included here

  SolvabilityInterval D = solvability_interval(p, 1e-8);
  if (D.kind == SolvabilityInterval::Kind::bounded && Pa >= D.half_width)
    throw NotSolvableError(D.half_width, false,
                           "P outside the solvability interval");

  // I(a) increases in a; root of I(a) = |P| in (a0, smin)
  double lo = a0, hi = smin;
  double int_tol = 1e-7;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    if (hi - lo < 1e-6) int_tol = 1e-8;
    double mid = 0.5 * (lo + hi);
    IntegralResult im = integral_f(p, std::min(mid, smin * (1.0 - 1e-11)),
                                   int_tol);
    double val = im.infinite ? kCap : im.value;
    (val < Pa ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

// cumulative integral of f_a from `from` to `to` (to >= from), arguments on
// the real line with sigma periodic
template <class Prob>
double cumulative_f(const Prob& p, double a, double from, double to,
                    double tol) {
  if (to <= from) return 0.0;
  auto fn = [&](double x) {
    double v = p.f(a, x);
    return std::isfinite(v) ? v : kCap;
  };
  std::vector<double> breaks;
  for (double b : p.sigma.breakpoints()) {
    for (double base = std::floor(from); base <= std::ceil(to); base += 1.0) {
      double x = base + b;
      if (x > from && x < to) breaks.push_back(x);
    }
  }
  for (double base = std::floor(from); base <= std::ceil(to); base += 1.0)
    if (base > from && base < to) breaks.push_back(base);
  return integrate_piecewise(fn, from, to, breaks, tol);
}

} // namespace

Corrector1D corrector_1d(const OneDimProblem& p, double P, double tol,
                         int samples) {
  Corrector1D c;
  c.P = P;
  const double a0 = p.sigma_bar_m0();
  IntegralResult i0 = integral_f(p, a0, 1e-9);

  if (std::abs(P) <= i0.value) {
    // turning-point construction: x0 at a maximizer of sigma (f_{a0} = 0),
    // x1 balances the two slope branches
    c.large_p = false;
    c.c = a0;
    c.x0 = p.sigma.maximizer();
    double target = 0.5 * (i0.value + P);
    double lo = c.x0, hi = c.x0 + 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
      double mid = 0.5 * (lo + hi);
      double F = cumulative_f(p, a0, c.x0, mid, 1e-10);
      (F < target ? lo : hi) = mid;
    }
    c.x1 = 0.5 * (lo + hi);

    // u on the window [x0, x0+1): rising branch then falling branch
    c.xs.resize(std::size_t(samples) + 1);
    c.us.resize(std::size_t(samples) + 1);
    double prev_x = c.x0, acc = 0.0;
    std::vector<double> uwin(std::size_t(samples) + 1);
    for (int i = 0; i <= samples; ++i) {
      double x = c.x0 + double(i) / samples;
      acc += cumulative_f(p, a0, prev_x, x, 1e-10 / samples);
      prev_x = x;
      double u;
      if (x <= c.x1) {
        u = acc - P * x;
      } else {
        // integral from x to x0+1 = I0_total - acc
        u = (i0.value - acc) + P * (1.0 - x);
      }
      uwin[std::size_t(i)] = u;
    }
    c.periodicity_defect = std::abs(uwin.back() - uwin.front());
    // wrap window samples back to [0,1]
    for (int i = 0; i <= samples; ++i) {
      double x = c.x0 + double(i) / samples;
      double xf = x - std::floor(x);
      c.xs[std::size_t(i)] = xf;
      c.us[std::size_t(i)] = uwin[std::size_t(i)];
    }
  } else {
    c.large_p = true;
    c.c = critical_value_1d(p, P, tol);
    c.x0 = c.x1 = 0.0;
    double sgn = P >= 0 ? 1.0 : -1.0;
    c.xs.resize(std::size_t(samples) + 1);
    c.us.resize(std::size_t(samples) + 1);
    double prev_x = 0.0, acc = 0.0;
    for (int i = 0; i <= samples; ++i) {
      double x = double(i) / samples;
      acc += cumulative_f(p, c.c, prev_x, x, 1e-10 / samples);
      prev_x = x;
      c.xs[std::size_t(i)] = x;
      c.us[std::size_t(i)] = sgn * acc - P * x;
    }
    c.periodicity_defect = std::abs(c.us.back() - c.us.front());
  }
  return c;
}

double corrector_residual(const OneDimProblem& p, const Corrector1D& c) {
  double worst = 0.0;
  const std::size_t n = c.xs.size();
  if (n < 3) return 0.0;
  auto near_kink = [&](double x, double ds) {
    auto close = [&](double y) {
      double d = std::abs(x - (y - std::floor(y)));
      d = std::min(d, 1.0 - d);
      return d < 2.5 * ds;
    };
    if (close(c.x0) || close(c.x1)) return true;
    for (double b : p.sigma.breakpoints())
      if (close(b)) return true;
    return close(0.0);
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double ds = c.xs[i + 1] - c.xs[i - 1];
    if (ds <= 0.0) continue; // window wrap point
    double x = c.xs[i];
    if (near_kink(x, 0.5 * ds)) continue;
    double du = (c.us[i + 1] - c.us[i - 1]) / ds;
    double fx = p.f(c.c, x);
    if (!std::isfinite(fx)) continue;
    worst = std::max(worst, std::abs(std::abs(du + c.P) - fx));
  }
  return worst;
}

bool strict_monotonicity_check(const OneDimProblem& p, double P, double Q,
                               double tol) {
  IntegralResult i0 = integral_f(p, p.sigma_bar_m0(), 1e-9);
  if (!(std::abs(P) > std::abs(Q)))
    throw std::invalid_argument("need |P| > |Q|");
  if (!(std::abs(Q) >= i0.value))
    throw std::invalid_argument("need |Q| >= integral of f at sigma_max m0");
  double cp = critical_value_1d(p, P, tol); // throws when P outside D
  double cq = critical_value_1d(p, Q, tol);
  return cp > cq;
}

} // namespace facet
