#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace facet {

// Adaptive Simpson with kink-aware subdivision: the caller supplies interior
// breakpoints and each smooth piece is refined independently.

namespace detail {
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  // never demand accuracy below the rounding noise of the partial sums
  double floor_tol = 4.4e-16 * (std::abs(left) + std::abs(right));
  double tol_eff = std::max(tol, floor_tol);
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol_eff || lm <= a || rm >= b)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol_eff, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol_eff, depth - 1);
}
} // namespace detail

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int max_depth = 60) {
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Integrate over [a,b] splitting at the supplied breakpoints (clipped and
/// deduplicated); per-piece tolerance is proportional to piece length.
template <class F>
double integrate_piecewise(const F& f, double a, double b,
                           std::vector<double> breaks, double tol,
                           int max_depth = 60) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double prev = a;
  for (double x : breaks) {
    if (x <= prev + 1e-15 || x > b + 1e-15) continue;
    double piece = std::min(x, b);
    total += adaptive_simpson(f, prev, piece,
                              tol * std::max(piece - prev, 1e-3), max_depth);
    prev = piece;
  }
  if (prev < b - 1e-15)
    total += adaptive_simpson(f, prev, b, tol * std::max(b - prev, 1e-3),
                              max_depth);
  return total;
}

} // namespace facet
