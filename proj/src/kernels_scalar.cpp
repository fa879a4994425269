#include <algorithm>
#include <cmath>
#include <limits>

#include "facet/kernels.hpp"

namespace facet::kernels {

double kinetic_eval(const KineticSpec& m, double r) {
  if (r < 0.0) r = -r;
  double v = 0.0;
  switch (m.kind) {
    case KineticSpec::Kind::rational:
      v = 0.5 * r / (1.0 + r) + 0.5;
      break;
    case KineticSpec::Kind::tanh_sat:
      v = 0.5 * std::tanh(r) + 0.5;
      break;
    case KineticSpec::Kind::sampled: {
      if (r >= m.tab_r[m.tab_len - 1]) {
        v = m.tab_m[m.tab_len - 1];
      } else {
        int lo = 0, hi = m.tab_len - 1;
        while (hi - lo > 1) {
          int mid = (lo + hi) / 2;
          (m.tab_r[mid] <= r ? lo : hi) = mid;
        }
        double t = (r - m.tab_r[lo]) / (m.tab_r[hi] - m.tab_r[lo]);
        v = m.tab_m[lo] + t * (m.tab_m[hi] - m.tab_m[lo]);
      }
      break;
    }
  }
  if (m.capped) v = std::max(v, m.L * r - m.cap_n);
  return v;
}

void fill_ghost_1d(double* a, int n) {
  a[0] = a[n];
  a[n + 1] = a[1];
}

void fill_ghost_2d(double* a, int n) {
  const int s = n + 2;
  for (int j = 1; j <= n; ++j) {
    a[j * s + 0] = a[j * s + n];
    a[j * s + n + 1] = a[j * s + 1];
  }
  for (int i = 0; i <= n + 1; ++i) {
    a[0 * s + i] = a[n * s + i];
    a[(n + 1) * s + i] = a[1 * s + i];
  }
}

namespace {

struct Accum {
  double sum_h = 0.0;
  double min_h = std::numeric_limits<double>::infinity();
  double max_h = -std::numeric_limits<double>::infinity();
  double sum_unew = 0.0;
  double min_unew = std::numeric_limits<double>::infinity();
  double max_unew = -std::numeric_limits<double>::infinity();
  double min_du = std::numeric_limits<double>::infinity();
  double max_du = -std::numeric_limits<double>::infinity();

  void add(double ham, double un, double du) {
    sum_h += ham;
    min_h = std::min(min_h, ham);
    max_h = std::max(max_h, ham);
    sum_unew += un;
    min_unew = std::min(min_unew, un);
    max_unew = std::max(max_unew, un);
    min_du = std::min(min_du, du);
    max_du = std::max(max_du, du);
  }
  SweepStats done() const {
    return {sum_h, min_h, max_h, sum_unew, min_unew, max_unew, min_du, max_du};
  }
};

} // namespace

namespace scalar {

SweepStats lf_sweep_1d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p) {
  const double inv_h = 1.0 / p.h;
  const double half_theta = 0.5 * p.theta;
  Accum acc;
  for (int i = 1; i <= n; ++i) {
    double dm = (u[i] - u[i - 1]) * inv_h;
    double dp = (u[i + 1] - u[i]) * inv_h;
    double pmid = 0.5 * (dm + dp) + p.Px;
    double ham = sig[i] * kinetic_eval(p.m, std::abs(pmid)) -
                 half_theta * (dp - dm);
    double un = u[i] - p.dt * (p.delta * u[i] + ham);
    unew[i] = un;
    acc.add(ham, un, un - u[i]);
  }
  return acc.done();
}

SweepStats lf_sweep_2d(const double* u, double* unew, const double* sig, int n,
                       const SweepParams& p) {
  const double inv_h = 1.0 / p.h;
  const double half_theta = 0.5 * p.theta;
  const int s = n + 2;
  Accum acc;
  for (int j = 1; j <= n; ++j) {
    const double* row = u + std::size_t(j) * s;
    const double* up = row + s;
    const double* dn = row - s;
    const double* sg = sig + std::size_t(j) * s;
    double* out = unew + std::size_t(j) * s;
    for (int i = 1; i <= n; ++i) {
      double dmx = (row[i] - row[i - 1]) * inv_h;
      double dpx = (row[i + 1] - row[i]) * inv_h;
      double dmy = (row[i] - dn[i]) * inv_h;
      double dpy = (up[i] - row[i]) * inv_h;
      double px = 0.5 * (dmx + dpx) + p.Px;
      double py = 0.5 * (dmy + dpy) + p.Py;
      double r = std::sqrt(px * px + py * py);
      double ham = sg[i] * kinetic_eval(p.m, r) -
                   half_theta * ((dpx - dmx) + (dpy - dmy));
      double un = row[i] - p.dt * (p.delta * row[i] + ham);
      out[i] = un;
      acc.add(ham, un, un - row[i]);
    }
  }
  return acc.done();
}

} // namespace scalar

SweepStats lf_sweep_tab_1d(const double* u, double* unew, int n, double h,
                           double dt, double theta, const double* hbar,
                           double p0, double dp, int len, bool* out_of_range,
                           double* min_p_seen, double* max_p_seen) {
  const double inv_h = 1.0 / h;
  const double half_theta = 0.5 * theta;
  const double pmax = p0 + dp * (len - 1);
  Accum acc;
  bool oor = false;
  double pmin_s = std::numeric_limits<double>::infinity();
  double pmax_s = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= n; ++i) {
    double dminus = (u[i] - u[i - 1]) * inv_h;
    double dplus = (u[i + 1] - u[i]) * inv_h;
    double pmid = 0.5 * (dminus + dplus);
    pmin_s = std::min(pmin_s, pmid);
    pmax_s = std::max(pmax_s, pmid);
    double hv;
    if (pmid < p0 || pmid > pmax) {
      oor = true;
      double pc = std::clamp(pmid, p0, pmax);
      double t = (pc - p0) / dp;
      int k = std::min(int(t), len - 2);
      hv = hbar[k] + (t - k) * (hbar[k + 1] - hbar[k]);
    } else {
      double t = (pmid - p0) / dp;
      int k = std::min(int(t), len - 2);
      hv = hbar[k] + (t - k) * (hbar[k + 1] - hbar[k]);
    }
    double ham = hv - half_theta * (dplus - dminus);
    double un = u[i] - dt * ham;
    unew[i] = un;
    acc.add(ham, un, un - u[i]);
  }
  if (out_of_range) *out_of_range = oor;
  if (min_p_seen) *min_p_seen = pmin_s;
  if (max_p_seen) *max_p_seen = pmax_s;
  return acc.done();
}

} // namespace facet::kernels
