#include "facet/kinetic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace facet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

KineticModel KineticModel::rational() {
  KineticModel k;
  k.kind_ = Kind::rational;
  k.lip_ = 0.5; // max slope at r = 0
  k.m0_ = 0.5;
  k.sat_ = 1.0;
  return k;
}

KineticModel KineticModel::tanh_sat() {
  KineticModel k;
  k.kind_ = Kind::tanh_sat;
  k.lip_ = 0.5;
  k.m0_ = 0.5;
  k.sat_ = 1.0;
  return k;
}

KineticModel KineticModel::sampled(std::vector<double> r,
                                   std::vector<double> m) {
  if (r.size() != m.size() || r.size() < 2)
    throw std::invalid_argument("kinetic samples: need matching arrays, >= 2 points");
  if (r.front() != 0.0)
    throw std::invalid_argument("kinetic samples: first radius must be 0");
  double max_slope = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (m[i] <= 0.0 || m[i] >= 1.0)
      throw std::invalid_argument("kinetic samples: values must lie in (0,1)");
    if (i > 0) {
      if (r[i] <= r[i - 1])
        throw std::invalid_argument("kinetic samples: radii must increase");
      if (m[i] <= m[i - 1])
        throw std::invalid_argument("kinetic samples: values must increase");
      max_slope = std::max(max_slope, (m[i] - m[i - 1]) / (r[i] - r[i - 1]));
    }
  }
  KineticModel k;
  k.kind_ = Kind::sampled;
  k.m0_ = m.front();
  k.sat_ = m.back();
  k.lip_ = max_slope * 1.05; // safety factor so scheme viscosity dominates
  k.samp_r_ = std::move(r);
  k.samp_m_ = std::move(m);
  return k;
}

double KineticModel::operator()(double r) const {
  if (r < 0.0) r = -r;
  switch (kind_) {
    case Kind::rational:
      return 0.5 * r / (1.0 + r) + 0.5;
    case Kind::tanh_sat:
      return 0.5 * std::tanh(r) + 0.5;
    case Kind::sampled: {
      if (r >= samp_r_.back()) return samp_m_.back(); // constant extension
      std::size_t lo = 0, hi = samp_r_.size() - 1;
      while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (samp_r_[mid] <= r ? lo : hi) = mid;
      }
      double t = (r - samp_r_[lo]) / (samp_r_[hi] - samp_r_[lo]);
      return samp_m_[lo] + t * (samp_m_[hi] - samp_m_[lo]);
    }
  }
  return 0.0;
}

double KineticModel::inverse(double s) const {
  if (s <= m0_) return 0.0;
  if (s >= sat_) return kInf;
  switch (kind_) {
    case Kind::rational:
      return (2.0 * s - 1.0) / (2.0 - 2.0 * s);
    case Kind::tanh_sat:
      return std::atanh(2.0 * s - 1.0);
    case Kind::sampled: {
      std::size_t lo = 0, hi = samp_m_.size() - 1;
      while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        (samp_m_[mid] <= s ? lo : hi) = mid;
      }
      double t = (s - samp_m_[lo]) / (samp_m_[hi] - samp_m_[lo]);
      return samp_r_[lo] + t * (samp_r_[hi] - samp_r_[lo]);
    }
  }
  return 0.0;
}

std::string KineticModel::name() const {
  switch (kind_) {
    case Kind::rational: return "rational";
    case Kind::tanh_sat: return "tanh";
    case Kind::sampled: return "sampled";
  }
  return "?";
}

double Approximant::operator()(double r) const {
  if (r < 0.0) r = -r;
  return std::max(m(r), m.lipschitz() * r - double(n));
}

Approximant make_approximant(const KineticModel& m, int n) {
  if (n < 1) throw std::invalid_argument("approximant index must be >= 1");
  const double L = m.lipschitz();
  // L r - n grows past m(r) < 1; root lies in (n/L, (n+1)/L].
  double lo = double(n) / L, hi = (double(n) + 1.0) / L;
  while (L * hi - n < m(hi)) hi += 1.0 / L; // sampled m may undershoot slope L
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (L * mid - n < m(mid) ? lo : hi) = mid;
  }
  Approximant a;
  a.m = m;
  a.n = n;
  a.alpha_n = 0.5 * (lo + hi);
  return a;
}

} // namespace facet
