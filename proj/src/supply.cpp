#include "facet/supply.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facet {

namespace {
double frac(double x) {
  double f = x - std::floor(x);
  return f == 1.0 ? 0.0 : f;
}
double tent01(double x) { // 0 at lattice points, 1 at cell centers
  double f = frac(x);
  return 2.0 * std::min(f, 1.0 - f);
}
// C^1 bump on [1/4, 3/4], 0 outside, peak 1 at 1/2.
double bump01(double x) {
  double f = frac(x);
  if (f <= 0.25 || f >= 0.75) return 0.0;
  double t = (f - 0.25) * 4.0; // (0,2)
  return 0.5 * (1.0 - std::cos(3.14159265358979323846 * t));
}
} // namespace

SupplyField SupplyField::constant(double value, int dim) {
  if (value <= 0.0) throw std::invalid_argument("supply must be positive");
  SupplyField s;
  s.kind_ = Kind::constant;
  s.dim_ = dim;
  s.p0_ = value;
  s.smin_ = s.smax_ = value;
  return s;
}

SupplyField SupplyField::triangular(double lo, double hi, int dim) {
  if (lo <= 0.0 || hi < lo)
    throw std::invalid_argument("triangular supply needs 0 < lo <= hi");
  SupplyField s;
  s.kind_ = Kind::triangular;
  s.dim_ = dim;
  s.p0_ = lo;
  s.p1_ = hi;
  s.smin_ = lo;
  s.smax_ = hi;
  return s;
}

SupplyField SupplyField::power_bump(double alpha, double beta) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("power bump needs alpha, beta > 0");
  SupplyField s;
  s.kind_ = Kind::power_bump;
  s.dim_ = 1;
  s.p0_ = alpha;
  s.p1_ = beta;
  s.smin_ = beta;
  s.smax_ = std::pow(0.25, alpha) + beta; // peak at x = 1/2
  return s;
}

SupplyField SupplyField::compact_bump(double base, double height) {
  if (base <= 0.0 || height < 0.0)
    throw std::invalid_argument("compact bump needs base > 0, height >= 0");
  SupplyField s;
  s.kind_ = Kind::compact_bump;
  s.dim_ = 1;
  s.p0_ = base;
  s.p1_ = height;
  s.smin_ = base;
  s.smax_ = base + height;
  return s;
}

SupplyField SupplyField::sampled(std::vector<double> values, int dim) {
  SupplyField s;
  s.dim_ = dim;
  s.kind_ = Kind::sampled;
  std::size_t n;
  if (dim == 1) {
    n = values.size();
    if (n < 2) throw std::invalid_argument("sampled supply needs >= 2 values");
  } else if (dim == 2) {
    n = std::size_t(std::llround(std::sqrt(double(values.size()))));
    if (n < 2 || n * n != values.size())
      throw std::invalid_argument("2D sampled supply needs a square value array");
  } else {
    throw std::invalid_argument("supply dim must be 1 or 2");
  }
  double lo = values[0], hi = values[0];
  for (double v : values) {
    if (v <= 0.0) throw std::invalid_argument("supply samples must be positive");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  s.sample_n_ = int(n);
  s.samples_ = std::move(values);
  s.smin_ = lo;
  s.smax_ = hi;
  return s;
}

double SupplyField::operator()(double x) const {
  switch (kind_) {
    case Kind::constant: return p0_;
    case Kind::triangular: return p0_ + (p1_ - p0_) * tent01(x);
    case Kind::power_bump: {
      double f = frac(x);
      return std::pow(f * (1.0 - f), p0_) + p1_;
    }
    case Kind::compact_bump: return p0_ + p1_ * bump01(x);
    case Kind::sampled: {
      double f = frac(x) * sample_n_;
      int i = int(f);
      if (i >= sample_n_) i = sample_n_ - 1;
      double t = f - i;
      double v0 = samples_[std::size_t(i)];
      double v1 = samples_[std::size_t((i + 1) % sample_n_)];
      return v0 + t * (v1 - v0);
    }
  }
  return 0.0;
}

double SupplyField::operator()(double x, double y) const {
  if (dim_ != 2) throw std::logic_error("2D eval on 1D supply");
  switch (kind_) {
    case Kind::constant: return p0_;
    case Kind::triangular: return p0_ + (p1_ - p0_) * tent01(x) * tent01(y);
    case Kind::sampled: {
      double fx = frac(x) * sample_n_, fy = frac(y) * sample_n_;
      int i = std::min(int(fx), sample_n_ - 1);
      int j = std::min(int(fy), sample_n_ - 1);
      double tx = fx - i, ty = fy - j;
      auto at = [&](int a, int b) {
        return samples_[std::size_t(b % sample_n_) * sample_n_ +
                        std::size_t(a % sample_n_)];
      };
      double v00 = at(i, j), v10 = at(i + 1, j), v01 = at(i, j + 1),
             v11 = at(i + 1, j + 1);
      return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 +
             (1 - tx) * ty * v01 + tx * ty * v11;
    }
    default:
      throw std::logic_error("supply preset not available in 2D");
  }
}

double SupplyField::excess(double x) const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::triangular: return (p1_ - p0_) * tent01(x);
    case Kind::power_bump: {
      double f = frac(x);
      return std::pow(f * (1.0 - f), p0_);
    }
    case Kind::compact_bump: return p1_ * bump01(x);
    case Kind::sampled: return (*this)(x) - smin_;
  }
  return 0.0;
}

std::vector<double> SupplyField::breakpoints() const {
  switch (kind_) {
    case Kind::constant: return {};
    case Kind::triangular: return {0.5};
    case Kind::power_bump: return {0.5};
    case Kind::compact_bump: return {0.25, 0.5, 0.75};
    case Kind::sampled: {
      std::vector<double> b;
      for (int i = 1; i < sample_n_; ++i) b.push_back(double(i) / sample_n_);
      return b;
    }
  }
  return {};
}

std::vector<double> SupplyField::minimizers() const {
  switch (kind_) {
    case Kind::constant: return {}; // flat: every point; handled by callers
    case Kind::triangular: return {0.0};
    case Kind::power_bump: return {0.0};
    case Kind::compact_bump: return {0.0}; // representative of the flat set
    case Kind::sampled: {
      std::vector<double> out;
      for (int i = 0; i < sample_n_; ++i)
        if (samples_[std::size_t(i)] <= smin_ * (1.0 + 1e-12))
          out.push_back(double(i) / sample_n_);
      return out;
    }
  }
  return {};
}

double SupplyField::maximizer() const {
  switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::triangular: return 0.5;
    case Kind::power_bump: return 0.5;
    case Kind::compact_bump: return 0.5;
    case Kind::sampled: {
      int best = 0;
      for (int i = 1; i < sample_n_; ++i)
        if (samples_[std::size_t(i)] > samples_[std::size_t(best)]) best = i;
      return double(best) / sample_n_;
    }
  }
  return 0.0;
}

std::string SupplyField::name() const {
  switch (kind_) {
    case Kind::constant: return "constant";
    case Kind::triangular: return "triangular";
    case Kind::power_bump: return "power-bump";
    case Kind::compact_bump: return "compact-bump";
    case Kind::sampled: return "sampled";
  }
  return "?";
}

} // namespace facet
