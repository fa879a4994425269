#pragma once

#include <string>
#include <vector>

namespace facet {

/// Periodic positive supply rate sigma on the unit torus, dim 1 or 2.
///
/// Presets store exact extrema; sampled fields interpolate linearly with
/// wrap-around and take extrema over the sample set (exact for the
/// interpolant).
class SupplyField {
public:
  enum class Kind { constant, triangular, power_bump, compact_bump, sampled };

  static SupplyField constant(double value, int dim = 1);
  /// Tent profile: minimum `lo` at lattice points, maximum `hi` at cell
  /// centers. In 2D the tent is the product bump lo + (hi-lo)*t(x)*t(y).
  static SupplyField triangular(double lo, double hi, int dim = 1);
  /// sigma(x) = x^alpha (1-x)^alpha + beta on [0,1], periodized. 1D only.
  static SupplyField power_bump(double alpha, double beta);
  /// Smooth bump of given height supported on [1/4, 3/4], value `base`
  /// outside. 1D only.
  static SupplyField compact_bump(double base, double height);
  static SupplyField sampled(std::vector<double> values, int dim = 1);

  double operator()(double x) const;
  double operator()(double x, double y) const;
  /// sigma(x) - sigma_min without cancellation (exact for presets).
  double excess(double x) const;

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  double sigma_min() const { return smin_; }
  double sigma_max() const { return smax_; }
  bool is_preset() const { return kind_ != Kind::sampled; }

  /// Interior kink locations in (0,1) for quadrature subdivision (1D).
  std::vector<double> breakpoints() const;
  /// Points of [0,1) where sigma attains its minimum (1D; isolated minima).
  std::vector<double> minimizers() const;
  /// One maximizer of sigma in [0,1) (1D).
  double maximizer() const;

  std::string name() const;
  double param(int i) const { return i == 0 ? p0_ : p1_; }
  const std::vector<double>& samples() const { return samples_; }
  int sample_count() const { return sample_n_; }

  SupplyField() : kind_(Kind::constant), p0_(1.0), smin_(1.0), smax_(1.0) {}

private:
  Kind kind_ = Kind::constant;
  int dim_ = 1;
  double p0_ = 0.0, p1_ = 0.0;
  std::vector<double> samples_; // 1D: n values; 2D: n*n row-major
  int sample_n_ = 0;
  double smin_ = 0.0, smax_ = 0.0;
};

} // namespace facet
