#pragma once

#include <string>
#include <vector>

namespace facet {

/// Bounded increasing kinetic coefficient m : [0,inf) -> (0,1).
///
/// Presets carry exact closed-form inverses and Lipschitz constants; sampled
/// tables use piecewise-linear interpolation with constant extension above the
/// last sample and a per-segment exact inverse.
class KineticModel {
public:
  enum class Kind { rational, tanh_sat, sampled };

  static KineticModel rational();
  static KineticModel tanh_sat();
  static KineticModel sampled(std::vector<double> r, std::vector<double> m);

  double operator()(double r) const;

  /// Inverse of m. Returns 0 for s <= m(0) and +infinity when s >= sup m
  /// (saturation level 1 for presets, last sample value for tables).
  double inverse(double s) const;

  double m0() const { return m0_; }
  double lipschitz() const { return lip_; }
  Kind kind() const { return kind_; }
  const std::vector<double>& sample_r() const { return samp_r_; }
  const std::vector<double>& sample_m() const { return samp_m_; }
  /// Least upper bound of m (1 for presets, exclusive).
  double saturation() const { return sat_; }

  std::string name() const;

  KineticModel() = default; // rational preset

private:
  Kind kind_ = Kind::rational;
  double lip_ = 0.5;
  double m0_ = 0.5;
  double sat_ = 1.0;
  std::vector<double> samp_r_, samp_m_;
};

/// Coercive surrogate M_n(r) = max{m(r), L r - n} with crossover radius
/// alpha_n, the unique root of L r - n = m(r).
struct Approximant {
  KineticModel m;
  int n = 1;
  double alpha_n = 0.0;

  double operator()(double r) const;
};

Approximant make_approximant(const KineticModel& m, int n);

} // namespace facet
