#pragma once

#include <stdexcept>
#include <vector>

#include "facet/hamiltonian.hpp"

namespace facet {

/// One-dimensional closed-form theory: slope profile f_a(x) = m^{-1}(a/sigma(x)),
/// its period integral, the critical-value formula, the solvability interval,
/// and explicit correctors. Serves as the independent oracle for the grid
/// solvers.
struct OneDimProblem {
  SupplyField sigma;
  KineticModel m;

  OneDimProblem(SupplyField s, KineticModel k);

  double f(double a, double x) const; // may return +infinity
  double sigma_bar_m0() const { return sigma.sigma_max() * m.m0(); }
};

struct NotSolvableError : std::runtime_error {
  double half_width;
  bool whole_line;
  NotSolvableError(double w, bool whole, const std::string& msg)
      : std::runtime_error(msg), half_width(w), whole_line(whole) {}
};

struct IntegralResult {
  bool infinite = false;
  double value = 0.0;
  int levels = 0; // excision levels used (0 = direct quadrature)
};

/// Integral of f_a over one period. For a = sigma_min the quadrature excises
/// shrinking neighborhoods of the minimizers of sigma and extrapolates;
/// divergence is declared when partial integrals pass 1e6 or the per-level
/// increments stop shrinking across three levels.
IntegralResult integral_f(const OneDimProblem& p, double a, double tol = 1e-8);

/// Critical value c(P): sigma_max*m0 in the flat regime |P| <= I(sigma_max*m0),
/// otherwise the root a of I(a) = |P|. Throws NotSolvableError outside the
/// solvability interval.
double critical_value_1d(const OneDimProblem& p, double P, double tol = 1e-10);

struct SolvabilityInterval {
  enum class Kind { empty, bounded, whole_line } kind = Kind::bounded;
  double half_width = 0.0; // meaningful for bounded
};

SolvabilityInterval solvability_interval(const OneDimProblem& p,
                                         double tol = 1e-8);

struct Corrector1D {
  bool large_p = false;
  double x0 = 0.0, x1 = 0.0; // turning points (small-P construction)
  double c = 0.0;            // critical value used
  double P = 0.0;
  std::vector<double> xs, us; // dense samples on [0,1]
  double periodicity_defect = 0.0;
};

Corrector1D corrector_1d(const OneDimProblem& p, double P, double tol = 1e-10,
                         int samples = 8192);

/// Max of | |u'+P| - f_c | at off-kink nodes, u' by central differences of
/// the stored samples.
double corrector_residual(const OneDimProblem& p, const Corrector1D& c);

/// Evaluates c(P) and c(Q) and compares. Preconditions: both in D and
/// |P| > |Q| >= I(sigma_max*m0); violations throw std::invalid_argument.
bool strict_monotonicity_check(const OneDimProblem& p, double P, double Q,
                               double tol = 1e-10);

} // namespace facet
