#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "facet/onedim.hpp"

using namespace facet;

namespace {

OneDimProblem tent_tanh() {
  return {SupplyField::triangular(1.5, 2.5), KineticModel::tanh_sat()};
}
OneDimProblem tent_rational() {
  return {SupplyField::triangular(1.5, 2.5), KineticModel::rational()};
}

// Independent oracle for the tent profile [1.5, 2.5] with the tanh kinetic
// coefficient: substituting t = sigma(x) - a turns the period integral of
// f_a = atanh(2a/sigma - 1) = (1/2) ln(a/(sigma-a)) into
//   I(a) = (1/2)[(2.5-a)(ln(a/(2.5-a))+1) - (1.5-a)(ln(a/(1.5-a))+1)],
// with the second term vanishing at a = 1.5.
double tent_integral_closed(double a) {
  double t1 = (2.5 - a) * (std::log(a / (2.5 - a)) + 1.0);
  double t2 = a < 1.5 ? (1.5 - a) * (std::log(a / (1.5 - a)) + 1.0) : 0.0;
  return 0.5 * (t1 - t2);
}

// Same substitution for the rational coefficient:
//   f_a = (2a - sigma) / (2(sigma - a)),
//   I(a) = (a/2) ln((2.5-a)/(1.5-a)) - 1/2, diverging as a -> 1.5.
double tent_integral_rational(double a) {
  return 0.5 * a * std::log((2.5 - a) / (1.5 - a)) - 0.5;
}

} // namespace

TEST_CASE("quadrature matches the closed form away from the top") {
  OneDimProblem p = tent_tanh();
  for (double a : {1.25, 1.3, 1.4, 1.45, 1.49}) {
    IntegralResult r = integral_f(p, a);
    CHECK(!r.infinite);
    CHECK(r.value == doctest::Approx(tent_integral_closed(a)).epsilon(1e-8));
  }
  OneDimProblem q = tent_rational();
  for (double a : {1.3, 1.4, 1.49}) {
    IntegralResult r = integral_f(q, a);
    CHECK(!r.infinite);
    CHECK(r.value == doctest::Approx(tent_integral_rational(a)).epsilon(1e-7));
  }
}

TEST_CASE("endpoint integral: excision result equals the analytic limit") {
  // I(sigma_min) = (1 + ln 1.5)/2 = 0.702732554054082191 for this tent
  OneDimProblem p = tent_tanh();
  IntegralResult r = integral_f(p, 1.5, 1e-8);
  CHECK(!r.infinite);
  CHECK(std::abs(r.value - 0.702732554054082191) <= 1e-6);
  CHECK(std::abs(r.value - tent_integral_closed(1.5)) <= 1e-6);
}

TEST_CASE("endpoint integral on a smooth minimum") {
  // sigma = x(1-x) + 1: f_{sigma_min} = (1/2) ln(1/(x(1-x))) integrates to
  // exactly 1 over the period
  OneDimProblem p{SupplyField::power_bump(1.0, 1.0), KineticModel::tanh_sat()};
  IntegralResult r = integral_f(p, 1.0, 1e-8);
  CHECK(!r.infinite);
  CHECK(std::abs(r.value - 1.0) <= 1e-6);
}

TEST_CASE("divergence detection") {
  // rational coefficient on the tent: f ~ c/x near the minimizer
  OneDimProblem q = tent_rational();
  IntegralResult r = integral_f(q, 1.5, 1e-8);
  CHECK(r.infinite);

  // constant sigma: the top integrand is identically m^{-1}(1) = infinity
  OneDimProblem c{SupplyField::constant(2.0), KineticModel::tanh_sat()};
  IntegralResult rc = integral_f(c, 2.0, 1e-8);
  CHECK(rc.infinite);

  CHECK_THROWS_AS(integral_f(q, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(integral_f(q, 2.0), std::invalid_argument);
}

TEST_CASE("constant supply: integral is the inverse coefficient") {
  OneDimProblem c{SupplyField::constant(2.0), KineticModel::tanh_sat()};
  for (double a : {1.1, 1.4, 1.8}) {
    IntegralResult r = integral_f(c, a);
    CHECK(r.value ==
          doctest::Approx(std::atanh(2.0 * (a / 2.0) - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("solvability intervals across the three regimes") {
  SolvabilityInterval tanh_case = solvability_interval(tent_tanh());
  CHECK(tanh_case.kind == SolvabilityInterval::Kind::bounded);
  CHECK(tanh_case.half_width ==
        doctest::Approx(0.702732554054082191).epsilon(1e-6));

  SolvabilityInterval rat_case = solvability_interval(tent_rational());
  CHECK(rat_case.kind == SolvabilityInterval::Kind::whole_line);

  OneDimProblem scaled{SupplyField::triangular(1.5, 6.0),
                       KineticModel::tanh_sat()};
  CHECK(solvability_interval(scaled).kind == SolvabilityInterval::Kind::empty);
}

TEST_CASE("critical value: flat regime, golden root, symmetry") {
  OneDimProblem p = tent_tanh();
  // flat regime below I(sigma_max m0) = 0.298820260945737453
  CHECK(critical_value_1d(p, 0.0) == doctest::Approx(1.25));
  CHECK(critical_value_1d(p, 0.25) == doctest::Approx(1.25));
  // golden roots of I(a) = |P| from the closed form, bisected to 1e-15
  CHECK(critical_value_1d(p, 0.5) ==
        doctest::Approx(1.39955871345793493).epsilon(1e-7));
  CHECK(critical_value_1d(p, 0.35) ==
        doctest::Approx(1.29148063831986609).epsilon(1e-7));
  CHECK(critical_value_1d(p, 0.6) ==
        doctest::Approx(1.45772981287316732).epsilon(1e-7));
  // even in P by construction
  CHECK(critical_value_1d(p, -0.5) == critical_value_1d(p, 0.5));

  // I(a) non-decreasing on an a-grid
  double prev = 0.0;
  for (double a = 1.25; a <= 1.49; a += 0.02) {
    double v = integral_f(p, a).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("interval endpoints: accept just inside, reject just outside") {
  OneDimProblem p = tent_tanh();
  double W = solvability_interval(p).half_width;
  CHECK_NOTHROW(critical_value_1d(p, W * (1.0 - 1e-3)));
  CHECK_THROWS_AS(critical_value_1d(p, W * (1.0 + 1e-3)), NotSolvableError);
  // the thrown error carries the interval
  try {
    critical_value_1d(p, W * 1.5);
  } catch (const NotSolvableError& e) {
    CHECK(e.half_width == doctest::Approx(W).epsilon(1e-9));
  }
  // rational case is solvable everywhere
  OneDimProblem q = tent_rational();
  CHECK_NOTHROW(critical_value_1d(q, 25.0));
}

TEST_CASE("corrector: flat on constant supply") {
  OneDimProblem c{SupplyField::constant(2.0), KineticModel::tanh_sat()};
  Corrector1D u = corrector_1d(c, 0.0);
  for (double v : u.us) CHECK(std::abs(v - u.us.front()) <= 1e-10);
  CHECK(u.periodicity_defect <= 1e-10);
}

TEST_CASE("corrector turning points and periodicity on the tent") {
  OneDimProblem p = tent_tanh();
  Corrector1D u0 = corrector_1d(p, 0.0);
  CHECK(!u0.large_p);
  CHECK(u0.x0 == doctest::Approx(0.5)); // the max of sigma
  CHECK(u0.x1 == doctest::Approx(1.0).epsilon(1e-6)); // x0 + 1/2 by symmetry
  CHECK(u0.periodicity_defect <= 1e-8);
  CHECK(corrector_residual(p, u0) <= 1e-6);

  Corrector1D u5 = corrector_1d(p, 0.5);
  CHECK(u5.large_p);
  CHECK(u5.periodicity_defect <= 1e-8);
  CHECK(corrector_residual(p, u5) <= 1e-6);

  Corrector1D um = corrector_1d(p, -0.5);
  CHECK(um.periodicity_defect <= 1e-8);

  CHECK_THROWS_AS(corrector_1d(p, 5.0), NotSolvableError);
}

TEST_CASE("strict monotonicity of the critical value beyond the flat regime") {
  OneDimProblem p = tent_tanh();
  CHECK(strict_monotonicity_check(p, 0.6, 0.4));
  CHECK(strict_monotonicity_check(p, 0.65, 0.5));
  CHECK(strict_monotonicity_check(p, -0.6, 0.35));
  CHECK_THROWS_AS(strict_monotonicity_check(p, 0.4, 0.6),
                  std::invalid_argument);
  CHECK_THROWS_AS(strict_monotonicity_check(p, 1.0, -1.0),
                  std::invalid_argument);
  // |Q| below the flat threshold violates the precondition
  CHECK_THROWS_AS(strict_monotonicity_check(p, 0.5, 0.1),
                  std::invalid_argument);
}

TEST_CASE("sandwich bounds on the critical value") {
  OneDimProblem p = tent_tanh();
  const KineticModel& m = p.m;
  for (double P : {0.0, 0.2, 0.4, 0.55, 0.65}) {
    double c = critical_value_1d(p, P);
    CHECK(c >= std::max(1.5 * m(std::abs(P)), 1.25) - 1e-9);
    CHECK(c <= 2.5 * m(std::abs(P)) + 1e-9);
    CHECK(c < 1.5);
  }
}

TEST_CASE("dimension guard") {
  CHECK_THROWS_AS(OneDimProblem(SupplyField::constant(2.0, 2),
                                KineticModel::tanh_sat()),
                  std::invalid_argument);
}
