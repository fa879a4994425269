#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "facet/hamiltonian.hpp"
#include "facet/kinetic.hpp"
#include "facet/supply.hpp"

using namespace facet;

TEST_CASE("kinetic presets: values, inverses, constants") {
  KineticModel t = KineticModel::tanh_sat();
  CHECK(t(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.m0() == 0.5);
  CHECK(t.lipschitz() == 0.5);
  CHECK(t.inverse(0.5) == 0.0);
  CHECK(t.inverse(t(1.3)) == doctest::Approx(1.3).epsilon(1e-12));

  KineticModel r = KineticModel::rational();
  CHECK(r(0.0) == 0.5);
  CHECK(r(1.0) == doctest::Approx(0.75));
  CHECK(r.inverse(0.5) == 0.0);
  CHECK(r.inverse(0.75) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.inverse(r(2.7)) == doctest::Approx(2.7).epsilon(1e-12));

  // bounded in (0,1) and strictly increasing; the scan stops where the tanh
  // preset saturates to 1.0 in double precision (r ~ 19)
  for (const KineticModel& m : {t, r}) {
    double prev = -1.0;
    for (double x = 0.0; x <= 15.0; x += 0.37) {
      double v = m(x);
      CHECK(v > 0.0);
      CHECK(v < 1.0);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("kinetic samples: interpolation, inverse, validation") {
  std::vector<double> r{0.0, 0.5, 1.0, 2.0, 4.0};
  std::vector<double> v{0.4, 0.55, 0.66, 0.8, 0.9};
  KineticModel m = KineticModel::sampled(r, v);
  CHECK(m.m0() == 0.4);
  CHECK(m(0.75) == doctest::Approx(0.605));
  CHECK(m(10.0) == 0.9); // constant extension
  CHECK(m.inverse(m(1.5)) == doctest::Approx(1.5).epsilon(1e-12));
  // Lipschitz estimate dominates the max slope (0.3) with the safety factor
  CHECK(m.lipschitz() == doctest::Approx(0.3 * 1.05));
  CHECK(std::isinf(m.inverse(0.95)));

  CHECK_THROWS_AS(KineticModel::sampled({0.0, 1.0}, {0.5, 0.4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(KineticModel::sampled({0.0, 1.0}, {0.5, 1.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(KineticModel::sampled({0.5, 1.0}, {0.4, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("approximant: cap formula, crossover, family monotonicity") {
  KineticModel t = KineticModel::tanh_sat();
  Approximant a1 = make_approximant(t, 1);
  // below the crossover the cap is inactive for every n
  for (int n : {1, 2, 5}) {
    Approximant a = make_approximant(t, n);
    CHECK(a(0.0) == t(0.0));
  }
  // far out the linear branch dominates: max{m(10), 0.5*10-1} = 4
  CHECK(a1(10.0) == doctest::Approx(4.0));

  // alpha_n increases in n
  double prev_alpha = 0.0;
  for (int n = 1; n <= 10; ++n) {
    Approximant a = make_approximant(t, n);
    CHECK(a.alpha_n > prev_alpha);
    prev_alpha = a.alpha_n;
    // crossover solves L r - n = m(r)
    CHECK(0.5 * a.alpha_n - n == doctest::Approx(t(a.alpha_n)).epsilon(1e-10));
  }

  // family ordering M_n >= M_{n'} >= m on a log grid up to 1e3, and the
  // branch below alpha_n is exactly m
  for (const KineticModel& m : {t, KineticModel::rational()}) {
    Approximant a2 = make_approximant(m, 2);
    Approximant a8 = make_approximant(m, 8);
    for (double lg = -3.0; lg <= 3.0; lg += 0.1) {
      double r = std::pow(10.0, lg);
      CHECK(a2(r) >= a8(r));
      CHECK(a8(r) >= m(r));
      if (r < a2.alpha_n * (1.0 - 1e-12)) CHECK(a2(r) == m(r));
    }
  }
}

TEST_CASE("supply presets: extrema and shapes") {
  SupplyField tri = SupplyField::triangular(1.5, 2.5);
  CHECK(tri.sigma_min() == 1.5);
  CHECK(tri.sigma_max() == 2.5);
  CHECK(tri(0.0) == 1.5);
  CHECK(tri(0.5) == 2.5);
  CHECK(tri(0.25) == doctest::Approx(2.0));
  CHECK(tri(0.25) == doctest::Approx(tri(0.75))); // symmetric tent

  SupplyField cst = SupplyField::constant(2.0);
  CHECK(cst.sigma_min() == 2.0);
  CHECK(cst.sigma_max() == 2.0);

  SupplyField pb = SupplyField::power_bump(1.0, 1.0);
  CHECK(pb.sigma_min() == 1.0);
  CHECK(pb.sigma_max() == doctest::Approx(1.25)); // x(1-x)+1 peaks at 1/2
  CHECK(pb(0.5) == doctest::Approx(1.25));

  SupplyField cb = SupplyField::compact_bump(1.0, 0.5);
  CHECK(cb(0.1) == 1.0);
  CHECK(cb(0.9) == 1.0);
  CHECK(cb(0.5) == doctest::Approx(1.5));

  CHECK_THROWS_AS(SupplyField::constant(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(SupplyField::sampled({1.0, -2.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("supply periodicity and sampled interpolation") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  SupplyField tri = SupplyField::triangular(1.5, 2.5);
  SupplyField smp = SupplyField::sampled({2.0, 2.2, 1.8, 2.4, 2.1});
  for (int k = 0; k < 200; ++k) {
    double x = ud(rng);
    int z = int(rng() % 5) - 2;
    CHECK(tri(x) == doctest::Approx(tri(x + z)).epsilon(1e-12));
    CHECK(smp(x) == doctest::Approx(smp(x + z)).epsilon(1e-12));
    CHECK(smp(x) >= smp.sigma_min());
    CHECK(smp(x) <= smp.sigma_max());
  }
  // 2D product tent
  SupplyField tri2 = SupplyField::triangular(1.0, 3.0, 2);
  CHECK(tri2(0.5, 0.5) == doctest::Approx(3.0));
  CHECK(tri2(0.0, 0.5) == doctest::Approx(1.0));
  CHECK(tri2(0.3, 0.7) == doctest::Approx(tri2(1.3, -0.3)).epsilon(1e-12));
}

TEST_CASE("hamiltonian: evenness, radial monotonicity, non-coercivity") {
  Hamiltonian h{SupplyField::triangular(1.5, 2.5), KineticModel::tanh_sat()};
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(0.0, 1.0), up(-8.0, 8.0),
      uk(1.0, 4.0);
  for (int i = 0; i < 300; ++i) {
    double x = ux(rng), p = up(rng), k = uk(rng);
    CHECK(h(x, p) == h(x, -p));
    CHECK(h(x, p) <= h(x, k * p) + 1e-15);
    CHECK(h(x, p) < h.sigma.sigma_max());
  }
  CHECK(h.theta() == doctest::Approx(1.25));
}

TEST_CASE("regime classification") {
  KineticModel t = KineticModel::tanh_sat();
  // 2.5 * 0.5 = 1.25 < 1.5
  CHECK(check_regime({SupplyField::triangular(1.5, 2.5), t}) ==
        Regime::solvable_possible);
  // constant: sigma*m0 < sigma always
  CHECK(check_regime({SupplyField::constant(2.0), t}) ==
        Regime::solvable_possible);
  // scaled so sigma_max*m0 = 2*sigma_min > sigma_min
  CHECK(check_regime({SupplyField::triangular(1.5, 6.0), t}) ==
        Regime::empty_d);
  // boundary: sigma_max*m0 == sigma_min
  CHECK(check_regime({SupplyField::triangular(1.5, 3.0), t}) ==
        Regime::boundary);
}
