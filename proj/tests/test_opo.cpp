#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cpdc/meanfield.hpp"
#include "cpdc/opo.hpp"

using namespace cpdc;

namespace {
OpoParams fig3_params() {
  OpoParams p;
  p.zeta_p = 0.2;
  p.xi_p = 0.1;
  p.gamma0 = p.gamma1 = p.gamma2 = 1.0;
  return p;
}

// Independent re-derivation of the bright branch: Newton on the stationary
// equations of the pump-eliminated amplitude system
//   0 = -g1 r1 + lam r2 + 2 x r1 r2,   0 = -g2 r2 + lam r1 - x r1^2,
// with lam = (2/3) sqrt(2 g1 g2) eps.
struct Bright {
  double n1, n2;
};
Bright solve_bright(double g1, double g2, double xi, double eps) {
  const double lam = 2.0 / 3.0 * std::sqrt(2.0 * g1 * g2) * eps;
  // start from a generic bright guess away from the closed form
  long double r1 = std::sqrt(g1 * g2) / xi, r2 = g1 / xi * 0.5L;
  for (int it = 0; it < 200; ++it) {
    long double f1 = -g1 * r1 + lam * r2 + 2.0L * xi * r1 * r2;
    long double f2 = -g2 * r2 + lam * r1 - xi * r1 * r1;
    long double j11 = -g1 + 2.0L * xi * r2, j12 = lam + 2.0L * xi * r1;
    long double j21 = lam - 2.0L * xi * r1, j22 = -g2;
    long double det = j11 * j22 - j12 * j21;
    long double d1 = (f1 * j22 - f2 * j12) / det;
    long double d2 = (j11 * f2 - j21 * f1) / det;
    r1 -= d1;
    r2 -= d2;
    if (std::abs((double)d1) + std::abs((double)d2) < 1e-16 * (std::abs((double)r1) + 1.0)) break;
  }
  return {static_cast<double>(r1 * r1), static_cast<double>(r2 * r2)};
}
}  // namespace

TEST_CASE("threshold closed form") {
  OpoParams p = fig3_params();
  CHECK(threshold(p) == doctest::Approx(2.0 / 0.6 * std::sqrt(2.0)).epsilon(1e-12));

  OpoParams doubled = p;
  doubled.gamma0 = 2.0;
  CHECK(threshold(doubled) == doctest::Approx(2.0 * threshold(p)).epsilon(1e-14));

  OpoParams g4 = p;
  g4.gamma1 = 2.0;
  g4.gamma2 = 2.0;  // gamma1*gamma2 -> 4x doubles E_th
  CHECK(threshold(g4) == doctest::Approx(2.0 * threshold(p)).epsilon(1e-14));

  OpoParams bad = p;
  bad.zeta_p = 0.0;
  CHECK_THROWS_AS(threshold(bad), ConfigError);
}

TEST_CASE("semiclassical steady states") {
  OpoParams p = fig3_params();

  SUBCASE("printed values at threshold") {
    SemiclassicalSteady s = semiclassical_steady(p, 1.0);
    CHECK(s.above_threshold);
    CHECK(s.n1 == doctest::Approx(1.0 / 0.18).epsilon(1e-14));
    CHECK(s.n2 == doctest::Approx(1.0 / 0.36).epsilon(1e-14));
  }
  SUBCASE("printed values at eps = 1.4") {
    SemiclassicalSteady s = semiclassical_steady(p, 1.4);
    CHECK(s.n1 == doctest::Approx(104.61269742084).epsilon(1e-10));
    CHECK(s.n2 == doctest::Approx(9.23580982798).epsilon(1e-10));
  }
  SUBCASE("phase triples at zero drive phase") {
    SemiclassicalSteady s = semiclassical_steady(p, 1.2);
    CHECK(s.phases1[0] == doctest::Approx(0.0));
    CHECK(s.phases1[1] == doctest::Approx(2.0 * M_PI / 3.0));
    CHECK(s.phases1[2] == doctest::Approx(4.0 * M_PI / 3.0));
  }
  SUBCASE("below threshold returns the trivial branch") {
    SemiclassicalSteady s = semiclassical_steady(p, 0.8);
    CHECK_FALSE(s.above_threshold);
    CHECK(s.n1 == 0.0);
  }
  SUBCASE("independent Newton re-derivation to 1e-12") {
    // Newton is regular away from the eps = 1 fold.
    for (double eps : {1.1, 1.4}) {
      SemiclassicalSteady s = semiclassical_steady(p, eps);
      Bright b = solve_bright(p.gamma1, p.gamma2, p.xi_p, eps);
      CHECK(std::abs(s.n1 - b.n1) <= 1e-12 * b.n1);
      CHECK(std::abs(s.n2 - b.n2) <= 1e-12 * b.n2);
    }
    // At the fold the degenerate solution is explicit: A = eps = 1.
    SemiclassicalSteady s = semiclassical_steady(p, 1.0);
    CHECK(std::abs(s.n1 - 1.0 / (18.0 * p.xi_p * p.xi_p)) <= 1e-14 * s.n1);
    CHECK(std::abs(s.n2 - 1.0 / (36.0 * p.xi_p * p.xi_p)) <= 1e-14 * s.n2);
  }
  SUBCASE("closed form satisfies the stationary equations exactly") {
    for (double eps : {1.0, 1.05, 1.3, 2.0}) {
      SemiclassicalSteady s = semiclassical_steady(p, eps);
      const double lam = 2.0 / 3.0 * std::sqrt(2.0) * eps;
      const double r1 = std::sqrt(s.n1), r2 = std::sqrt(s.n2);
      const double f1 = -r1 + lam * r2 + 2.0 * p.xi_p * r1 * r2;
      const double f2 = -r2 + lam * r1 - p.xi_p * r1 * r1;
      CHECK(std::abs(f1) < 1e-11 * r1);
      CHECK(std::abs(f2) < 1e-11 * r1);
    }
  }
}

TEST_CASE("mean-field integration") {
  OpoParams p = fig3_params();

  SUBCASE("undriven amplitudes decay") {
    p.drive = 0.0;
    MeanFieldState init;
    init << Complex{0.5, 0.2}, Complex{0.3, -0.4}, Complex{0.2, 0.1};
    MeanFieldResult r = meanfield_integrate(p, init, 30.0);
    CHECK(r.final_state.norm() < 1e-8);
    CHECK(r.stationary);
  }

  SUBCASE("stiff pump converges to the bright branch within 2 percent") {
    // Away from the eps = 1 fold the finite-gamma0 back-reaction is O(1%).
    p.gamma0 = 100.0;
    const double eps = 1.1;
    p.drive = eps * threshold(p);
    SemiclassicalSteady s = semiclassical_steady(p, eps);
    MeanFieldState init;
    init << Complex{p.drive / p.gamma0, 0}, Complex{0.9 * std::sqrt(s.n1), 0},
        Complex{0.9 * std::sqrt(s.n2), 0};
    MeanFieldResult r = meanfield_integrate(p, init, 60.0);
    CHECK(std::norm(r.final_state(1)) == doctest::Approx(s.n1).epsilon(0.02));
    CHECK(std::norm(r.final_state(2)) == doctest::Approx(s.n2).epsilon(0.02));
    // gamma0 -> infinity removes the residual deviation
    OpoParams stiffer = p;
    stiffer.gamma0 = 3000.0;
    stiffer.drive = eps * threshold(stiffer);
    MeanFieldResult r2 = meanfield_integrate(stiffer, init, 60.0);
    CHECK(std::norm(r2.final_state(1)) == doctest::Approx(s.n1).epsilon(0.001));
  }

  SUBCASE("attractor phases lock to the threefold set") {
    p.gamma0 = 100.0;
    p.drive_phase = 0.6;
    const double eps = 1.3;
    p.drive = eps * threshold(p);
    SemiclassicalSteady s = semiclassical_steady(p, eps);
    // seed near the n = 1 phase state
    const double phi1 = s.phases1[1];
    MeanFieldState init;
    init << Complex{0, 0}, std::sqrt(s.n1) * std::exp(Complex(0, phi1 + 0.05)),
        std::sqrt(s.n2) * std::exp(Complex(0, 2 * (phi1 + 0.05)));
    MeanFieldResult r = meanfield_integrate(p, init, 80.0);
    const double got = std::arg(r.final_state(1));
    double diff = std::remainder(got - phi1, 2.0 * M_PI);
    CHECK(std::abs(diff) < 1e-6);
    // mode 2 locks at twice the mode-1 phase
    double diff2 = std::remainder(std::arg(r.final_state(2)) - 2.0 * got, 2.0 * M_PI);
    CHECK(std::abs(diff2) < 1e-6);
  }

  SUBCASE("bistable window shows coexisting attractors") {
    p.gamma0 = 100.0;
    auto scan = bistability_scan(p, 1.03, 1.03, 1, 600.0);
    REQUIRE(scan.size() == 1);
    CHECK(scan[0].coexistence);
    CHECK(scan[0].n1_from_vacuum < 1.0);
    // Near the fold dn1/deps ~ 15 n1, so the finite-gamma0 attractor sits a
    // few percent off the closed form; the branch identity is what matters.
    SemiclassicalSteady s = semiclassical_steady(p, 1.03);
    CHECK(scan[0].n1_from_bright == doctest::Approx(s.n1).epsilon(0.15));
  }

  SUBCASE("no coexistence outside the window") {
    p.gamma0 = 100.0;
    auto below = bistability_scan(p, 0.90, 0.90, 1, 400.0);
    CHECK_FALSE(below[0].coexistence);
    auto above = bistability_scan(p, 1.10, 1.10, 1, 400.0);
    CHECK_FALSE(above[0].coexistence);
    CHECK(above[0].n1_from_vacuum > 1.0);  // trivial branch destabilized
  }
}
