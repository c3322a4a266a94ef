#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cpdc/cascade_states.hpp"
#include "cpdc/fock.hpp"

using namespace cpdc;

TEST_CASE("fock register bookkeeping") {
  ModeRegister reg = triplet_register(3);
  CHECK(reg.dim() == 81);
  CHECK(basis_index(reg, {0, 0, 0, 0}) == 0);
  CHECK(basis_index(reg, {1, 0, 0, 0}) == 27);
  CHECK(occupation_of(reg, 27) == std::vector<int>{1, 0, 0, 0});
  CHECK(basis_label(reg, 27) == "|1,0,0,0>");

  // a a+ = n + 1 on a single mode
  SparseXc a = annihilation_single(4);
  MatrixXc prod = MatrixXc(a) * MatrixXc(a).adjoint();
  for (int n = 0; n < 3; ++n) CHECK(std::real(prod(n, n)) == doctest::Approx(n + 1.0));

  // embedded commutator [a, a+] = 1 away from the truncation edge
  SparseXc a1 = annihilation(reg, 1);
  MatrixXc comm = MatrixXc(a1) * MatrixXc(creation(reg, 1)) -
                  MatrixXc(creation(reg, 1)) * MatrixXc(a1);
  VectorXc probe = basis_state(reg, {1, 1, 0, 2});
  CHECK(std::abs((comm * probe - probe).norm()) < 1e-14);
}

TEST_CASE("partial trace") {
  ModeRegister reg;
  reg.modes = {{"x", 3, 0}, {"y", 4, 0}};
  // product state rho = |1><1| (x) rho_y
  MatrixXc rho_y = MatrixXc::Zero(4, 4);
  rho_y(0, 0) = 0.25;
  rho_y(1, 1) = 0.75;
  rho_y(0, 1) = rho_y(1, 0) = 0.2;
  MatrixXc rho = MatrixXc::Zero(12, 12);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) rho(4 + m, 4 + n) = rho_y(m, n);
  MatrixXc red_y = partial_trace_keep(reg, rho, 1);
  CHECK((red_y - rho_y).norm() < 1e-14);
  MatrixXc red_x = partial_trace_keep(reg, rho, 0);
  CHECK(std::real(red_x(1, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(red_x.trace() - rho.trace()) < 1e-12);

  // maximally correlated state has a maximally mixed marginal
  MatrixXc corr = MatrixXc::Zero(12, 12);
  for (int m = 0; m < 3; ++m)
    for (int n = 0; n < 3; ++n) corr(m * 4 + m, n * 4 + n) = 1.0 / 3.0;
  MatrixXc marg = partial_trace_keep(reg, corr, 0);
  for (int m = 0; m < 3; ++m) CHECK(std::real(marg(m, m)) == doctest::Approx(1.0 / 3.0));

  // pure-state reduction agrees with the projector route
  VectorXc psi = VectorXc::Zero(12);
  psi(1) = Complex{0.6, 0.0};
  psi(4 + 2) = Complex{0.0, 0.8};
  MatrixXc via_proj = partial_trace_keep(reg, MatrixXc(psi * psi.adjoint()), 1);
  CHECK((reduced_density(reg, psi, 1) - via_proj).norm() < 1e-14);
}

TEST_CASE("triplet hamiltonians") {
  ModeRegister reg = triplet_register(4);
  const Complex zeta{0.3, 0.1}, xi{0.7, -0.2}, e0{2.0, 0.5};
  auto [h1, h2] = build_triplet_hamiltonians(reg, zeta, xi, e0);

  SUBCASE("H1 on vacuum populates exactly |1b,1a1>") {
    VectorXc v = MatrixXc(h1) * vacuum_state(reg);
    const long target = basis_index(reg, {1, 1, 0, 0});
    CHECK(std::abs(v(target) - Complex{0, 1} * zeta * e0) < 1e-14);
    v(target) = 0;
    CHECK(v.norm() < 1e-14);
  }
  SUBCASE("H2 annihilates vacuum") {
    CHECK((MatrixXc(h2) * vacuum_state(reg)).norm() < 1e-15);
  }
  SUBCASE("hermiticity") {
    CHECK((MatrixXc(h1) - MatrixXc(h1).adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((MatrixXc(h2) - MatrixXc(h2).adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("cutoff below two levels is rejected") {
    ModeRegister bad = triplet_register(4);
    bad.modes[1].levels = 1;
    CHECK_THROWS_AS(build_triplet_hamiltonians(bad, zeta, xi, e0), ConfigError);
  }
}

TEST_CASE("dyson second order") {
  ModeRegister reg = triplet_register(4);
  const double zeta = 0.4, xi = 0.9, e0 = 1.7, t = 0.31;
  auto [h1, h2] = build_triplet_hamiltonians(reg, zeta, xi, e0);
  SparseXc h = SparseXc(h1 + h2);
  VectorXc vac = vacuum_state(reg);

  SUBCASE("zero hamiltonian gives the zero vector") {
    SparseXc zero(reg.dim(), reg.dim());
    CHECK(dyson_second_order(zero, t, vac).norm() == 0.0);
  }
  SUBCASE("three-photon sector comes only from the H2 H1 word") {
    VectorXc dyson = dyson_second_order(h, t, vac);
    VectorXc ordered = ordered_second_order(h2, h1, t, vac);
    // H1 H2 annihilates vacuum, so the ordered word is pure three-photon
    CHECK((MatrixXc(h1) * (MatrixXc(h2) * vac)).norm() < 1e-15);
    const long idx = basis_index(reg, {0, 1, 1, 1});
    CHECK(std::abs(dyson(idx) - 0.5 * ordered(idx)) < 1e-14);
    // and the rest of the Dyson term lives outside that sector
    VectorXc rest = dyson;
    rest(idx) = 0;
    for (long i = 0; i < rest.size(); ++i)
      if (std::abs(rest(i)) > 1e-14) {
        std::vector<int> occ = occupation_of(reg, i);
        CHECK((occ[2] == 0 && occ[3] == 0));  // no a2/a3 photons anywhere else
      }
  }
  SUBCASE("printed amplitude E0 zeta-bar xi-bar on |0,1,1,1>") {
    VectorXc ordered = ordered_second_order(h2, h1, t, vac);
    const long idx = basis_index(reg, {0, 1, 1, 1});
    CHECK(std::abs(ordered(idx) - e0 * (t * zeta) * (t * xi)) < 1e-13);
  }
  SUBCASE("triplet amplitude is bilinear in the couplings and quadratic in t") {
    auto amp = [&](double z, double x, double tt) {
      auto [g1, g2] = build_triplet_hamiltonians(reg, z, x, e0);
      return ordered_second_order(g2, g1, tt, vac)(basis_index(reg, {0, 1, 1, 1}));
    };
    Complex base = amp(zeta, xi, t);
    CHECK(std::abs(amp(2 * zeta, xi, t) - 2.0 * base) < 1e-13);
    CHECK(std::abs(amp(zeta, 3 * xi, t) - 3.0 * base) < 1e-13);
    CHECK(std::abs(amp(zeta, xi, 2 * t) - 4.0 * base) < 1e-13);
  }
  SUBCASE("matches the t^2 coefficient of the exact propagator") {
    // Richardson: (8 D(t/2) - D(t)) / t^2 isolates the quadratic coefficient
    // of D(t) = U(t)psi - psi + i t H psi up to O(t^2) corrections.
    const double tt = 3e-3 / std::sqrt((MatrixXc(h) * MatrixXc(h)).norm());
    MatrixXc hd = MatrixXc(h);
    auto defect = [&](double s) {
      MatrixXc u = (Complex{0, -1} * s * hd).exp();
      return VectorXc(u * vac - vac + Complex{0, 1} * s * (hd * vac));
    };
    VectorXc extracted = (8.0 * defect(0.5 * tt) - defect(tt)) / (tt * tt);
    VectorXc dyson = dyson_second_order(h, 1.0, vac);  // t = 1 holds H^2/2
    CHECK((extracted - dyson).norm() < 1e-4 * dyson.norm());
  }
}

TEST_CASE("cascade charge conservation under exact evolution") {
  ModeRegister reg = triplet_register(4);
  auto [h1, h2] = build_triplet_hamiltonians(reg, 0.8, 0.5, 1.0);
  // Drive-free words: H2 conserves 2 n_b + n_2 + n_3 (and touches nothing else).
  SparseXc charge = weighted_number_sum(reg, {2.0, 0.0, 1.0, 1.0});
  MatrixXc h2d = MatrixXc(h2);
  MatrixXc u = (Complex{0, -1} * 0.7 * h2d).exp();
  VectorXc psi = basis_state(reg, {1, 0, 1, 0});
  VectorXc evolved = u * psi;
  CHECK(expectation(charge, evolved) ==
        doctest::Approx(expectation(charge, psi)).epsilon(1e-10));
}

TEST_CASE("ghz state") {
  ModeRegister reg = ghz_register(5);

  SUBCASE("equal couplings reach unit fidelity") {
    GhzResult res = ghz_state(reg, 0.9, 1.3, Complex{1.0, 0.0}, 0.7);
    CHECK(res.fidelity == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(res.amplitude_21 - res.amplitude_12) < 1e-13);
    // amplitude value chi-bar k-bar E0 sqrt(2)
    const double expect = 0.7 * 0.9 * 0.7 * 1.3 * std::sqrt(2.0);
    CHECK(std::abs(res.amplitude_21 - Complex{expect, 0.0}) < 1e-12);
  }
  SUBCASE("k = 0 yields no triplet") {
    GhzResult res = ghz_state(reg, 1.0, 0.0, Complex{1.0, 0.0});
    CHECK(res.state.norm() < 1e-14);
    CHECK(res.fidelity == 0.0);
  }
  SUBCASE("unequal couplings: overlap (kv+kh)^2 / (2(kv^2+kh^2))") {
    const double kv = 1.0, kh = 0.4;
    GhzResult res = ghz_state(reg, 1.0, kv, kh, Complex{1.0, 0.0});
    const double expect = (kv + kh) * (kv + kh) / (2.0 * (kv * kv + kh * kh));
    CHECK(res.fidelity == doctest::Approx(expect).epsilon(1e-12));
    // hand-computed amplitude ratio
    CHECK(std::abs(res.amplitude_21 / res.amplitude_12 - Complex{kv / kh, 0.0}) < 1e-12);
  }
  SUBCASE("missing polarization labels are rejected") {
    ModeRegister bad = reg;
    bad.modes[2].polarization = 0;
    CHECK_THROWS_AS(ghz_state(bad, 1.0, 1.0, Complex{1.0, 0.0}), ConfigError);
  }
}
