#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cpdc/coupling.hpp"
#include "cpdc/dispersion.hpp"
#include "cpdc/numerics.hpp"
#include "cpdc/qpm_design.hpp"
#include "cpdc/rng.hpp"

using namespace cpdc;

namespace {
// Oracle: every closed form must match the explicit layer enumeration.
Complex oracle_dual(const DualGridParams& g, double dk) {
  auto layers = expand_dual_grid(g);
  return coupling_sum(layers, dk);
}

Complex oracle_spacer(const SpacerGridParams& g, double dk2, double dkappa2) {
  auto layers = expand_spacer_grid(g);
  std::vector<double> dks;
  for (const auto& l : layers) dks.push_back(l.chi == 0.0 ? dkappa2 : dk2);
  return coupling_sum(layers, dks);
}
}  // namespace

TEST_CASE("mismatch through dispersion models") {
  DispersionModel flat{.carrier_frequency = 0, .k0 = 10, .inv_group_velocity = 1};
  DispersionModel k1{.carrier_frequency = 0, .k0 = 3, .inv_group_velocity = 1};
  DispersionModel k2{.carrier_frequency = 0, .k0 = 4, .inv_group_velocity = 1};

  SUBCASE("exact zero by symmetry") {
    DispersionModel same{.carrier_frequency = 0, .k0 = 5, .inv_group_velocity = 1};
    DispersionModel sum{.carrier_frequency = 0, .k0 = 10, .inv_group_velocity = 1};
    MismatchSpec spec{Process::Primary, sum, same, same};
    CHECK(mismatch(spec, 0, 0, 0) == 0.0);
  }
  SUBCASE("zero-order arithmetic") {
    MismatchSpec spec{Process::Primary, flat, k1, k2};
    CHECK(mismatch(spec, 0, 0, 0) == doctest::Approx(3.0));
  }
  SUBCASE("first-order Taylor evaluation") {
    DispersionModel pump{.carrier_frequency = 0, .k0 = 7, .inv_group_velocity = 2};
    DispersionModel d1{.carrier_frequency = 0, .k0 = 3, .inv_group_velocity = 1};
    DispersionModel d2{.carrier_frequency = 0, .k0 = 4, .inv_group_velocity = 1};
    MismatchSpec spec{Process::Primary, pump, d1, d2};
    // dk = 2*1 - 1*0.5 - 1*0.5 = 1 on top of matched zero order
    CHECK(mismatch(spec, 1.0, 0.5, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("coupling_sum basics") {
  SUBCASE("single layer closed form") {
    std::vector<LayerSpec> layers{{2.0, 1.5, "nl"}};
    const double dk = 0.37;
    Complex expect =
        2.0 * 1.5 * std::exp(Complex(0, -dk * 1.0)) * std::sin(dk) / dk;  // l chi e^{-i dk l/2} sinc
    Complex got = coupling_sum(layers, dk);
    CHECK(std::abs(got - expect) < 1e-14);
  }
  SUBCASE("two opposite layers cancel at dk l = 2 pi") {
    const double l = 1.0, dk = 2.0 * M_PI;
    std::vector<LayerSpec> layers{{l, 1.0, "nl"}, {l, -1.0, "nl"}};
    CHECK(std::abs(coupling_sum(layers, dk)) < 1e-14);
  }
  SUBCASE("zero mismatch sums chi lengths") {
    std::vector<LayerSpec> layers{{1.0, 2.0, "a"}, {0.5, -1.0, "b"}, {2.0, 0.25, "c"}};
    Complex got = coupling_sum(layers, 0.0);
    CHECK(got.real() == doctest::Approx(2.0 - 0.5 + 0.5));
    CHECK(got.imag() == 0.0);
  }
  SUBCASE("empty list is a configuration error") {
    std::vector<LayerSpec> layers;
    CHECK_THROWS_AS(coupling_sum(layers, 1.0), ConfigError);
  }
}

TEST_CASE("dual-grid closed form equals the layer oracle") {
  DualGridParams g;
  g.m_domains = 37;
  g.l1 = 2e-6;
  g.n_domains = 24;
  g.l2 = 3.1e-6;
  g.chi = 0.8;
  for (double frac : {0.0, 0.3, 0.9999, 1.0, 1.37, 2.0}) {
    const double dk = frac * g.q1();
    Complex closed = zeta_dualgrid(g, dk);
    Complex oracle = oracle_dual(g, dk);
    CHECK(std::abs(closed - oracle) <= 1e-10 * std::max(1e-300, std::abs(oracle)));
  }
}

TEST_CASE("zeta at exact resonance: Dirichlet limit M") {
  DualGridParams g;
  g.m_domains = 13;  // 13 = 1 mod 4: the section phase factor is +1
  g.l1 = 1.7e-6;
  g.n_domains = 0;
  g.l2 = 1.0e-6;
  g.chi = 1.0;
  const double q1 = g.q1();
  Complex got = zeta_dualgrid_terms(g, q1).section1;
  Complex expect = double(g.m_domains) * g.l1 * g.chi *
                   std::exp(Complex(0, -0.5 * g.length1() * q1)) * sinc(0.5 * g.l1 * q1);
  CHECK(std::abs(got - expect) < 1e-12 * std::abs(expect));
  // for general M the magnitude keeps the M sinc(l1 q1 / 2) form
  g.m_domains = 20;
  CHECK(std::abs(zeta_dualgrid_terms(g, g.q1()).section1) ==
        doctest::Approx(20.0 * g.l1 * sinc(0.5 * g.l1 * g.q1())).epsilon(1e-12));
}

TEST_CASE("zeta first Dirichlet zero") {
  DualGridParams g;
  g.m_domains = 16;
  g.l1 = 2.3e-6;
  g.n_domains = 0;
  g.l2 = 1e-6;
  const double dk = g.q1() + 2.0 * M_PI / (g.m_domains * g.l1);
  CHECK(std::abs(zeta_dualgrid_terms(g, dk).section1) < 1e-12 * g.length1());
}

TEST_CASE("all Dirichlet zeros vanish for the single-section lattice") {
  DualGridParams g;
  g.m_domains = 12;
  g.l1 = 1e-6;
  g.n_domains = 0;
  g.l2 = 1e-6;
  const double scale = g.length1() * std::abs(zeta_sinc_approx(g, g.q1()));
  for (int j = 1; j < 2 * g.m_domains; ++j) {
    if (j % g.m_domains == 0) continue;
    const double dk = g.q1() + 2.0 * M_PI * j / (g.m_domains * g.l1);
    CHECK(std::abs(zeta_dualgrid(g, dk)) < 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("sinc approximation near the QPM point") {
  DualGridParams g;
  g.m_domains = 200;
  g.l1 = 1e-6;
  g.n_domains = 0;
  g.l2 = 1e-6;
  const double q1 = g.q1(), L1 = g.length1();

  SUBCASE("peak magnitude (2/pi) M l1 chi") {
    CHECK(std::abs(zeta_sinc_approx(g, q1)) ==
          doctest::Approx(2.0 / M_PI * g.m_domains * g.l1).epsilon(1e-14));
  }
  SUBCASE("first envelope zero") {
    CHECK(std::abs(zeta_sinc_approx(g, q1 + 2.0 * M_PI / L1)) < 1e-16);
  }
  SUBCASE("within 5 percent of the exact first term over the central lobe") {
    for (int i = -10; i <= 10; ++i) {
      const double dk = q1 + (M_PI / (2.0 * L1)) * (double(i) / 10.0);
      const double approx = std::abs(zeta_sinc_approx(g, dk));
      const double exact = std::abs(zeta_dualgrid_terms(g, dk).section1);
      CHECK(std::abs(approx - exact) <= 0.05 * std::abs(zeta_dualgrid(g, dk)));
    }
  }
}

TEST_CASE("xi dual-grid: resonance in the second section") {
  DualGridParams g;
  g.m_domains = 30;
  g.l1 = 1.0e-6;
  g.n_domains = 40;
  g.l2 = 1.45e-6;  // q2 well separated from q1
  const double q2 = g.q2();
  DualGridCoupling terms = xi_dualgrid_terms(g, q2);
  CHECK(std::abs(terms.section2) > 10.0 * std::abs(terms.section1));
  Complex oracle = oracle_dual(g, q2);
  CHECK(std::abs(terms.total() - oracle) <= 1e-10 * std::abs(oracle));

  SUBCASE("N = 0 leaves only the first section") {
    g.n_domains = 0;
    DualGridCoupling t0 = xi_dualgrid_terms(g, q2);
    CHECK(t0.section2 == Complex{0, 0});
    CHECK(std::abs(t0.section1) > 0.0);
  }
}

TEST_CASE("linear-spacer xi equals the alternating layer oracle") {
  SpacerGridParams g;
  g.n_domains = 36;
  g.l2 = 2.2e-6;
  g.l3 = 1.4e-6;
  g.chi = 1.3;
  const double dk2 = 0.8e6, dkappa2 = -0.9e6;
  Complex closed = xi_linear_spacers(g, dk2, dkappa2);
  Complex oracle = oracle_spacer(g, dk2, dkappa2);
  CHECK(std::abs(closed - oracle) <= 1e-10 * std::abs(oracle));

  SUBCASE("perfect QPM: Dirichlet limit N/2") {
    // dK = 0 along the line l2 dk2 + l3 dkappa2 = 0
    const double dk = 1.1e6;
    const double dkap = -g.l2 * dk / g.l3;
    Complex v = xi_linear_spacers(g, dk, dkap);
    CHECK(std::abs(v) == doctest::Approx(0.5 * g.n_domains * g.l2 * g.chi *
                                         std::abs(sinc(0.5 * g.l2 * dk)))
                             .epsilon(1e-12));
  }
  SUBCASE("l3 -> 0 approaches a uniform-chi grating") {
    SpacerGridParams tiny = g;
    tiny.l3 = 1e-13;
    Complex v = xi_linear_spacers(tiny, dk2, dkappa2);
    Complex o = oracle_spacer(tiny, dk2, dkappa2);
    CHECK(std::abs(v - o) <= 1e-10 * std::abs(o));
    // matches a single uniform block of N/2 contiguous layers up to the
    // residual spacer phase ~ N l3 |dkappa|
    std::vector<LayerSpec> solid;
    for (long j = 0; j < tiny.n_domains / 2; ++j) solid.push_back({tiny.l2, tiny.chi, "nl"});
    const double phase_residual = tiny.n_domains * tiny.l3 * std::abs(dkappa2);
    CHECK(std::abs(v - coupling_sum(solid, dk2)) <= 10.0 * phase_residual * std::abs(v) + 1e-14);
  }
}

TEST_CASE("couplings are linear in chi") {
  DualGridParams g;
  g.m_domains = 21;
  g.l1 = 1e-6;
  g.n_domains = 14;
  g.l2 = 1.3e-6;
  g.chi = 0.7;
  DualGridParams doubled = g;
  doubled.chi = 1.4;
  for (double dk : {0.5 * g.q1(), g.q1(), 1.2 * g.q2()}) {
    CHECK(std::abs(zeta_dualgrid(doubled, dk)) ==
          doctest::Approx(2.0 * std::abs(zeta_dualgrid(g, dk))).epsilon(1e-13));
  }
}

TEST_CASE("peak location and parity about the QPM point") {
  DualGridParams g;
  g.m_domains = 25;
  g.l1 = 1e-6;
  g.n_domains = 0;
  g.l2 = 1e-6;
  const double q1 = g.q1(), l1 = g.l1;
  // Grid max of the section-1 magnitude lands on q1 within one step. The
  // sinc envelope pulls the continuum maximum off q1 by O(1/(l1 M^2)),
  // far below the kernel lobe width 2 pi/(M l1) that the grid resolves.
  const int n = 201;
  double best_dk = 0, best = -1;
  for (int i = 0; i < n; ++i) {
    const double dk = q1 - M_PI / (2 * l1) + M_PI / l1 * double(i) / double(n - 1);
    const double mag = std::abs(zeta_dualgrid_terms(g, dk).section1);
    if (mag > best) {
      best = mag;
      best_dk = dk;
    }
  }
  CHECK(std::abs(best_dk - q1) <= M_PI / l1 / double(n - 1) + 1e-12);

  // the sinc-envelope form is exactly even about q1
  for (double delta : {0.1 / g.length1(), 1.0 / g.length1(), 2.7 / g.length1()}) {
    CHECK(std::abs(zeta_sinc_approx(g, q1 + delta)) ==
          doctest::Approx(std::abs(zeta_sinc_approx(g, q1 - delta))).epsilon(1e-12));
    // and the Dirichlet-ratio magnitude is even as well
    CHECK(std::abs(zeta_dualgrid_terms(g, q1 + delta).section1 /
                   sinc(0.5 * l1 * (q1 + delta))) ==
          doctest::Approx(std::abs(zeta_dualgrid_terms(g, q1 - delta).section1 /
                                   sinc(0.5 * l1 * (q1 - delta))))
              .epsilon(1e-12));
  }
}

TEST_CASE("randomized oracle equivalence across lattice families") {
  CounterRng rng(99, 0);
  for (int trial = 0; trial < 30; ++trial) {
    DualGridParams g;
    g.m_domains = 2 + long(rng.uniform() * 60);
    g.l1 = 0.5e-6 + 3e-6 * rng.uniform();
    g.n_domains = long(rng.uniform() * 50);
    g.l2 = 0.5e-6 + 3e-6 * rng.uniform();
    g.chi = 0.2 + rng.uniform();
    const double dk = (rng.uniform() * 2.5) * g.q1();
    Complex closed = zeta_dualgrid(g, dk);
    Complex oracle = oracle_dual(g, dk);
    const double scale = std::max(std::abs(oracle), 1e-9 * g.m_domains * g.l1);
    CHECK(std::abs(closed - oracle) <= 1e-10 * scale);

    SpacerGridParams s;
    s.n_domains = 2 * (1 + long(rng.uniform() * 25));
    s.l2 = 0.5e-6 + 3e-6 * rng.uniform();
    s.l3 = 0.5e-6 + 3e-6 * rng.uniform();
    s.chi = 0.2 + rng.uniform();
    const double dk2 = (rng.uniform() - 0.5) * 4e6;
    const double dkap = (rng.uniform() - 0.5) * 4e6;
    Complex sc = xi_linear_spacers(s, dk2, dkap);
    Complex so = oracle_spacer(s, dk2, dkap);
    const double sscale = std::max(std::abs(so), 1e-9 * s.n_domains * s.l2);
    CHECK(std::abs(sc - so) <= 1e-10 * sscale);
  }
}

TEST_CASE("qpm design") {
  SUBCASE("d1 from the zero-order mismatch") {
    ZeroOrderMismatches mm;
    mm.dk1 = 1e6;
    QpmDesignRequest req;
    QpmDesignResult res = solve_qpm_design(mm, req);
    REQUIRE(res.feasible);
    CHECK(*res.d1 == doctest::Approx(2.0 * M_PI / 1e6).epsilon(1e-14));
  }
  SUBCASE("spacer pair satisfies both conditions") {
    ZeroOrderMismatches mm;
    mm.dk1 = 1e6;
    mm.dk2 = -0.7e6;
    mm.dkappa2 = 0.4e6;
    mm.has_spacer = true;
    QpmDesignRequest req;
    req.want_d1 = false;
    req.want_spacers = true;
    QpmDesignResult res = solve_qpm_design(mm, req);
    REQUIRE(res.feasible);
    CHECK(*res.l2 * mm.dk2 + *res.l3 * mm.dkappa2 == doctest::Approx(0.0).scale(1.0));
    CHECK(mm.dkappa2 == doctest::Approx(M_PI / *res.l3).epsilon(1e-12));
    CHECK(*res.l2 * mm.dk2 == doctest::Approx(-M_PI).epsilon(1e-12));
  }
  SUBCASE("same-sign mismatches are reported infeasible") {
    ZeroOrderMismatches mm;
    mm.dk2 = 0.7e6;
    mm.dkappa2 = 0.4e6;
    mm.has_spacer = true;
    QpmDesignRequest req;
    req.want_d1 = false;
    req.want_spacers = true;
    QpmDesignResult res = solve_qpm_design(mm, req);
    CHECK_FALSE(res.feasible);
    CHECK(res.residual_compensation > 0.0);
    CHECK_FALSE(res.message.empty());
  }
  SUBCASE("unknown material id") {
    DispersionTable table;
    CHECK_THROWS_AS(table.at("missing"), ConfigError);
  }
}
