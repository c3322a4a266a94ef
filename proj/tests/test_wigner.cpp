#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cpdc/rng.hpp"
#include "cpdc/wigner.hpp"

using namespace cpdc;

namespace {
VectorXc coherent_vector(int levels, Complex alpha) {
  VectorXc v(levels);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < levels; ++n) {
    v(n) = amp;
    amp *= alpha / std::sqrt(double(n + 1));
  }
  return v;
}

// Independent oracle: W(x,y) = (1/pi) Tr[rho D(alpha) P D(alpha)^+] with
// alpha = (x + i y)/sqrt(2), D built by dense matrix exponential in a padded
// space, P the photon-number parity.
double wigner_displaced_parity(const MatrixXc& rho, double x, double y, int pad) {
  const int n = static_cast<int>(rho.rows());
  MatrixXc a = MatrixXc::Zero(pad, pad);
  for (int k = 1; k < pad; ++k) a(k - 1, k) = std::sqrt(double(k));
  const Complex alpha = Complex{x, y} / std::sqrt(2.0);
  MatrixXc d = (alpha * a.adjoint() - std::conj(alpha) * a).exp();
  MatrixXc big = MatrixXc::Zero(pad, pad);
  big.topLeftCorner(n, n) = rho;
  MatrixXc shifted = d.adjoint() * big * d;
  Complex tr{0, 0};
  for (int k = 0; k < pad; ++k) tr += (k % 2 == 0 ? 1.0 : -1.0) * shifted(k, k);
  return std::real(tr) / M_PI;
}
}  // namespace

TEST_CASE("vacuum wigner") {
  MatrixXc rho = MatrixXc::Zero(8, 8);
  rho(0, 0) = 1.0;
  CHECK(wigner_point(rho, 0, 0) == doctest::Approx(1.0 / M_PI).epsilon(1e-12));
  CHECK(wigner_point(rho, 1.1, -0.7) ==
        doctest::Approx(std::exp(-(1.1 * 1.1 + 0.7 * 0.7)) / M_PI).epsilon(1e-12));

  std::vector<double> ax;
  for (int i = 0; i < 81; ++i) ax.push_back(-6.0 + 12.0 * i / 80.0);
  MatrixXd w = wigner_grid(rho, ax, ax);
  CHECK(wigner_grid_integral(w, ax, ax) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fock one is maximally negative at the origin") {
  MatrixXc rho = MatrixXc::Zero(8, 8);
  rho(1, 1) = 1.0;
  CHECK(wigner_point(rho, 0, 0) == doctest::Approx(-1.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("coherent state peaks at sqrt(2) alpha") {
  const Complex alpha{0.9, -0.6};
  VectorXc psi = coherent_vector(40, alpha);
  MatrixXc rho = psi * psi.adjoint();
  const double x0 = std::sqrt(2.0) * alpha.real();
  const double y0 = std::sqrt(2.0) * alpha.imag();
  CHECK(wigner_point(rho, x0, y0) == doctest::Approx(1.0 / M_PI).epsilon(1e-9));
  for (double dx : {-0.9, 0.4})
    for (double dy : {0.3, -0.5}) {
      const double expect = std::exp(-(dx * dx + dy * dy)) / M_PI;
      CHECK(wigner_point(rho, x0 + dx, y0 + dy) == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("parity identity at the origin") {
  CounterRng rng(5, 0);
  const int n = 9;
  MatrixXc rho = MatrixXc::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rho(i, j) = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  double parity = 0;
  for (int i = 0; i < n; ++i) parity += (i % 2 ? -1.0 : 1.0) * std::real(rho(i, i));
  CHECK(wigner_point(rho, 0, 0) == doctest::Approx(parity / M_PI).epsilon(1e-10));
}

TEST_CASE("matches the displaced-parity oracle") {
  CounterRng rng(17, 0);
  const int n = 10;
  MatrixXc m = MatrixXc::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex{rng.uniform() - 0.5, rng.uniform() - 0.5};
  MatrixXc rho = m * m.adjoint();
  rho /= rho.trace().real();
  for (double x : {0.0, 0.8, -1.7})
    for (double y : {0.0, -0.6, 1.2}) {
      const double oracle = wigner_displaced_parity(rho, x, y, 64);
      CHECK(wigner_point(rho, x, y) == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("phase rotation covariance") {
  VectorXc psi = coherent_vector(30, Complex{1.1, 0.0});
  MatrixXc rho = psi * psi.adjoint();
  const double theta = 2.0 * M_PI / 3.0;
  MatrixXc rotated = rho;
  for (int m = 0; m < 30; ++m)
    for (int k = 0; k < 30; ++k) rotated(m, k) *= std::exp(Complex(0, theta * (m - k)));
  // rotating the state rotates the distribution
  const double r = std::sqrt(2.0) * 1.1;
  CHECK(wigner_polar(rotated, r, theta) == doctest::Approx(wigner_polar(rho, r, 0.0)).epsilon(1e-9));
}

TEST_CASE("large cutoff stays finite and normalized") {
  const Complex alpha{8.0, 3.0};  // n-bar = 73
  VectorXc psi = coherent_vector(161, alpha);
  MatrixXc rho = psi * psi.adjoint();
  const double x0 = std::sqrt(2.0) * alpha.real(), y0 = std::sqrt(2.0) * alpha.imag();
  CHECK(wigner_point(rho, x0, y0) == doctest::Approx(1.0 / M_PI).epsilon(1e-6));
  CHECK(std::isfinite(wigner_point(rho, -14.0, -14.0)));
  CHECK(std::abs(wigner_point(rho, -14.0, -14.0)) < 1e-12);
}
