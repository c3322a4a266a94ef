#include "cpdc/jsa.hpp"

#include <cmath>
#include <thread>

#include "cpdc/quadrature.hpp"

namespace cpdc {

namespace {
Complex polar_unit(double phase) { return {std::cos(phase), std::sin(phase)}; }
}  // namespace

Complex amplitude_resonant(const PumpPulse& pulse, const CouplingFunctions& c, double nu1,
                           double nu2, double nu3) {
  const double w13 = pulse.omega0 / 3.0;
  const double w1 = w13 + nu1, w1p = w13 + nu2, w1pp = w13 + nu3;
  const double w2 = w1p + w1pp;
  const double w = w1 + w1p + w1pp;
  return pump_spectrum(pulse, w) * c.zeta(w, w1, w2) * c.xi(w1p, w1pp, w2);
}

namespace {
Complex pole_integral(const CouplingFunctions& c, double w, double w1, double w1p, double w1pp,
                      double eps, const FullIntegralOptions& opt) {
  const double res = w1p + w1pp;  // resonance position in w2
  auto integrand = [&](double w2) {
    return c.zeta(w, w1, w2) * c.xi(w1p, w1pp, w2) / Complex{res - w2, eps};
  };
  // Split at the pole so the adaptive panels see smooth pieces.
  const double inner = std::min(10.0 * eps, 0.5 * opt.half_window);
  QuadratureResult total;
  const double edges[4] = {res - opt.half_window, res - inner, res + inner,
                           res + opt.half_window};
  for (int s = 0; s < 3; ++s) {
    QuadratureResult r =
        integrate_adaptive(integrand, edges[s], edges[s + 1], opt.abs_tol, opt.rel_tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total.value;
}
}  // namespace

Complex amplitude_full(const PumpPulse& pulse, const CouplingFunctions& c, double nu1, double nu2,
                       double nu3, const FullIntegralOptions& opt) {
  if (!(opt.epsilon > 0.0)) throw ConfigError("amplitude_full: epsilon must be > 0");
  const double w13 = pulse.omega0 / 3.0;
  const double w1 = w13 + nu1, w1p = w13 + nu2, w1pp = w13 + nu3;
  const double w = w1 + w1p + w1pp;

  Complex integral = pole_integral(c, w, w1, w1p, w1pp, opt.epsilon, opt);
  if (opt.richardson) {
    Complex halved = pole_integral(c, w, w1, w1p, w1pp, 0.5 * opt.epsilon, opt);
    integral = 2.0 * halved - integral;
  }
  return Complex{0.0, 1.0 / M_PI} * pump_spectrum(pulse, w) * integral;
}

GaussianQuadraticForm gaussian_exponent_coefficients(const WalkoffSet& w,
                                                     const std::array<Polarization, 3>& pol) {
  const double tp2 = w.tau_p * w.tau_p;
  const double M = static_cast<double>(w.m_domains);
  const double N = static_cast<double>(w.n_domains);
  const double Ta = w.T_of(pol[0]), Tb = w.T_of(pol[1]), Tc = w.T_of(pol[2]);
  const double sb = w.t_of(pol[1]) + w.rho_of(pol[1]);
  const double sc = w.t_of(pol[2]) + w.rho_of(pol[2]);

  GaussianQuadraticForm q;
  q.diag[0] = 0.5 * tp2 + M * M / 20.0 * Ta * Ta;
  q.diag[1] = 0.5 * tp2 + M * M / 20.0 * Tb * Tb + N * N / 80.0 * sb * sb;
  q.diag[2] = 0.5 * tp2 + M * M / 20.0 * Tc * Tc + N * N / 80.0 * sc * sc;
  q.cross[0] = tp2 + M * M / 10.0 * Ta * Tb;
  q.cross[1] = tp2 + M * M / 10.0 * Ta * Tc;
  // The nu2*nu3 pair factor carries (M^2+1)/10 and the photon-1/photon-2
  // polarization pair in the walkoff product, as derived for this lattice.
  q.cross[2] = tp2 + (M * M + 1.0) / 10.0 * Ta * Tb + N * N / 40.0 * sb * sc;
  return q;
}

Complex amplitude_gaussian(const WalkoffSet& w, const std::array<Polarization, 3>& pol, double nu1,
                           double nu2, double nu3) {
  const double M = static_cast<double>(w.m_domains);
  const double N = static_cast<double>(w.n_domains);
  GaussianQuadraticForm q = gaussian_exponent_coefficients(w, pol);

  const double exponent = q.diag[0] * nu1 * nu1 + q.diag[1] * nu2 * nu2 + q.diag[2] * nu3 * nu3 +
                          q.cross[0] * nu1 * nu2 + q.cross[1] * nu1 * nu3 + q.cross[2] * nu2 * nu3;
  const double phase =
      -0.5 * M * (w.T_of(pol[0]) * nu1 + w.T_of(pol[1]) * nu2 + w.T_of(pol[2]) * nu3) -
      0.25 * N *
          ((w.t_of(pol[1]) + w.rho_of(pol[1])) * nu2 + (w.t_of(pol[2]) + w.rho_of(pol[2])) * nu3);
  return std::exp(-exponent) * polar_unit(phase);
}

JointAmplitudeGrid build_grid(const std::function<Complex(double, double, double)>& amplitude,
                              std::vector<double> nu1, std::vector<double> nu2,
                              std::vector<double> nu3) {
  JointAmplitudeGrid grid;
  grid.nu1 = std::move(nu1);
  grid.nu2 = std::move(nu2);
  grid.nu3 = std::move(nu3);
  grid.values.assign(grid.nu1.size() * grid.nu2.size() * grid.nu3.size(), Complex{0, 0});

  auto fill_rows = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < grid.nu2.size(); ++j)
        for (std::size_t k = 0; k < grid.nu3.size(); ++k)
          grid.at(i, j, k) = amplitude(grid.nu1[i], grid.nu2[j], grid.nu3[k]);
  };
  const std::size_t n1 = grid.nu1.size();
  if (n1 >= 8) {
    std::thread worker(fill_rows, 0, n1 / 2);
    fill_rows(n1 / 2, n1);
    worker.join();
  } else {
    fill_rows(0, n1);
  }
  return grid;
}

JointAmplitudeGrid build_gaussian_grid(const WalkoffSet& w, const std::array<Polarization, 3>& pol,
                                       const GridOptions& opt) {
  GaussianQuadraticForm q = gaussian_exponent_coefficients(w, pol);
  auto axis = [&](double a) {
    // |Phi|^2 ~ exp(-2 a nu^2), std dev 1/(2 sqrt(a)).
    const double half = opt.span_sigmas / (2.0 * std::sqrt(a));
    std::vector<double> nu(opt.points);
    for (std::size_t i = 0; i < opt.points; ++i)
      nu[i] = -half + 2.0 * half * static_cast<double>(i) / static_cast<double>(opt.points - 1);
    return nu;
  };
  JointAmplitudeGrid grid = build_grid(
      [&](double a, double b, double c) { return amplitude_gaussian(w, pol, a, b, c); },
      axis(q.diag[0]), axis(q.diag[1]), axis(q.diag[2]));
  grid.polarizations = pol;
  grid.route = "gaussian";
  return grid;
}

}  // namespace cpdc
