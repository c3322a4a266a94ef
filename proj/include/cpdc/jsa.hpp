#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "cpdc/pump.hpp"
#include "cpdc/types.hpp"
#include "cpdc/walkoff.hpp"

namespace cpdc {

/// Coupling constants as functions of absolute frequencies:
///   zeta(w_pump, w1, w2) and xi(w1', w1'', w2).
struct CouplingFunctions {
  std::function<Complex(double, double, double)> zeta;
  std::function<Complex(double, double, double)> xi;
};

/// Resonant (w2 = w1' + w1'') three-photon amplitude:
///   E_L(w) zeta(w, w1, w1'+w1'') xi(w1', w1'', w1'+w1'').
/// Normalization factors are treated as constants and absorbed.
Complex amplitude_resonant(const PumpPulse& pulse, const CouplingFunctions& c, double nu1,
                           double nu2, double nu3);

struct FullIntegralOptions {
  double epsilon;            // i*eps regulator (rad/s)
  double half_window;        // integration window around the resonance (rad/s)
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  bool richardson = true;    // extrapolate eps -> 0 from eps and eps/2
};

/// Full pole integral over the intermediate frequency:
///   (i/pi) E_L(w) Int zeta(w,w1,w2) xi(w1',w1'',w2) / (w1'+w1''-w2+i eps) dw2
/// by adaptive quadrature split at the resonance. Throws NumericalError when
/// the quadrature cannot reach the requested tolerance.
Complex amplitude_full(const PumpPulse& pulse, const CouplingFunctions& c, double nu1, double nu2,
                       double nu3, const FullIntegralOptions& opt);

/// Gaussian walkoff form: phase factor times three single-photon factors and
/// three pair factors, coefficients exactly as derived for the dual-section
/// lattice. Polarizations are the triple (photon1, photon2, photon3).
Complex amplitude_gaussian(const WalkoffSet& w, const std::array<Polarization, 3>& pol, double nu1,
                           double nu2, double nu3);

/// The quadratic form behind |amplitude_gaussian|^2:
///   -log|Phi|^2 = sum_i 2*diag[i] nu_i^2 + sum_{i<j} 2*cross[ij] nu_i nu_j.
struct GaussianQuadraticForm {
  std::array<double, 3> diag{};   // coefficient of nu_i^2 inside the exponent
  std::array<double, 3> cross{};  // [0]=nu1nu2, [1]=nu1nu3, [2]=nu2nu3
};
GaussianQuadraticForm gaussian_exponent_coefficients(const WalkoffSet& w,
                                                     const std::array<Polarization, 3>& pol);

/// Complex amplitude tensor on detuning grids (nu_k = w_k - w0/3), row-major
/// over (nu1, nu2, nu3).
struct JointAmplitudeGrid {
  std::vector<double> nu1, nu2, nu3;
  std::vector<Complex> values;
  std::array<Polarization, 3> polarizations{};
  std::string route;

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * nu2.size() + j) * nu3.size() + k;
  }
  Complex& at(std::size_t i, std::size_t j, std::size_t k) { return values[index(i, j, k)]; }
  const Complex& at(std::size_t i, std::size_t j, std::size_t k) const {
    return values[index(i, j, k)];
  }
};

struct GridOptions {
  std::size_t points = 64;
  double span_sigmas = 4.0;  // half-width of each axis in std devs of |Phi|^2
};

/// Samples the Gaussian amplitude on a centred grid sized from the diagonal
/// exponent coefficients (half-width span_sigmas / (2 sqrt(a_i))).
JointAmplitudeGrid build_gaussian_grid(const WalkoffSet& w, const std::array<Polarization, 3>& pol,
                                       const GridOptions& opt = {});

/// Samples an arbitrary amplitude function on explicit axes.
JointAmplitudeGrid build_grid(const std::function<Complex(double, double, double)>& amplitude,
                              std::vector<double> nu1, std::vector<double> nu2,
                              std::vector<double> nu3);

}  // namespace cpdc
