#pragma once

#include <array>

#include "cpdc/types.hpp"

namespace cpdc {

/// Cavity model parameters. Rates are in the same (arbitrary) unit; the
/// Lindblad convention is gamma (2 a rho a+ - a+ a rho - rho a+ a), so mode
/// amplitudes damp at gamma and photon numbers at 2 gamma.
struct OpoParams {
  double drive = 0.0;        // |E|
  double drive_phase = 0.0;  // Phi
  double zeta_p = 0.0;       // pump -> (1,2) coupling
  double xi_p = 0.0;         // 2 -> (1,1) coupling
  double gamma0 = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;

  void validate() const {
    if (gamma0 < 0 || gamma1 < 0 || gamma2 < 0) throw ConfigError("OpoParams: negative damping");
    if (zeta_p < 0 || xi_p < 0) throw ConfigError("OpoParams: negative coupling");
  }
};

/// Generation threshold E_th = (2 gamma0 / 3 zeta') sqrt(2 gamma1 gamma2).
double threshold(const OpoParams& p);

struct SemiclassicalSteady {
  bool above_threshold = false;  // false => trivial branch (vacuum amplitudes)
  double n1 = 0.0;
  double n2 = 0.0;
  std::array<double, 3> phases1{};  // Phi/3 + 2 pi n / 3
  std::array<double, 3> phases2{};  // Phi/3 - 2 pi n / 3
};

/// Closed-form bright-branch photon numbers and the three locked phases for
/// drive ratio eps = E/E_th >= 1; below threshold returns the trivial branch
/// with the flag cleared.
SemiclassicalSteady semiclassical_steady(const OpoParams& p, double eps);

}  // namespace cpdc
