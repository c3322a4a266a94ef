#pragma once

#include <cmath>

#include "cpdc/types.hpp"

namespace cpdc {

/// Gaussian pump pulse spectrum E(w) = E0 exp(-tau_p^2 (w - w0)^2 / 2).
struct PumpPulse {
  Complex amplitude{1.0, 0.0};  // E0
  double tau_p = 1.0;           // s
  double omega0 = 0.0;          // rad/s
  double phase = 0.0;           // rad, multiplies E0 as exp(i phase)

  void validate() const {
    if (!(tau_p > 0.0)) throw ConfigError("PumpPulse: tau_p must be > 0");
  }
};

inline Complex pump_spectrum(const PumpPulse& pulse, double omega) {
  const double d = omega - pulse.omega0;
  const double envelope = std::exp(-0.5 * pulse.tau_p * pulse.tau_p * d * d);
  return pulse.amplitude * Complex{std::cos(pulse.phase), std::sin(pulse.phase)} * envelope;
}

}  // namespace cpdc
