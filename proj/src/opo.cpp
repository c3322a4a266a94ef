#include "cpdc/opo.hpp"

#include <cmath>

namespace cpdc {

double threshold(const OpoParams& p) {
  p.validate();
  if (!(p.zeta_p > 0.0)) throw ConfigError("threshold: zeta' must be > 0");
  return 2.0 * p.gamma0 / (3.0 * p.zeta_p) * std::sqrt(2.0 * p.gamma1 * p.gamma2);
}

SemiclassicalSteady semiclassical_steady(const OpoParams& p, double eps) {
  p.validate();
  if (!(p.xi_p > 0.0)) throw ConfigError("semiclassical_steady: xi' must be > 0");
  SemiclassicalSteady out;
  for (int n = 0; n < 3; ++n) {
    out.phases1[n] = p.drive_phase / 3.0 + 2.0 * M_PI * n / 3.0;
    out.phases2[n] = p.drive_phase / 3.0 - 2.0 * M_PI * n / 3.0;
  }
  if (eps < 1.0) return out;  // trivial branch below threshold

  const double s = std::sqrt(eps * eps - 1.0);
  const double big = eps + 3.0 * s;
  out.above_threshold = true;
  out.n1 = p.gamma1 * p.gamma2 / (18.0 * p.xi_p * p.xi_p) * big * big;
  const double ratio = big / (eps + s);
  out.n2 = p.gamma1 * p.gamma1 / (36.0 * p.xi_p * p.xi_p) * ratio * ratio;
  return out;
}

}  // namespace cpdc
