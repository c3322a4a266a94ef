#pragma once

#include <vector>

#include "cpdc/opo.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

/// Classical mode amplitudes (alpha0, alpha1, alpha2).
using MeanFieldState = Eigen::Vector3cd;

/// First-moment equations of the cascaded OPO:
///   a0' = E e^{i Phi} - g0 a0 - z' a1 a2
///   a1' = -g1 a1 + z' a0 conj(a2) + 2 x' conj(a1) a2
///   a2' = -g2 a2 + z' a0 conj(a1) - x' a1^2
MeanFieldState meanfield_rhs(const OpoParams& p, const MeanFieldState& a);

struct MeanFieldResult {
  std::vector<double> t;
  std::vector<MeanFieldState> amplitudes;
  MeanFieldState final_state;
  bool stationary = false;   // |rhs| small at the end of the run
  double residual = 0.0;     // |rhs| at the final state
};

struct MeanFieldOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_records = 2000;
};

MeanFieldResult meanfield_integrate(const OpoParams& p, const MeanFieldState& initial,
                                    double t_end, const MeanFieldOptions& opt = {});

struct BistabilityPoint {
  double eps = 0.0;
  double n1_from_vacuum = 0.0;  // attractor reached from a near-vacuum seed
  double n1_from_bright = 0.0;  // attractor reached from the bright-branch seed
  bool coexistence = false;     // the two attractors are distinct
};

/// Scans drive ratios, integrating from both seeds at each point; coexistence
/// of the trivial and bright attractors marks the hysteresis window.
std::vector<BistabilityPoint> bistability_scan(const OpoParams& base, double eps_lo, double eps_hi,
                                               std::size_t points, double t_end = 400.0);

}  // namespace cpdc
