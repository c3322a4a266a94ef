#pragma once

#include <optional>
#include <string>

#include "cpdc/dispersion.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

/// Zero-order mismatches of both cascaded processes evaluated at the carrier
/// frequencies (w0, w0/3, 2w0/3), plus the spacer-material mismatch when a
/// linear material is supplied.
struct ZeroOrderMismatches {
  double dk1 = 0.0;     // k_L(w0) - k_1(w0/3) - k_2(2w0/3), nonlinear material
  double dk2 = 0.0;     // k_2(2w0/3) - 2 k_1(w0/3), nonlinear material
  double dkappa2 = 0.0; // same combination in the linear-spacer material
  bool has_spacer = false;
};

struct QpmDesignRequest {
  bool want_d1 = true;        // period matching dk1 = q1
  bool want_d2 = false;       // period matching dk2 = q2 (dual-grid form)
  bool want_spacers = false;  // l2, l3 solving the spacer-compensation pair
  double tolerance = 1e-12;   // relative residual accepted as "satisfied"
};

struct QpmDesignResult {
  bool feasible = true;
  std::optional<double> d1;  // m
  std::optional<double> d2;  // m
  std::optional<double> l2;  // m (spacer layout)
  std::optional<double> l3;  // m
  // Relative residuals of every requested condition, in request order.
  double residual_q1 = 0.0;
  double residual_q2 = 0.0;
  double residual_compensation = 0.0;  // l2 dk2 + l3 dkappa2 (relative)
  double residual_spacer_pi = 0.0;     // dkappa2 - pi/l3 (relative)
  std::string message;                 // empty when feasible
};

/// Carrier-frequency mismatches from a dispersion set. `nonlinear_*` name the
/// pump/daughter/subharmonic models in the nonlinear material; the spacer
/// pair is optional.
ZeroOrderMismatches zero_order_mismatches(const DispersionTable& table, const std::string& pump_id,
                                          const std::string& mode1_id, const std::string& mode2_id,
                                          const std::string& spacer_mode1_id = "",
                                          const std::string& spacer_mode2_id = "");

/// Solves the requested QPM conditions:
///   d1 = 2 pi / dk1,  d2 = 2 pi / dk2,
///   spacers: l2 dk2 + l3 dkappa2 = 0 with dkappa2 = pi / l3.
/// Infeasible requests (non-positive periods, same-sign mismatches when
/// compensation is demanded) come back with feasible = false and residuals
/// filled in, and never throw.
QpmDesignResult solve_qpm_design(const ZeroOrderMismatches& mismatches,
                                 const QpmDesignRequest& request);

}  // namespace cpdc
