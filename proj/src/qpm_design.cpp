#include "cpdc/qpm_design.hpp"

#include <cmath>

namespace cpdc {

ZeroOrderMismatches zero_order_mismatches(const DispersionTable& table, const std::string& pump_id,
                                          const std::string& mode1_id, const std::string& mode2_id,
                                          const std::string& spacer_mode1_id,
                                          const std::string& spacer_mode2_id) {
  const DispersionModel& kl = table.at(pump_id);
  const DispersionModel& k1 = table.at(mode1_id);
  const DispersionModel& k2 = table.at(mode2_id);
  const double w0 = kl.carrier_frequency;
  ZeroOrderMismatches out;
  out.dk1 = kl.k(w0) - k1.k(w0 / 3.0) - k2.k(2.0 * w0 / 3.0);
  out.dk2 = k2.k(2.0 * w0 / 3.0) - 2.0 * k1.k(w0 / 3.0);
  if (!spacer_mode1_id.empty() && !spacer_mode2_id.empty()) {
    const DispersionModel& s1 = table.at(spacer_mode1_id);
    const DispersionModel& s2 = table.at(spacer_mode2_id);
    out.dkappa2 = s2.k(2.0 * w0 / 3.0) - 2.0 * s1.k(w0 / 3.0);
    out.has_spacer = true;
  }
  return out;
}

QpmDesignResult solve_qpm_design(const ZeroOrderMismatches& mm, const QpmDesignRequest& req) {
  QpmDesignResult out;

  auto fail = [&out](const std::string& why) {
    out.feasible = false;
    if (!out.message.empty()) out.message += "; ";
    out.message += why;
  };

  if (req.want_d1) {
    if (mm.dk1 > 0.0) {
      out.d1 = 2.0 * M_PI / mm.dk1;
      out.residual_q1 = std::abs(2.0 * M_PI / *out.d1 - mm.dk1) / std::abs(mm.dk1);
      if (out.residual_q1 > req.tolerance) fail("q1 residual exceeds tolerance");
    } else {
      fail("dk1 must be > 0 to carry a positive grating period d1");
    }
  }

  if (req.want_d2) {
    if (mm.dk2 > 0.0) {
      out.d2 = 2.0 * M_PI / mm.dk2;
      out.residual_q2 = std::abs(2.0 * M_PI / *out.d2 - mm.dk2) / std::abs(mm.dk2);
      if (out.residual_q2 > req.tolerance) fail("q2 residual exceeds tolerance");
    } else {
      fail("dk2 must be > 0 to carry a positive grating period d2");
    }
  }

  if (req.want_spacers) {
    if (!mm.has_spacer) {
      fail("spacer design requested but no spacer dispersion supplied");
    } else if (mm.dk2 * mm.dkappa2 >= 0.0) {
      // l2 dk2 = -l3 dkappa2 with both lengths positive needs opposite signs.
      out.residual_compensation = 1.0;
      fail("dk2 and dkappa2 share a sign; zero-order compensation impossible");
    } else {
      const double l3 = M_PI / mm.dkappa2;
      const double l2 = -l3 * mm.dkappa2 / mm.dk2;  // = -pi / dk2
      if (l3 > 0.0 && l2 > 0.0) {
        out.l2 = l2;
        out.l3 = l3;
        const double scale = std::abs(l2 * mm.dk2) + std::abs(l3 * mm.dkappa2);
        out.residual_compensation = std::abs(l2 * mm.dk2 + l3 * mm.dkappa2) / scale;
        out.residual_spacer_pi = std::abs(mm.dkappa2 - M_PI / l3) / std::abs(mm.dkappa2);
        if (out.residual_compensation > req.tolerance || out.residual_spacer_pi > req.tolerance)
          fail("spacer residual exceeds tolerance");
      } else {
        out.residual_compensation = 1.0;
        fail("spacer layout requires dkappa2 > 0 and dk2 < 0");
      }
    }
  }

  return out;
}

}  // namespace cpdc
