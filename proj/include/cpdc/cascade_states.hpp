#pragma once

#include <utility>

#include "cpdc/fock.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

/// Register with modes (b, a1, a2, a3): the subharmonic b plus the three
/// spatially separated daughter modes. `levels` applies to every mode.
ModeRegister triplet_register(int levels = 5);

/// Discrete-mode cascade Hamiltonians (hbar = 1):
///   H1 = i (zeta' E0 b+ a1+  -  h.c.)
///   H2 = i (xi'  a2+ a3+ b   -  h.c.)
std::pair<SparseXc, SparseXc> build_triplet_hamiltonians(const ModeRegister& reg, Complex zeta_p,
                                                         Complex xi_p, Complex pump_amplitude);

/// Honest second-order Dyson term for a time-independent H:
///   (-i)^2 (t^2/2) H^2 |psi0>.
VectorXc dyson_second_order(const SparseXc& h_total, double t, const VectorXc& psi0);

/// The ordered product -(t^2) H2 H1 |psi0> (no 1/2: this is the printed
/// prefactor of the cascade literature; its three-photon component is twice
/// the Dyson one because only the H2 H1 word reaches that sector).
VectorXc ordered_second_order(const SparseXc& h2, const SparseXc& h1, double t,
                              const VectorXc& psi0);

/// Register with modes (a1 V, a2 H, b1 V, b2 H) for the polarization cascade.
ModeRegister ghz_register(int levels = 5);

struct GhzResult {
  VectorXc state;            // -(t^2) H2 H1 |vac>, unnormalized
  Complex amplitude_21;      // <2,1,0,0|psi> (two V daughters, one H)
  Complex amplitude_12;      // <1,2,0,0|psi>
  double fidelity = 0.0;     // |<GHZ|psi>|^2 / <psi|psi> in the mapped reading
  double fidelity_occupancy = 0.0;  // same overlap computed in the raw (|2,1>,|1,2>) basis
};

/// Builds the GHZ-producing second-order state with type-II couplings chi and
/// type-I couplings (k_V, k_H), and reports the overlap with
/// (|VHH> + |HVV>)/sqrt(2) after mapping (a1+)^2 a2+ -> V,H,H across
/// spatially separated modes. Requires polarization labels on the register.
GhzResult ghz_state(const ModeRegister& reg, Complex chi, Complex k_v, Complex k_h,
                    Complex pump_amplitude, double t = 1.0);

inline GhzResult ghz_state(const ModeRegister& reg, Complex chi, Complex k, Complex pump_amplitude,
                           double t = 1.0) {
  return ghz_state(reg, chi, k, k, pump_amplitude, t);
}

/// Weighted number operator sum w_i n_i; the cascade charge used by the
/// conservation invariants (e.g. 3 n_0 + n_1 + 2 n_2 for the OPO register).
SparseXc weighted_number_sum(const ModeRegister& reg, const std::vector<double>& weights);

}  // namespace cpdc
