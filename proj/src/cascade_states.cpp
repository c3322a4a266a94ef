#include "cpdc/cascade_states.hpp"

#include <cmath>

namespace cpdc {

ModeRegister triplet_register(int levels) {
  ModeRegister reg;
  reg.modes = {{"b", levels, 0}, {"a1", levels, 0}, {"a2", levels, 0}, {"a3", levels, 0}};
  return reg;
}

std::pair<SparseXc, SparseXc> build_triplet_hamiltonians(const ModeRegister& reg, Complex zeta_p,
                                                         Complex xi_p, Complex pump_amplitude) {
  reg.validate();
  const std::size_t b = reg.index_of("b");
  const std::size_t a1 = reg.index_of("a1");
  const std::size_t a2 = reg.index_of("a2");
  const std::size_t a3 = reg.index_of("a3");

  const Complex i{0.0, 1.0};
  SparseXc bp = creation(reg, b);
  SparseXc word1 = SparseXc(zeta_p * pump_amplitude * SparseXc(bp * creation(reg, a1)));
  SparseXc h1 = SparseXc(i * SparseXc(word1 - SparseXc(word1.adjoint())));

  SparseXc word2 = SparseXc(
      xi_p * SparseXc(SparseXc(creation(reg, a2) * creation(reg, a3)) * annihilation(reg, b)));
  SparseXc h2 = SparseXc(i * SparseXc(word2 - SparseXc(word2.adjoint())));
  return {h1, h2};
}

VectorXc dyson_second_order(const SparseXc& h_total, double t, const VectorXc& psi0) {
  // (-i/hbar)^2 (t^2/2) H^2, hbar = 1.
  return (-0.5 * t * t) * (h_total * (h_total * psi0));
}

VectorXc ordered_second_order(const SparseXc& h2, const SparseXc& h1, double t,
                              const VectorXc& psi0) {
  return (-t * t) * (h2 * (h1 * psi0));
}

ModeRegister ghz_register(int levels) {
  ModeRegister reg;
  reg.modes = {{"a1", levels, 'V'}, {"a2", levels, 'H'}, {"b1", levels, 'V'}, {"b2", levels, 'H'}};
  return reg;
}

GhzResult ghz_state(const ModeRegister& reg, Complex chi, Complex k_v, Complex k_h,
                    Complex pump_amplitude, double t) {
  reg.validate();
  for (const auto& m : reg.modes)
    if (m.polarization != 'V' && m.polarization != 'H')
      throw ConfigError("ghz_state: mode '" + m.label + "' lacks a V/H polarization label");

  const std::size_t a1 = reg.index_of("a1");
  const std::size_t a2 = reg.index_of("a2");
  const std::size_t b1 = reg.index_of("b1");
  const std::size_t b2 = reg.index_of("b2");

  const Complex i{0.0, 1.0};
  // H1 = i chi E0 (a1+ b2+ + a2+ b1+) + h.c.
  SparseXc pair1 = SparseXc(creation(reg, a1) * creation(reg, b2));
  SparseXc pair2 = SparseXc(creation(reg, a2) * creation(reg, b1));
  SparseXc word1 = SparseXc(chi * pump_amplitude * SparseXc(pair1 + pair2));
  SparseXc h1 = SparseXc(i * SparseXc(word1 - SparseXc(word1.adjoint())));

  // H2 = i (k_V b1 (a1+)^2 + k_H b2 (a2+)^2) + h.c.
  SparseXc sq1 = SparseXc(creation(reg, a1) * creation(reg, a1));
  SparseXc sq2 = SparseXc(creation(reg, a2) * creation(reg, a2));
  SparseXc word2 = SparseXc(k_v * SparseXc(SparseXc(sq1 * annihilation(reg, b1))) +
                            k_h * SparseXc(SparseXc(sq2 * annihilation(reg, b2))));
  SparseXc h2 = SparseXc(i * SparseXc(word2 - SparseXc(word2.adjoint())));

  GhzResult out;
  out.state = ordered_second_order(h2, h1, t, vacuum_state(reg));

  const long idx21 = basis_index(reg, {2, 1, 0, 0});
  const long idx12 = basis_index(reg, {1, 2, 0, 0});
  out.amplitude_21 = out.state(idx21);
  out.amplitude_12 = out.state(idx12);

  const double norm2 = out.state.squaredNorm();
  if (norm2 > 0.0) {
    // Mapped reading: (a1+)^2 a2+ |vac> -> |VHH> etc., so the GHZ target is
    // the equal superposition of the |2,1> and |1,2> occupancy kets.
    const Complex overlap = (out.amplitude_21 + out.amplitude_12) / std::sqrt(2.0);
    out.fidelity = std::norm(overlap) / norm2;
    out.fidelity_occupancy = out.fidelity;
  }
  return out;
}

SparseXc weighted_number_sum(const ModeRegister& reg, const std::vector<double>& weights) {
  if (weights.size() != reg.modes.size())
    throw ConfigError("weighted_number_sum: weight count does not match register");
  SparseXc total(reg.dim(), reg.dim());
  for (std::size_t m = 0; m < reg.modes.size(); ++m)
    total = SparseXc(total + weights[m] * number_operator(reg, m));
  return total;
}

}  // namespace cpdc
