#pragma once

#include <string>
#include <vector>

#include "cpdc/types.hpp"

namespace cpdc {

/// One truncated bosonic mode. `levels` counts basis states (cutoff + 1).
struct FockMode {
  std::string label;
  int levels = 2;
  char polarization = 0;  // 'V', 'H' or 0 when unpolarized
};

/// Ordered mode list; the joint basis index is row-major over the list:
/// index = ((n_0 d_1 + n_1) d_2 + n_2) ... with d_i = modes[i].levels.
struct ModeRegister {
  std::vector<FockMode> modes;

  long dim() const {
    long d = 1;
    for (const auto& m : modes) d *= m.levels;
    return d;
  }
  long stride(std::size_t mode) const {
    long s = 1;
    for (std::size_t i = mode + 1; i < modes.size(); ++i) s *= modes[i].levels;
    return s;
  }
  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (modes[i].label == label) return i;
    throw ConfigError("no mode labelled '" + label + "'");
  }
  void validate() const {
    for (const auto& m : modes)
      if (m.levels < 2) throw ConfigError("mode '" + m.label + "' needs at least 2 levels");
  }
};

long basis_index(const ModeRegister& reg, const std::vector<int>& occupation);
std::vector<int> occupation_of(const ModeRegister& reg, long index);
std::string basis_label(const ModeRegister& reg, long index);

SparseXc annihilation_single(int levels);

/// Single-mode operator embedded into the register (identity on the rest).
SparseXc embed(const ModeRegister& reg, std::size_t mode, const SparseXc& op);

SparseXc annihilation(const ModeRegister& reg, std::size_t mode);
SparseXc creation(const ModeRegister& reg, std::size_t mode);
SparseXc number_operator(const ModeRegister& reg, std::size_t mode);

VectorXc vacuum_state(const ModeRegister& reg);
VectorXc basis_state(const ModeRegister& reg, const std::vector<int>& occupation);

/// Partial trace keeping one mode.
MatrixXc partial_trace_keep(const ModeRegister& reg, const MatrixXc& rho, std::size_t keep);

/// Reduced density matrix of one mode from a pure state, without forming the
/// full projector.
MatrixXc reduced_density(const ModeRegister& reg, const VectorXc& psi, std::size_t keep);

inline double expectation(const SparseXc& op, const VectorXc& psi) {
  return std::real(psi.dot(op * psi));
}
inline double expectation(const SparseXc& op, const MatrixXc& rho) {
  return std::real((op.cast<Complex>() * rho).trace());
}

/// Occupation probability that any mode sits in its top two levels; the
/// truncation is considered trustworthy while this stays small.
double truncation_leakage(const ModeRegister& reg, const VectorXc& psi);
double truncation_leakage(const ModeRegister& reg, const MatrixXc& rho);

}  // namespace cpdc
