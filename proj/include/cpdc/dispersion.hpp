#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpdc/types.hpp"

namespace cpdc {

/// Polynomial wavevector expansion k(w) about a carrier frequency:
///   k(w) = k0 + inv_group_velocity*(w - carrier) + sum c_n (w - carrier)^n.
/// Evaluation is plain polynomial arithmetic; nothing is truncated behind
/// the caller's back.
struct DispersionModel {
  double carrier_frequency = 0.0;    // rad/s
  double k0 = 0.0;                   // 1/m
  double inv_group_velocity = 0.0;   // s/m
  std::vector<std::pair<int, double>> higher_terms;  // (order >= 2, coefficient)
  Polarization polarization = Polarization::O;

  double k(double omega) const {
    double d = omega - carrier_frequency;
    double val = k0 + inv_group_velocity * d;
    for (const auto& [order, coeff] : higher_terms) {
      double p = 1.0;
      for (int i = 0; i < order; ++i) p *= d;
      val += coeff * p;
    }
    return val;
  }

  void validate() const {
    if (!(inv_group_velocity > 0.0) || !std::isfinite(inv_group_velocity))
      throw ConfigError("DispersionModel: inv_group_velocity must be finite and > 0");
  }
};

/// Materials table; layer specs refer into it by id.
class DispersionTable {
 public:
  void add(const std::string& id, DispersionModel model) {
    model.validate();
    models_[id] = std::move(model);
  }
  const DispersionModel& at(const std::string& id) const {
    auto it = models_.find(id);
    if (it == models_.end()) throw ConfigError("unknown material_id '" + id + "'");
    return it->second;
  }
  bool contains(const std::string& id) const { return models_.count(id) != 0; }

 private:
  std::map<std::string, DispersionModel> models_;
};

enum class Process { Primary, Secondary };  // w0 -> w1+w2 and w2 -> w1'+w1''

/// Which dispersion model each participant of a mismatch evaluation uses.
struct MismatchSpec {
  Process process = Process::Primary;
  // Primary: parent = pump (k_L), child_a = k_1, child_b = k_2.
  // Secondary: parent = k_2, child_a = k_1', child_b = k_1''.
  DispersionModel parent;
  DispersionModel child_a;
  DispersionModel child_b;
};

/// Signed phase mismatch for one process:
///   primary   dk1 = k_L(w_parent) - k_1(w_a) - k_2(w_b)
///   secondary dk2 = k_2(w_parent) - k_1(w_a) - k_1(w_b)
inline double mismatch(const MismatchSpec& spec, double omega_parent, double omega_a,
                       double omega_b) {
  return spec.parent.k(omega_parent) - spec.child_a.k(omega_a) - spec.child_b.k(omega_b);
}

}  // namespace cpdc
