#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cpdc/types.hpp"

namespace cpdc {

/// One segment of a superlattice. chi == 0 marks a linear spacer.
struct LayerSpec {
  double length = 0.0;  // m
  double chi = 0.0;     // signed second-order susceptibility, arbitrary units
  std::string material_id;

  void validate() const {
    if (!(length > 0.0)) throw ConfigError("LayerSpec: length must be > 0");
  }
};

/// Two poled sections: M domains of length l1 with alternating +/-chi, then
/// N domains of length l2 with alternating +/-chi. Grating vectors are
/// derived, never stored: q1 = 2*pi/(2*l1), q2 = 2*pi/(2*l2).
struct DualGridParams {
  long m_domains = 0;
  double l1 = 0.0;
  long n_domains = 0;
  double l2 = 0.0;
  double chi = 1.0;

  double q1() const { return M_PI / l1; }
  double q2() const { return M_PI / l2; }
  double length1() const { return static_cast<double>(m_domains) * l1; }
  double length2() const { return static_cast<double>(n_domains) * l2; }

  void validate() const {
    if (m_domains < 0 || n_domains < 0) throw ConfigError("DualGridParams: negative domain count");
    if (m_domains > 0 && !(l1 > 0)) throw ConfigError("DualGridParams: l1 must be > 0");
    if (n_domains > 0 && !(l2 > 0)) throw ConfigError("DualGridParams: l2 must be > 0");
  }
};

/// Second section built from N/2 nonlinear layers (length l2, chi) separated
/// by N/2 linear spacers (length l3, chi = 0); period d2 = l2 + l3.
struct SpacerGridParams {
  long n_domains = 0;  // counts nonlinear + linear layers together; must be even
  double l2 = 0.0;
  double l3 = 0.0;
  double chi = 1.0;

  double period() const { return l2 + l3; }

  void validate() const {
    if (n_domains < 0 || n_domains % 2 != 0)
      throw ConfigError("SpacerGridParams: n_domains must be even and >= 0");
    if (n_domains > 0 && (!(l2 > 0) || !(l3 > 0)))
      throw ConfigError("SpacerGridParams: l2 and l3 must be > 0");
  }
};

/// A superlattice is either an explicit ordered layer list or a parametric
/// description (dual-grid and/or spacer-grid sections).
struct SuperlatticeSpec {
  std::vector<LayerSpec> layers;
  std::optional<DualGridParams> dual_grid;
  std::optional<SpacerGridParams> spacer_grid;

  double total_length() const {
    double L = 0;
    for (const auto& l : layers) L += l.length;
    if (dual_grid) L += dual_grid->length1() + dual_grid->length2();
    if (spacer_grid)
      L += static_cast<double>(spacer_grid->n_domains) / 2.0 * spacer_grid->period();
    return L;
  }
};

/// Explicit layer list of a dual-grid crystal (both sections, alternating
/// signs starting at +chi). This is the oracle-side expansion used to check
/// the closed forms.
inline std::vector<LayerSpec> expand_dual_grid(const DualGridParams& p,
                                               const std::string& material1 = "nl1",
                                               const std::string& material2 = "nl2") {
  p.validate();
  std::vector<LayerSpec> layers;
  layers.reserve(static_cast<std::size_t>(p.m_domains + p.n_domains));
  for (long m = 0; m < p.m_domains; ++m)
    layers.push_back({p.l1, (m % 2 == 0) ? p.chi : -p.chi, material1});
  for (long n = 0; n < p.n_domains; ++n)
    layers.push_back({p.l2, (n % 2 == 0) ? p.chi : -p.chi, material2});
  return layers;
}

/// Explicit layer list of a spacer-grid section: nonlinear, linear, ...
inline std::vector<LayerSpec> expand_spacer_grid(const SpacerGridParams& p,
                                                 const std::string& material_nl = "nl",
                                                 const std::string& material_lin = "lin") {
  p.validate();
  std::vector<LayerSpec> layers;
  layers.reserve(static_cast<std::size_t>(p.n_domains));
  for (long j = 0; j < p.n_domains / 2; ++j) {
    layers.push_back({p.l2, p.chi, material_nl});
    layers.push_back({p.l3, 0.0, material_lin});
  }
  return layers;
}

}  // namespace cpdc
