#pragma once

#include <span>
#include <vector>

#include "cpdc/lattice.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

/// Layer-by-layer Fourier sum of chi(z) exp(-i dk z):
///   sum_m l_m chi_m exp(-i(phi_m + dk_m l_m / 2)) sinc(dk_m l_m / 2),
///   phi_m = sum_{n<m} l_n dk_n, phi_1 = 0.
/// `dk` holds the per-layer phase mismatch (1/m), one entry per layer.
Complex coupling_sum(std::span<const LayerSpec> layers, std::span<const double> dk);

/// Convenience overload: constant mismatch across all layers.
Complex coupling_sum(std::span<const LayerSpec> layers, double dk);

/// Closed form for one uniformly poled section of `domains` layers of length
/// `l` with alternating +/-chi (first domain +chi), constant mismatch dk, and
/// phase offset phi0 accumulated before the section starts. Equals the layer
/// sum identically (Dirichlet kernel with all phase factors kept).
Complex poled_section_sum(long domains, double l, double chi, double dk, double phi0);

/// Both Dirichlet-kernel terms of a dual-grid coupling constant.
struct DualGridCoupling {
  Complex section1{0, 0};
  Complex section2{0, 0};
  Complex total() const { return section1 + section2; }
};

/// zeta(dk1) for the dual-grid crystal: section-1 kernel peaked at q1 plus
/// the cross term from section 2. Both terms are always evaluated; callers
/// that want the textbook single-grating picture can read .section1 alone.
DualGridCoupling zeta_dualgrid_terms(const DualGridParams& grid, double dk1);
Complex zeta_dualgrid(const DualGridParams& grid, double dk1);

/// xi(dk2) for the dual-grid crystal: same structure with the roles of the
/// sections swapped (QPM condition dk2 = q2 selects section 2).
DualGridCoupling xi_dualgrid_terms(const DualGridParams& grid, double dk2);
Complex xi_dualgrid(const DualGridParams& grid, double dk2);

/// Large-M sinc envelope approximation of the section-1 term:
///   (2/pi) M l1 chi exp(-i L1 dk1 / 2) sinc(L1 (dk1 - q1) / 2).
Complex zeta_sinc_approx(const DualGridParams& grid, double dk1);

/// xi for the nonlinear/linear-spacer section. dk2 acts in the nonlinear
/// layers, dkappa2 in the spacers; the kernel argument is the period-averaged
/// mismatch dK = (l2 dk2 + l3 dkappa2)/(l2+l3) and the Dirichlet limit at
/// dK -> 0 is N/2 (the number of nonlinear layers).
Complex xi_linear_spacers(const SpacerGridParams& grid, double dk2, double dkappa2);

/// SuperlatticeSpec front ends (require the corresponding parametric block).
DualGridCoupling zeta_dualgrid_terms(const SuperlatticeSpec& spec, double dk1);
Complex zeta_dualgrid(const SuperlatticeSpec& spec, double dk1);
DualGridCoupling xi_dualgrid_terms(const SuperlatticeSpec& spec, double dk2);
Complex xi_dualgrid(const SuperlatticeSpec& spec, double dk2);
Complex zeta_sinc_approx(const SuperlatticeSpec& spec, double dk1);
Complex xi_linear_spacers(const SuperlatticeSpec& spec, double dk2, double dkappa2);

}  // namespace cpdc
