#include "cpdc/coupling.hpp"

#include <cmath>

#include "cpdc/numerics.hpp"

namespace cpdc {

namespace {
Complex polar_unit(double phase) { return {std::cos(phase), std::sin(phase)}; }
}  // namespace

Complex coupling_sum(std::span<const LayerSpec> layers, std::span<const double> dk) {
  if (layers.empty()) throw ConfigError("coupling_sum: at least one layer required");
  if (dk.size() != layers.size())
    throw ConfigError("coupling_sum: dk size does not match layer count");
  Complex total{0, 0};
  double phi = 0.0;
  for (std::size_t m = 0; m < layers.size(); ++m) {
    layers[m].validate();
    const double l = layers[m].length;
    const double half = 0.5 * dk[m] * l;
    total += l * layers[m].chi * polar_unit(-(phi + half)) * sinc(half);
    phi += dk[m] * l;
  }
  return total;
}

Complex coupling_sum(std::span<const LayerSpec> layers, double dk) {
  std::vector<double> dks(layers.size(), dk);
  return coupling_sum(layers, dks);
}

Complex poled_section_sum(long domains, double l, double chi, double dk, double phi0) {
  if (domains <= 0) return {0, 0};
  const double q = M_PI / l;
  const double x = 0.5 * l * (dk - q);
  // sum_{m=0}^{M-1} (-e^{-i l dk})^m = e^{-i(M-1)x} sin(Mx)/sin(x)
  Complex kernel = polar_unit(-(domains - 1) * x) * dirichlet_ratio(domains, x);
  Complex lead = l * chi * sinc(0.5 * l * dk) * polar_unit(-(phi0 + 0.5 * l * dk));
  return lead * kernel;
}

DualGridCoupling zeta_dualgrid_terms(const DualGridParams& grid, double dk1) {
  grid.validate();
  DualGridCoupling out;
  out.section1 = poled_section_sum(grid.m_domains, grid.l1, grid.chi, dk1, 0.0);
  out.section2 =
      poled_section_sum(grid.n_domains, grid.l2, grid.chi, dk1, grid.length1() * dk1);
  return out;
}

Complex zeta_dualgrid(const DualGridParams& grid, double dk1) {
  return zeta_dualgrid_terms(grid, dk1).total();
}

DualGridCoupling xi_dualgrid_terms(const DualGridParams& grid, double dk2) {
  // Same lattice, second process: identical expansion evaluated at dk2.
  return zeta_dualgrid_terms(grid, dk2);
}

Complex xi_dualgrid(const DualGridParams& grid, double dk2) {
  return xi_dualgrid_terms(grid, dk2).total();
}

Complex zeta_sinc_approx(const DualGridParams& grid, double dk1) {
  grid.validate();
  const double L1 = grid.length1();
  return (2.0 / M_PI) * static_cast<double>(grid.m_domains) * grid.l1 * grid.chi *
         polar_unit(-0.5 * L1 * dk1) * sinc(0.5 * L1 * (dk1 - grid.q1()));
}

Complex xi_linear_spacers(const SpacerGridParams& grid, double dk2, double dkappa2) {
  grid.validate();
  const long pairs = grid.n_domains / 2;
  if (pairs == 0) return {0, 0};
  // Phase advance per (nonlinear + spacer) period.
  const double period_phase = grid.l2 * dk2 + grid.l3 * dkappa2;
  const double x = 0.5 * period_phase;
  Complex kernel = polar_unit(-(pairs - 1) * x) * dirichlet_ratio(pairs, x);
  Complex lead =
      grid.l2 * grid.chi * sinc(0.5 * grid.l2 * dk2) * polar_unit(-0.5 * grid.l2 * dk2);
  return lead * kernel;
}

namespace {
const DualGridParams& require_dual(const SuperlatticeSpec& spec) {
  if (!spec.dual_grid) throw ConfigError("superlattice has no dual_grid block");
  return *spec.dual_grid;
}
}  // namespace

DualGridCoupling zeta_dualgrid_terms(const SuperlatticeSpec& spec, double dk1) {
  return zeta_dualgrid_terms(require_dual(spec), dk1);
}
Complex zeta_dualgrid(const SuperlatticeSpec& spec, double dk1) {
  return zeta_dualgrid(require_dual(spec), dk1);
}
DualGridCoupling xi_dualgrid_terms(const SuperlatticeSpec& spec, double dk2) {
  return xi_dualgrid_terms(require_dual(spec), dk2);
}
Complex xi_dualgrid(const SuperlatticeSpec& spec, double dk2) {
  return xi_dualgrid(require_dual(spec), dk2);
}
Complex zeta_sinc_approx(const SuperlatticeSpec& spec, double dk1) {
  return zeta_sinc_approx(require_dual(spec), dk1);
}
Complex xi_linear_spacers(const SuperlatticeSpec& spec, double dk2, double dkappa2) {
  if (!spec.spacer_grid) throw ConfigError("superlattice has no spacer_grid block");
  return xi_linear_spacers(*spec.spacer_grid, dk2, dkappa2);
}

}  // namespace cpdc
