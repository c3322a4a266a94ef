#pragma once

#include <array>

#include "cpdc/dispersion.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

/// Temporal walkoff coefficients of the dual-section lattice. T covers the
/// pump/daughter delay over one section-1 domain; t and rho cover the
/// subharmonic/daughter delay over one nonlinear (resp. linear) section-2
/// layer. All entries are seconds and depend only on the daughter
/// polarization, so T[1][o] == T[2][o] == T[3][o] by construction.
struct WalkoffSet {
  // Indexed by polarization: [0] = o, [1] = e.
  std::array<double, 2> T{{0.0, 0.0}};    // l1 (u_L^-1 - u_{i,pol}^-1)
  std::array<double, 2> t{{0.0, 0.0}};    // l2 (u_beta^-1 - u_{mu,pol}^-1)
  std::array<double, 2> rho{{0.0, 0.0}};  // l3 (v_beta^-1 - v_{mu,pol}^-1)
  long m_domains = 0;
  long n_domains = 0;
  double tau_p = 1.0;

  double T_of(Polarization p) const { return T[p == Polarization::E ? 1 : 0]; }
  double t_of(Polarization p) const { return t[p == Polarization::E ? 1 : 0]; }
  double rho_of(Polarization p) const { return rho[p == Polarization::E ? 1 : 0]; }
};

/// Group-velocity inputs for compute_walkoffs. Each entry is an inverse group
/// velocity (s/m) read off a DispersionModel's first-order term.
struct GroupVelocities {
  double pump = 0.0;                         // u_L^-1, pump in section 1
  std::array<double, 2> daughter_s1{};       // u^-1 of the w0/3 modes in section 1, per pol
  double subharmonic_s2 = 0.0;               // u_beta^-1 of the 2w0/3 mode, nonlinear layers
  std::array<double, 2> daughter_s2{};       // u^-1 of the w0/3 modes, nonlinear layers
  double subharmonic_spacer = 0.0;           // v_beta^-1 in the linear spacers
  std::array<double, 2> daughter_spacer{};   // v^-1 of the w0/3 modes in the spacers
};

WalkoffSet compute_walkoffs(const GroupVelocities& u, double l1, double l2, double l3,
                            long m_domains, long n_domains, double tau_p);

/// Fills GroupVelocities from dispersion models (validates first-order data).
GroupVelocities group_velocities_from_dispersion(const DispersionTable& table,
                                                 const std::string& pump_id,
                                                 const std::string& daughter_o_id,
                                                 const std::string& daughter_e_id,
                                                 const std::string& subharmonic_id,
                                                 const std::string& spacer_daughter_o_id = "",
                                                 const std::string& spacer_daughter_e_id = "",
                                                 const std::string& spacer_subharmonic_id = "");

/// Residuals of the spectral-factorization conditions; each vanishes exactly
/// when the corresponding pair correlation is cancelled.
struct HeraldingResiduals {
  double r12 = 0.0;  // tau_p^2 + (M^2/10) T_e T_o
  double r13 = 0.0;  // tau_p^2 + (M^2/10) T_e T_o
  double r23 = 0.0;  // tau_p^2 + (M^2/10) T_e T_o + (N^2/40)(t_o+rho_o)^2-type term
};

/// Evaluated for the e,o,o polarization triple (heralded photon 1 carries e).
HeraldingResiduals heralding_residuals(const WalkoffSet& w);

}  // namespace cpdc
