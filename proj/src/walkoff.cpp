#include "cpdc/walkoff.hpp"

namespace cpdc {

WalkoffSet compute_walkoffs(const GroupVelocities& u, double l1, double l2, double l3,
                            long m_domains, long n_domains, double tau_p) {
  WalkoffSet w;
  for (int p = 0; p < 2; ++p) {
    w.T[p] = l1 * (u.pump - u.daughter_s1[p]);
    w.t[p] = l2 * (u.subharmonic_s2 - u.daughter_s2[p]);
    w.rho[p] = l3 * (u.subharmonic_spacer - u.daughter_spacer[p]);
  }
  w.m_domains = m_domains;
  w.n_domains = n_domains;
  w.tau_p = tau_p;
  return w;
}

GroupVelocities group_velocities_from_dispersion(const DispersionTable& table,
                                                 const std::string& pump_id,
                                                 const std::string& daughter_o_id,
                                                 const std::string& daughter_e_id,
                                                 const std::string& subharmonic_id,
                                                 const std::string& spacer_daughter_o_id,
                                                 const std::string& spacer_daughter_e_id,
                                                 const std::string& spacer_subharmonic_id) {
  auto inv_u = [&table](const std::string& id) {
    const DispersionModel& m = table.at(id);
    if (!(m.inv_group_velocity > 0.0))
      throw ConfigError("dispersion model '" + id + "' lacks a first-order term");
    return m.inv_group_velocity;
  };
  GroupVelocities u;
  u.pump = inv_u(pump_id);
  u.daughter_s1 = {inv_u(daughter_o_id), inv_u(daughter_e_id)};
  u.subharmonic_s2 = inv_u(subharmonic_id);
  u.daughter_s2 = u.daughter_s1;
  if (!spacer_daughter_o_id.empty()) {
    u.daughter_spacer = {inv_u(spacer_daughter_o_id), inv_u(spacer_daughter_e_id)};
    u.subharmonic_spacer = inv_u(spacer_subharmonic_id);
  }
  return u;
}

HeraldingResiduals heralding_residuals(const WalkoffSet& w) {
  const double tp2 = w.tau_p * w.tau_p;
  const double m2 = static_cast<double>(w.m_domains) * static_cast<double>(w.m_domains);
  const double n2 = static_cast<double>(w.n_domains) * static_cast<double>(w.n_domains);
  const double Te = w.T_of(Polarization::E);
  const double To = w.T_of(Polarization::O);
  const double so = w.t_of(Polarization::O) + w.rho_of(Polarization::O);
  HeraldingResiduals r;
  r.r12 = tp2 + m2 / 10.0 * Te * To;
  r.r13 = tp2 + m2 / 10.0 * Te * To;
  r.r23 = tp2 + m2 / 10.0 * Te * To + n2 / 40.0 * so * so;
  return r;
}

}  // namespace cpdc
