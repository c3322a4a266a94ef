#include "cpdc/meanfield.hpp"

#include <cmath>

#include "cpdc/ode.hpp"

namespace cpdc {

MeanFieldState meanfield_rhs(const OpoParams& p, const MeanFieldState& a) {
  const Complex drive =
      p.drive * Complex{std::cos(p.drive_phase), std::sin(p.drive_phase)};
  MeanFieldState d;
  d(0) = drive - p.gamma0 * a(0) - p.zeta_p * a(1) * a(2);
  d(1) = -p.gamma1 * a(1) + p.zeta_p * a(0) * std::conj(a(2)) +
         2.0 * p.xi_p * std::conj(a(1)) * a(2);
  d(2) = -p.gamma2 * a(2) + p.zeta_p * a(0) * std::conj(a(1)) - p.xi_p * a(1) * a(1);
  return d;
}

MeanFieldResult meanfield_integrate(const OpoParams& p, const MeanFieldState& initial,
                                    double t_end, const MeanFieldOptions& opt) {
  p.validate();
  MeanFieldResult out;
  MeanFieldState y = initial;
  const double record_dt = t_end / static_cast<double>(opt.max_records);
  double next_record = 0.0;

  OdeOptions ode;
  ode.rtol = opt.rtol;
  ode.atol = opt.atol;
  ode.initial_dt = 1e-4 * t_end;
  auto rhs = [&p](double, const MeanFieldState& a) { return meanfield_rhs(p, a); };
  integrate_rk45<MeanFieldState>(rhs, y, 0.0, t_end, ode,
                                 [&](double t, const MeanFieldState& s) {
                                   if (t >= next_record) {
                                     out.t.push_back(t);
                                     out.amplitudes.push_back(s);
                                     next_record += record_dt;
                                   }
                                 });
  out.final_state = y;
  out.residual = meanfield_rhs(p, y).norm();
  const double scale = std::max(1.0, y.norm());
  out.stationary = out.residual < 1e-6 * scale * std::max({p.gamma0, p.gamma1, p.gamma2});
  return out;
}

std::vector<BistabilityPoint> bistability_scan(const OpoParams& base, double eps_lo, double eps_hi,
                                               std::size_t points, double t_end) {
  std::vector<BistabilityPoint> scan;
  const double e_th = threshold(base);
  for (std::size_t i = 0; i < points; ++i) {
    double eps = points == 1
                     ? eps_lo
                     : eps_lo + (eps_hi - eps_lo) * static_cast<double>(i) / double(points - 1);
    OpoParams p = base;
    p.drive = eps * e_th;

    BistabilityPoint pt;
    pt.eps = eps;

    // Seed 1: near vacuum with a tiny symmetry-breaking kick.
    MeanFieldState vac;
    vac << Complex{0, 0}, Complex{1e-6, 0}, Complex{1e-6, 0};
    pt.n1_from_vacuum = std::norm(meanfield_integrate(p, vac, t_end).final_state(1));

    // Seed 2: the closed-form bright branch (valid for eps >= 1; below, use
    // a bright-ish guess so the basin question is still asked).
    SemiclassicalSteady sc = semiclassical_steady(p, std::max(eps, 1.0));
    MeanFieldState bright;
    bright << Complex{p.drive / std::max(p.gamma0, 1e-30), 0}, Complex{std::sqrt(sc.n1), 0},
        Complex{std::sqrt(sc.n2), 0};
    pt.n1_from_bright = std::norm(meanfield_integrate(p, bright, t_end).final_state(1));

    const double big = std::max(pt.n1_from_bright, pt.n1_from_vacuum);
    pt.coexistence = big > 1.0 && std::abs(pt.n1_from_bright - pt.n1_from_vacuum) > 0.5 * big;
    scan.push_back(pt);
  }
  return scan;
}

}  // namespace cpdc
