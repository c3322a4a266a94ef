#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "cpdc/types.hpp"

namespace cpdc {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-11;
  double initial_dt = 1e-3;
  double max_dt = 0.0;  // 0 = unlimited
  long max_steps = 50'000'000;
};

/// Dormand-Prince 5(4) with PI step control. `State` is any Eigen-like type
/// supporting +, scalar *, and norm(); works for amplitude vectors, state
/// vectors and density matrices alike.
template <typename State, typename Rhs>
void integrate_rk45(const Rhs& rhs, State& y, double t0, double t1, const OdeOptions& opt = {},
                    const std::function<void(double, const State&)>& observer = nullptr) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                      b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double t = t0;
  double dt = std::min(opt.initial_dt, t1 - t0);
  if (opt.max_dt > 0) dt = std::min(dt, opt.max_dt);
  if (observer) observer(t, y);

  State k1 = rhs(t, y);
  long steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps) throw NumericalError("integrate_rk45: step budget exhausted");
    dt = std::min(dt, t1 - t);
    State k2 = rhs(t + c2 * dt, State(y + dt * (a21 * k1)));
    State k3 = rhs(t + c3 * dt, State(y + dt * (a31 * k1 + a32 * k2)));
    State k4 = rhs(t + c4 * dt, State(y + dt * (a41 * k1 + a42 * k2 + a43 * k3)));
    State k5 = rhs(t + c5 * dt, State(y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
    State k6 = rhs(t + dt, State(y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
    State ynew = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = rhs(t + dt, ynew);
    State err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double scale = opt.atol + opt.rtol * std::max(y.norm(), ynew.norm());
    double errnorm = err.norm() / scale;
    if (errnorm <= 1.0) {
      t += dt;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      if (observer) observer(t, y);
    }
    double factor = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
    dt *= std::clamp(factor, 0.2, 2.5);
    if (opt.max_dt > 0) dt = std::min(dt, opt.max_dt);
    if (!(dt > 0) || !std::isfinite(errnorm))
      throw NumericalError("integrate_rk45: step size underflow or non-finite state");
  }
}

/// Classic fixed-step RK4 for a (possibly nonlinear) drift f(y).
template <typename State, typename Rhs>
void rk4_step(const Rhs& rhs, State& y, double dt) {
  State k1 = rhs(y);
  State k2 = rhs(State(y + (0.5 * dt) * k1));
  State k3 = rhs(State(y + (0.5 * dt) * k2));
  State k4 = rhs(State(y + dt * k3));
  y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace cpdc
