#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cpdc/types.hpp"

namespace cpdc {

namespace detail {
// Gauss-Kronrod 15(7) nodes/weights on [-1,1] (symmetric; nodes >= 0 listed).
constexpr double gk15_nodes[8] = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};
constexpr double gk15_wk[8] = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};
constexpr double gauss7_w[4] = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};
}  // namespace detail

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double error = 0.0;
  std::size_t evaluations = 0;
};

/// One Gauss-Kronrod 15(7) panel on [a,b] for a complex-valued integrand.
template <typename F>
QuadratureResult gk15_panel(const F& f, double a, double b) {
  using namespace detail;
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  Complex fk[15];
  Complex kronrod{0, 0}, gauss{0, 0};
  fk[0] = f(c);
  kronrod += gk15_wk[0] * fk[0];
  gauss += gauss7_w[0] * fk[0];
  for (int i = 1; i < 8; ++i) {
    Complex fp = f(c + h * gk15_nodes[i]);
    Complex fm = f(c - h * gk15_nodes[i]);
    kronrod += gk15_wk[i] * (fp + fm);
    if (i % 2 == 0) gauss += gauss7_w[i / 2] * (fp + fm);
  }
  QuadratureResult r;
  r.value = kronrod * h;
  r.error = std::abs(kronrod - gauss) * std::abs(h);
  r.evaluations = 15;
  return r;
}

/// Adaptive bisection with GK15 panels. Throws NumericalError when the
/// requested tolerance cannot be met within the panel budget.
template <typename F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                    double rel_tol = 1e-10, int max_depth = 48,
                                    std::size_t max_panels = 20000) {
  struct Segment {
    double a, b;
    QuadratureResult r;
    int depth;
  };
  std::vector<Segment> stack;
  stack.push_back({a, b, gk15_panel(f, a, b), 0});
  QuadratureResult total;
  std::size_t panels = 1;
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    double tol = std::max(abs_tol, rel_tol * std::abs(s.r.value)) *
                 std::max(1e-3, (s.b - s.a) / (b - a));
    if (s.r.error <= tol || s.depth >= max_depth) {
      if (s.depth >= max_depth && s.r.error > tol)
        throw NumericalError("integrate_adaptive: max depth reached, residual error " +
                             std::to_string(s.r.error));
      total.value += s.r.value;
      total.error += s.r.error;
      total.evaluations += s.r.evaluations;
      continue;
    }
    if (++panels > max_panels)
      throw NumericalError("integrate_adaptive: panel budget exhausted at error " +
                           std::to_string(s.r.error));
    double m = 0.5 * (s.a + s.b);
    stack.push_back({s.a, m, gk15_panel(f, s.a, m), s.depth + 1});
    stack.push_back({m, s.b, gk15_panel(f, m, s.b), s.depth + 1});
  }
  return total;
}

}  // namespace cpdc
