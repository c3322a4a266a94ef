#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cpdc {

/// sinc(x) = sin(x)/x with sinc(0) = 1. This is the convention used by every
/// coupling formula in the library.
template <typename Scalar>
Scalar sinc(Scalar x) {
  // Below ~1e-4 the direct quotient loses digits; the series is exact to
  // double precision there.
  if (std::abs(x) < Scalar(1e-4)) {
    Scalar x2 = x * x;
    return Scalar(1) - x2 / Scalar(6) + x2 * x2 / Scalar(120);
  }
  return std::sin(x) / x;
}

/// Dirichlet kernel ratio sin(m x)/sin(x), continued through the removable
/// singularities at x = j*pi where it equals m*cos(m j pi)/cos(j pi).
template <typename Scalar>
Scalar dirichlet_ratio(long m, Scalar x) {
  if (m == 0) return Scalar(0);
  const Scalar pi = Scalar(M_PI);
  Scalar j = std::round(x / pi);
  Scalar delta = x - j * pi;
  if (std::abs(delta) < Scalar(1e-8)) {
    // sin(m(j pi + d)) / sin(j pi + d) = sign * sin(m d)/sin(d),
    // sign = (-1)^{j(m-1)}.
    Scalar ratio = Scalar(m) * sinc(Scalar(m) * delta) / sinc(delta);
    long jl = static_cast<long>(j);
    bool flip = ((jl % 2) != 0) && ((m - 1) % 2 != 0);
    return flip ? -ratio : ratio;
  }
  return std::sin(Scalar(m) * x) / std::sin(x);
}

/// Pairwise (cascade) summation. Order of evaluation depends only on the
/// element order, so parallel producers that fill `v` by index yield
/// bit-identical totals.
template <typename T>
T pairwise_sum(const std::vector<T>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return T{};
  if (hi - lo == 1) return v[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(v, 0, v.size());
}

}  // namespace cpdc
