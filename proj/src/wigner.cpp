#include "cpdc/wigner.hpp"

#include <cmath>
#include <thread>

namespace cpdc {

// Fock-basis cross kernel, m >= n:
//   K_mn = (1/pi) (-1)^n sqrt(n!/m!) z^{m-n} e^{-(x^2+y^2)} L_n^{(m-n)}(u),
//   z = sqrt(2)(x - i y),  u = 2(x^2 + y^2),
// and W = sum_mn rho_mn conj(K_mn)-pairing resolved so that a coherent state
// |beta> peaks at (x,y) = sqrt(2)(Re beta, Im beta). Along each diagonal
// k = m - n the scaled values
//   S_{k,n} = (-1)^n sqrt(n!/(n+k)!) z^k e^{-(x^2+y^2)} L_n^{(k)}(u)
// obey the Laguerre three-term recurrence
//   S_{k,n+1} = -[(2n+k+1-u) S_{k,n} + sqrt(n(n+k)) S_{k,n-1}]
//               / sqrt((n+1)(n+k+1))
// seeded by S_{k,0} = z^k/sqrt(k!) e^{-(x^2+y^2)}; every S is bounded by
// 2/pi, so the forward recurrence neither overflows nor underflows.
double wigner_point(const MatrixXc& rho1, double x, double y) {
  const long dim = rho1.rows();
  const double u = 2.0 * (x * x + y * y);
  const double gauss = std::exp(-(x * x + y * y));
  const Complex z = std::sqrt(2.0) * Complex{x, -y};

  double w = 0.0;
  Complex seed{gauss, 0.0};
  for (long k = 0; k < dim; ++k) {
    if (k > 0) seed *= z / std::sqrt(double(k));
    // March n along the diagonal (m = n + k).
    Complex s_prev{0.0, 0.0};
    Complex s = seed;
    for (long n = 0; n + k < dim; ++n) {
      const Complex contrib = rho1(n + k, n) * s;
      w += (k == 0) ? std::real(contrib) : 2.0 * std::real(contrib);
      const double a = (2.0 * double(n) + double(k) + 1.0 - u);
      const double b = std::sqrt(double(n) * double(n + k));
      const double c = std::sqrt(double(n + 1) * double(n + k + 1));
      Complex s_next = -(a * s + b * s_prev) / c;
      s_prev = s;
      s = s_next;
    }
  }
  return w / M_PI;
}

double wigner_polar(const MatrixXc& rho1, double r, double theta) {
  return wigner_point(rho1, r * std::cos(theta), r * std::sin(theta));
}

MatrixXd wigner_grid(const MatrixXc& rho1, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  MatrixXd w(xs.size(), ys.size());
  auto fill = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < ys.size(); ++j) w(i, j) = wigner_point(rho1, xs[i], ys[j]);
  };
  if (xs.size() >= 8) {
    std::thread worker(fill, 0, xs.size() / 2);
    fill(xs.size() / 2, xs.size());
    worker.join();
  } else {
    fill(0, xs.size());
  }
  return w;
}

double wigner_grid_integral(const MatrixXd& w, const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  auto weight = [](const std::vector<double>& ax, std::size_t i) {
    if (ax.size() < 2) return 1.0;
    if (i == 0) return 0.5 * (ax[1] - ax[0]);
    if (i == ax.size() - 1) return 0.5 * (ax[i] - ax[i - 1]);
    return 0.5 * (ax[i + 1] - ax[i - 1]);
  };
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < ys.size(); ++j)
      total += w(i, j) * weight(xs, i) * weight(ys, j);
  return total;
}

}  // namespace cpdc
