#include "cpdc/lindblad.hpp"

#include <cmath>
#include <limits>

#include "cpdc/thread_pair.hpp"

#include <Eigen/Eigenvalues>

namespace cpdc {

namespace {
Complex polar(double mag, double phase) {
  return mag * Complex{std::cos(phase), std::sin(phase)};
}
}  // namespace

LindbladModel build_full_opo_model(const OpoParams& p, const FockTruncation& trunc) {
  p.validate();
  LindbladModel model;
  model.reg.modes = {{"a0", trunc.n0_max + 1, 0},
                     {"a1", trunc.n1_max + 1, 0},
                     {"a2", trunc.n2_max + 1, 0}};

  SparseXc a0 = annihilation(model.reg, 0);
  SparseXc a1 = annihilation(model.reg, 1);
  SparseXc a2 = annihilation(model.reg, 2);
  SparseXc a0d = SparseXc(a0.adjoint());
  SparseXc a1d = SparseXc(a1.adjoint());
  SparseXc a2d = SparseXc(a2.adjoint());

  const Complex i{0.0, 1.0};
  const Complex drive = polar(p.drive, p.drive_phase);
  // H = i(E a0+ - E* a0) + i zeta'(a0 a1+ a2+ - h.c.) + i xi'(a1+^2 a2 - h.c.)
  SparseXc word = SparseXc(drive * a0d);
  word = SparseXc(word + SparseXc(p.zeta_p * SparseXc(SparseXc(a1d * a2d) * a0)));
  word = SparseXc(word + SparseXc(p.xi_p * SparseXc(SparseXc(a1d * a1d) * a2)));
  model.hamiltonian = SparseXc(i * SparseXc(word - SparseXc(word.adjoint())));

  if (p.gamma0 > 0) model.jump_ops.push_back(SparseXc(std::sqrt(2.0 * p.gamma0) * a0));
  if (p.gamma1 > 0) model.jump_ops.push_back(SparseXc(std::sqrt(2.0 * p.gamma1) * a1));
  if (p.gamma2 > 0) model.jump_ops.push_back(SparseXc(std::sqrt(2.0 * p.gamma2) * a2));
  model.cache_jump_squares();
  return model;
}

LindbladModel build_reduced_opo_model(const OpoParams& p, int n1_max, int n2_max) {
  p.validate();
  if (!(p.gamma0 > 0)) throw ConfigError("reduced model needs gamma0 > 0");
  LindbladModel model;
  model.reg.modes = {{"a1", n1_max + 1, 0}, {"a2", n2_max + 1, 0}};

  SparseXc a1 = annihilation(model.reg, 0);
  SparseXc a2 = annihilation(model.reg, 1);
  SparseXc a1d = SparseXc(a1.adjoint());
  SparseXc a2d = SparseXc(a2.adjoint());

  const Complex i{0.0, 1.0};
  const Complex lambda = polar(p.zeta_p * p.drive / p.gamma0, p.drive_phase);
  SparseXc word = SparseXc(lambda * SparseXc(a1d * a2d));
  word = SparseXc(word + SparseXc(p.xi_p * SparseXc(SparseXc(a1d * a1d) * a2)));
  model.hamiltonian = SparseXc(i * SparseXc(word - SparseXc(word.adjoint())));

  if (p.gamma1 > 0) model.jump_ops.push_back(SparseXc(std::sqrt(2.0 * p.gamma1) * a1));
  if (p.gamma2 > 0) model.jump_ops.push_back(SparseXc(std::sqrt(2.0 * p.gamma2) * a2));
  const double pair_rate = p.zeta_p * p.zeta_p / p.gamma0;
  if (pair_rate > 0)
    model.jump_ops.push_back(SparseXc(std::sqrt(2.0 * pair_rate) * SparseXc(a1 * a2)));
  model.cache_jump_squares();
  return model;
}

namespace {
// Sparse * dense with the columns split across the caller and the helper
// thread; the dense master-equation stepping is dominated by these products.
void spmm(const SparseXc& a, const MatrixXc& b, MatrixXc& out) {
  const long cols = b.cols();
  out.resize(a.rows(), cols);
  if (cols < 64) {
    out.noalias() = a * b;
    return;
  }
  const long half = cols / 2;
  WorkerPair::instance().run(
      [&] { out.leftCols(half).noalias() = a * b.leftCols(half); },
      [&] { out.rightCols(cols - half).noalias() = a * b.rightCols(cols - half); });
}
}  // namespace

MatrixXc lindblad_rhs(const LindbladModel& model, const MatrixXc& rho) {
  const Complex i{0.0, 1.0};
  MatrixXc tmp;
  spmm(model.hamiltonian, rho, tmp);
  MatrixXc out = -i * (tmp - tmp.adjoint());
  MatrixXc lr, work;
  SparseXc fallback;
  for (std::size_t k = 0; k < model.jump_ops.size(); ++k) {
    const SparseXc& L = model.jump_ops[k];
    spmm(L, rho, lr);
    work = lr.adjoint();
    spmm(L, work, tmp);
    out += tmp.adjoint();  // L rho L+
    const SparseXc* m = &fallback;
    if (k < model.jump_sq.size()) {
      m = &model.jump_sq[k];
    } else {
      fallback = SparseXc(SparseXc(L.adjoint()) * L);
    }
    spmm(*m, rho, tmp);  // L+L rho
    out -= 0.5 * (tmp + tmp.adjoint());
  }
  return out;
}

namespace {
double max_abs_row_sum(const SparseXc& m) {
  std::vector<double> row_sum(m.rows(), 0.0);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseXc::InnerIterator it(m, k); it; ++it) row_sum[it.row()] += std::abs(it.value());
  double best = 0.0;
  for (double r : row_sum) best = std::max(best, r);
  return best;
}

// Spectral-radius bound of the generator; explicit stepping past ~3/stiffness
// lets the fast damped modes grow from rounding noise, so the step size is
// hard-capped below that.
double stiffness_bound(const LindbladModel& model) {
  double s = 2.0 * max_abs_row_sum(model.hamiltonian);
  for (const SparseXc& L : model.jump_ops) {
    SparseXc m = SparseXc(SparseXc(L.adjoint()) * L);
    s += 2.0 * max_abs_row_sum(m);
  }
  return s;
}
}  // namespace

MatrixXc lindblad_propagate(const LindbladModel& model, MatrixXc rho, double t0, double t1,
                            const DensePropagationOptions& opt) {
  const long dim = model.reg.dim();
  if (dim > kDenseDimensionGuard)
    throw ResourceGuardError("dense propagation refused: dimension " + std::to_string(dim) +
                             " exceeds guard " + std::to_string(kDenseDimensionGuard) +
                             "; use the trajectory solver");
  if (rho.rows() != dim || rho.cols() != dim)
    throw ConfigError("lindblad_propagate: density matrix does not match register");

  auto rhs = [&model](double, const MatrixXc& r) { return lindblad_rhs(model, r); };
  double cap = 2.5 / std::max(stiffness_bound(model), 1e-30);
  if (opt.max_dt > 0) cap = std::min(cap, opt.max_dt);

  // The generator conserves the trace identically (also under truncation),
  // so trace drift flags a parasitic stiff mode escaping the RK stability
  // region; the affected chunk is redone with a halved step cap.
  const double trace0 = std::real(rho.trace());
  const int chunks = 8;
  const double chunk = (t1 - t0) / chunks;
  double t = t0;
  for (int c = 0; c < chunks && t < t1; ++c) {
    const double target = (c == chunks - 1) ? t1 : t + chunk;
    MatrixXc checkpoint = rho;
    for (int attempt = 0;; ++attempt) {
      OdeOptions ode;
      ode.rtol = opt.rtol;
      ode.atol = opt.atol;
      ode.max_dt = cap;
      ode.initial_dt = std::min(1e-6, cap);
      integrate_rk45<MatrixXc>(rhs, rho, t, target, ode);
      if (std::abs(std::real(rho.trace()) - trace0) <= 1e-7 * std::max(1.0, std::abs(trace0)))
        break;
      if (attempt >= 6)
        throw NumericalError("lindblad_propagate: trace drift persists at dt cap " +
                             std::to_string(cap));
      cap *= 0.5;
      rho = checkpoint;
    }
    t = target;
  }
  return rho;
}

SteadyStateResult propagate_to_steady(const LindbladModel& model, MatrixXc rho0, double t_max,
                                      double chunk, double tol, const DensePropagationOptions& opt) {
  SteadyStateResult out;
  out.rho = std::move(rho0);
  // Damping-rate scale: the smallest nonzero ladder element of each channel
  // recovers its gamma; convergence is judged against the fastest channel.
  double gamma_scale = 0.0;
  for (const SparseXc& L : model.jump_ops) {
    double minc = std::numeric_limits<double>::infinity();
    for (int k = 0; k < L.outerSize(); ++k)
      for (SparseXc::InnerIterator it(L, k); it; ++it)
        minc = std::min(minc, std::abs(it.value()));
    if (std::isfinite(minc)) gamma_scale = std::max(gamma_scale, 0.5 * minc * minc);
  }
  if (gamma_scale == 0.0) gamma_scale = 1.0;

  while (out.t_reached < t_max) {
    double next = std::min(out.t_reached + chunk, t_max);
    out.rho = lindblad_propagate(model, std::move(out.rho), out.t_reached, next, opt);
    out.t_reached = next;
    out.rhs_norm = lindblad_rhs(model, out.rho).norm();
    if (out.rhs_norm < tol * gamma_scale) {
      out.converged = true;
      break;
    }
  }
  return out;
}

VectorXd photon_distribution(const MatrixXc& rho1) {
  VectorXd p(rho1.rows());
  for (long n = 0; n < rho1.rows(); ++n) p(n) = std::max(0.0, std::real(rho1(n, n)));
  return p;
}

double mean_photon_number(const MatrixXc& rho1) {
  double n = 0.0;
  for (long k = 1; k < rho1.rows(); ++k) n += double(k) * std::real(rho1(k, k));
  return n;
}

double g3(const MatrixXc& rho1) {
  const double n = mean_photon_number(rho1);
  if (!(n > 0.0)) throw NumericalError("g3 undefined: <n> = 0");
  double m3 = 0.0;  // <a+^3 a^3> = sum n(n-1)(n-2) P(n)
  for (long k = 3; k < rho1.rows(); ++k)
    m3 += double(k) * double(k - 1) * double(k - 2) * std::real(rho1(k, k));
  return m3 / (n * n * n);
}

double trace_distance(const MatrixXc& rho, const MatrixXc& sigma) {
  MatrixXc diff = rho - sigma;
  diff = 0.5 * (diff + diff.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace cpdc
