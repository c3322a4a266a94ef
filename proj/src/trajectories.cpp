#include "cpdc/trajectories.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "cpdc/rng.hpp"

namespace cpdc {

namespace {

constexpr long kFullRhoGuard = 512;
constexpr std::size_t kBlock = 8;  // trajectories per reduction block

struct Workspace {
  std::vector<VectorXc> lw;   // L_k psi per channel (current stage)
  std::vector<VectorXc> lw0;  // L_k psi at step start (noise term)
  std::vector<Complex> e;     // <L_k>
  std::vector<Complex> e0;
  VectorXc k1, k2, k3, k4, stage, drift, psi0;

  void resize(std::size_t channels, long dim) {
    lw.assign(channels, VectorXc::Zero(dim));
    lw0.assign(channels, VectorXc::Zero(dim));
    e.assign(channels, Complex{0, 0});
    e0.assign(channels, Complex{0, 0});
    k1 = k2 = k3 = k4 = stage = drift = psi0 = VectorXc::Zero(dim);
  }
};

class TrajectoryRunner {
 public:
  TrajectoryRunner(const LindbladModel& model, const TrajectoryOptions& opt)
      : model_(model), opt_(opt), dim_(model.reg.dim()) {
    // Non-Hermitian drift matrix -iH - (1/2) sum L+L, shared by both schemes.
    SparseXc a = SparseXc(Complex{0, -1} * model.hamiltonian);
    for (const SparseXc& L : model.jump_ops)
      a = SparseXc(a - SparseXc(Complex{0.5, 0.0} * SparseXc(SparseXc(L.adjoint()) * L)));
    drift_matrix_ = a;
  }

  // QSD / MCWF drift on a (near) unit vector; fills ws.lw and ws.e with the
  // channel applications and expectations of `psi` as a side product.
  void drift(const VectorXc& psi, Workspace& ws, VectorXc& out, double& variance_sum) const {
    const double nrm2 = psi.squaredNorm();
    out.noalias() = drift_matrix_ * psi;
    variance_sum = 0.0;
    double abs2_sum = 0.0;
    for (std::size_t k = 0; k < model_.jump_ops.size(); ++k) {
      ws.lw[k].noalias() = model_.jump_ops[k] * psi;
      const Complex e = psi.dot(ws.lw[k]) / nrm2;
      ws.e[k] = e;
      const double l2 = ws.lw[k].squaredNorm() / nrm2;
      variance_sum += l2 - std::norm(e);
      abs2_sum += std::norm(e);
      if (opt_.unraveling == Unraveling::Diffusive) out.noalias() += std::conj(e) * ws.lw[k];
    }
    if (opt_.unraveling == Unraveling::Diffusive)
      out.noalias() -= Complex{0.5 * abs2_sum, 0.0} * psi;
    else
      variance_sum += abs2_sum;  // MCWF norm ledger tracks the full <L+L>
  }

  // One diffusive step of size dt; returns false when the norm ledger defect
  // exceeds the gate and the step must be retried at dt/2.
  bool qsd_step(VectorXc& psi, double dt, CounterRng& rng, Workspace& ws) const {
    double v1, v2, v3, v4;
    drift(psi, ws, ws.k1, v1);
    // Keep the start-of-step channel data for the noise term.
    for (std::size_t k = 0; k < model_.jump_ops.size(); ++k) {
      ws.lw0[k] = ws.lw[k];
      ws.e0[k] = ws.e[k];
    }

    ws.stage = psi + (0.5 * dt) * ws.k1;
    drift(ws.stage, ws, ws.k2, v2);
    ws.stage = psi + (0.5 * dt) * ws.k2;
    drift(ws.stage, ws, ws.k3, v3);
    ws.stage = psi + dt * ws.k3;
    drift(ws.stage, ws, ws.k4, v4);
    ws.drift = psi + (dt / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);

    // Along the exact drift flow, d log||psi||^2 / dt = -sum Var_k (QSD) or
    // -sum <L+L> (MCWF); a Simpson tally over the RK4 stages predicts the
    // step's norm change, and a large defect flags an unresolved step.
    const double predicted = -dt * (v1 + 2.0 * v2 + 2.0 * v3 + v4) / 6.0;
    const double actual = std::log(ws.drift.squaredNorm() / psi.squaredNorm());
    if (std::abs(actual - predicted) > opt_.norm_gate) return false;

    psi.swap(ws.drift);
    const double root_half_dt = std::sqrt(0.5 * dt);
    for (std::size_t k = 0; k < model_.jump_ops.size(); ++k) {
      const Complex xi{root_half_dt * rng.normal(), root_half_dt * rng.normal()};
      psi.noalias() += xi * ws.lw0[k];
      psi.noalias() -= (xi * ws.e0[k]) * ws.psi0;
    }
    psi /= psi.norm();
    return true;
  }

  // MCWF: jump test first, deterministic non-Hermitian evolution otherwise.
  bool mcwf_step(VectorXc& psi, double dt, CounterRng& rng, Workspace& ws) const {
    double total_rate = 0.0;
    for (std::size_t k = 0; k < model_.jump_ops.size(); ++k) {
      ws.lw[k].noalias() = model_.jump_ops[k] * psi;
      ws.e[k] = ws.lw[k].squaredNorm();  // stores <L+L> in the real part
      total_rate += std::real(ws.e[k]);
    }
    const double u = rng.uniform();
    if (u < total_rate * dt) {
      double pick = rng.uniform() * total_rate;
      std::size_t k = 0;
      for (; k + 1 < model_.jump_ops.size(); ++k) {
        pick -= std::real(ws.e[k]);
        if (pick <= 0.0) break;
      }
      psi = ws.lw[k] / ws.lw[k].norm();
      return true;
    }
    double v1, v2, v3, v4;
    drift(psi, ws, ws.k1, v1);
    ws.stage = psi + (0.5 * dt) * ws.k1;
    drift(ws.stage, ws, ws.k2, v2);
    ws.stage = psi + (0.5 * dt) * ws.k2;
    drift(ws.stage, ws, ws.k3, v3);
    ws.stage = psi + dt * ws.k3;
    drift(ws.stage, ws, ws.k4, v4);
    ws.drift = psi + (dt / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
    const double predicted = -dt * (v1 + 2.0 * v2 + 2.0 * v3 + v4) / 6.0;
    const double actual = std::log(ws.drift.squaredNorm() / psi.squaredNorm());
    if (std::abs(actual - predicted) > opt_.norm_gate) return false;
    psi.swap(ws.drift);
    psi /= psi.norm();
    return true;
  }

  // Advances to t + dt, recursively halving on gate failures.
  void advance(VectorXc& psi, double dt, int depth, CounterRng& rng, Workspace& ws,
               long& rejections) const {
    if (depth > opt_.max_halvings)
      throw NumericalError("trajectory step kept failing the norm gate at dt = " +
                           std::to_string(dt));
    ws.psi0 = psi;
    const bool ok = (opt_.unraveling == Unraveling::Diffusive) ? qsd_step(psi, dt, rng, ws)
                                                               : mcwf_step(psi, dt, rng, ws);
    if (!ok) {
      ++rejections;
      advance(psi, 0.5 * dt, depth + 1, rng, ws, rejections);
      advance(psi, 0.5 * dt, depth + 1, rng, ws, rejections);
    }
  }

  const LindbladModel& model_;
  const TrajectoryOptions& opt_;
  long dim_;
  SparseXc drift_matrix_;
};

struct BlockPartial {
  std::vector<std::vector<MatrixXc>> rho_reduced;  // [record][mode]
  std::vector<MatrixXc> rho_full;                  // [record]
  double leakage = 0.0;
  long rejections = 0;
};

}  // namespace

EnsembleResult run_trajectories(const LindbladModel& model, const VectorXc& psi0,
                                const TrajectoryOptions& opt) {
  if (opt.n_traj < 1) throw ConfigError("run_trajectories: n_traj must be >= 1");
  if (opt.record_times.empty()) throw ConfigError("run_trajectories: no record times");
  for (std::size_t i = 1; i < opt.record_times.size(); ++i)
    if (opt.record_times[i] < opt.record_times[i - 1])
      throw ConfigError("run_trajectories: record times must be ascending");
  const long dim = model.reg.dim();
  if (psi0.size() != dim) throw ConfigError("run_trajectories: state size mismatch");
  if (opt.accumulate_full_rho && dim > kFullRhoGuard)
    throw ResourceGuardError("full-rho accumulation refused above dimension " +
                             std::to_string(kFullRhoGuard));

  TrajectoryRunner runner(model, opt);
  const std::size_t n_modes = model.reg.modes.size();
  const std::size_t n_rec = opt.record_times.size();
  const std::size_t n_blocks = (opt.n_traj + kBlock - 1) / kBlock;

  std::vector<BlockPartial> partials(n_blocks);
  // Per-trajectory scalar records (no contention: slot per trajectory).
  std::vector<MatrixXd> n_records(n_rec, MatrixXd::Zero(opt.n_traj, n_modes));

  std::atomic<std::size_t> next_block{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    Workspace ws;
    ws.resize(model.jump_ops.size(), dim);
    try {
      for (;;) {
        const std::size_t block = next_block.fetch_add(1);
        if (block >= n_blocks) break;
        BlockPartial& part = partials[block];
        part.rho_reduced.assign(n_rec, {});
        for (auto& per_mode : part.rho_reduced)
          for (std::size_t m = 0; m < n_modes; ++m)
            per_mode.push_back(MatrixXc::Zero(model.reg.modes[m].levels, model.reg.modes[m].levels));
        if (opt.accumulate_full_rho) part.rho_full.assign(n_rec, MatrixXc::Zero(dim, dim));

        const std::size_t traj_lo = block * kBlock;
        const std::size_t traj_hi = std::min(opt.n_traj, traj_lo + kBlock);
        for (std::size_t traj = traj_lo; traj < traj_hi; ++traj) {
          CounterRng rng(opt.seed, traj);
          VectorXc psi = psi0;
          psi /= psi.norm();
          double t = 0.0;
          for (std::size_t rec = 0; rec < n_rec; ++rec) {
            const double target = opt.record_times[rec];
            while (t < target - 1e-12 * std::max(1.0, target)) {
              const double dt = std::min(opt.dt, target - t);
              runner.advance(psi, dt, 0, rng, ws, part.rejections);
              t += dt;
            }
            for (std::size_t m = 0; m < n_modes; ++m) {
              MatrixXc red = reduced_density(model.reg, psi, m);
              n_records[rec](traj, m) = mean_photon_number(red);
              part.rho_reduced[rec][m] += red;
            }
            if (opt.accumulate_full_rho)
              part.rho_full[rec].noalias() += psi * psi.adjoint();
            part.leakage = std::max(part.leakage, truncation_leakage(model.reg, psi));
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  int n_threads = opt.threads > 0 ? opt.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_blocks)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  EnsembleResult out;
  out.times = opt.record_times;
  out.seed = opt.seed;
  out.n_traj = opt.n_traj;
  out.n_mean = MatrixXd::Zero(n_rec, n_modes);
  out.n_stderr = MatrixXd::Zero(n_rec, n_modes);
  out.rho_reduced.assign(n_rec, {});
  for (std::size_t rec = 0; rec < n_rec; ++rec)
    for (std::size_t m = 0; m < n_modes; ++m)
      out.rho_reduced[rec].push_back(
          MatrixXc::Zero(model.reg.modes[m].levels, model.reg.modes[m].levels));
  if (opt.accumulate_full_rho) out.rho_full.assign(n_rec, MatrixXc::Zero(dim, dim));

  // Merge in block order: the reduction is independent of thread scheduling.
  for (std::size_t block = 0; block < n_blocks; ++block) {
    const BlockPartial& part = partials[block];
    for (std::size_t rec = 0; rec < n_rec; ++rec) {
      for (std::size_t m = 0; m < n_modes; ++m) out.rho_reduced[rec][m] += part.rho_reduced[rec][m];
      if (opt.accumulate_full_rho) out.rho_full[rec] += part.rho_full[rec];
    }
    out.max_leakage = std::max(out.max_leakage, part.leakage);
    out.step_rejections += part.rejections;
  }
  const double inv_n = 1.0 / static_cast<double>(opt.n_traj);
  for (std::size_t rec = 0; rec < n_rec; ++rec) {
    for (std::size_t m = 0; m < n_modes; ++m) out.rho_reduced[rec][m] *= inv_n;
    if (opt.accumulate_full_rho) out.rho_full[rec] *= inv_n;
    for (std::size_t m = 0; m < n_modes; ++m) {
      const auto col = n_records[rec].col(m);
      const double mean = col.mean();
      out.n_mean(rec, m) = mean;
      if (opt.n_traj > 1) {
        const double var =
            (col.array() - mean).square().sum() / static_cast<double>(opt.n_traj - 1);
        out.n_stderr(rec, m) = std::sqrt(var / static_cast<double>(opt.n_traj));
      }
    }
  }
  return out;
}

}  // namespace cpdc
