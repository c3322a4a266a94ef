#pragma once

#include <cstdint>
#include <vector>

#include "cpdc/lindblad.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

enum class Unraveling { Diffusive, Jump };

struct TrajectoryOptions {
  std::size_t n_traj = 100;
  double dt = 1e-3;
  std::vector<double> record_times;  // ascending; trajectories stop at the last entry
  std::uint64_t seed = 0;
  Unraveling unraveling = Unraveling::Diffusive;
  double norm_gate = 1e-6;  // allowed defect of the drift-step norm ledger
  int max_halvings = 20;
  bool accumulate_full_rho = false;  // refused above full-rho guard (dim 512)
  int threads = 0;                   // 0 = hardware concurrency
};

struct EnsembleResult {
  std::vector<double> times;
  MatrixXd n_mean;    // record x mode
  MatrixXd n_stderr;  // record x mode (sample standard error)
  std::vector<std::vector<MatrixXc>> rho_reduced;  // [record][mode], ensemble averaged
  std::vector<MatrixXc> rho_full;                  // [record] when requested
  double max_leakage = 0.0;
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  long step_rejections = 0;
};

/// Evolves an ensemble of pure states under the stochastic unraveling of the
/// model's master equation and averages the requested observables. The result
/// depends only on (seed, n_traj, dt, record_times), not on thread count.
EnsembleResult run_trajectories(const LindbladModel& model, const VectorXc& psi0,
                                const TrajectoryOptions& opt);

}  // namespace cpdc
