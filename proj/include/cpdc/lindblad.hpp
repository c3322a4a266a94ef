#pragma once

#include <vector>

#include "cpdc/fock.hpp"
#include "cpdc/ode.hpp"
#include "cpdc/opo.hpp"
#include "cpdc/types.hpp"

namespace cpdc {

/// Master-equation model: drho/dt = -i[H,rho] + sum_k (L rho L+ - {L+L, rho}/2).
/// The damping-rate convention gamma (2 a rho a+ - a+ a rho - rho a+ a) maps
/// onto jump operators L = sqrt(2 gamma) a.
struct LindbladModel {
  ModeRegister reg;
  SparseXc hamiltonian;
  std::vector<SparseXc> jump_ops;
  std::vector<SparseXc> jump_sq;  // L+L per channel; filled by the builders,
                                  // recomputed on the fly when absent

  void cache_jump_squares() {
    jump_sq.clear();
    for (const SparseXc& L : jump_ops) jump_sq.push_back(SparseXc(SparseXc(L.adjoint()) * L));
  }
};

struct FockTruncation {
  int n0_max = 6;
  int n1_max = 18;
  int n2_max = 10;
  long dimension() const {
    return static_cast<long>(n0_max + 1) * (n1_max + 1) * (n2_max + 1);
  }
};

/// Three-mode cavity model (a0, a1, a2) with the rotating-frame drive on a0.
LindbladModel build_full_opo_model(const OpoParams& p, const FockTruncation& trunc);

/// Two-mode model with the pump adiabatically eliminated (gamma0 >> gamma1,2):
/// drive lambda = zeta' E / gamma0 enters as a nondegenerate pair gain and the
/// pump-mediated pair loss appears as a jump operator sqrt(2 zeta'^2/gamma0) a1 a2.
LindbladModel build_reduced_opo_model(const OpoParams& p, int n1_max, int n2_max);

/// Hard cap on the Hilbert dimension accepted by the dense propagator.
inline constexpr long kDenseDimensionGuard = 4096;

struct DensePropagationOptions {
  double rtol = 1e-8;
  double atol = 1e-12;
  double max_dt = 0.0;
};

/// Dense density-matrix on the full register, stepped with adaptive RK45.
/// Throws ResourceGuardError above kDenseDimensionGuard.
MatrixXc lindblad_propagate(const LindbladModel& model, MatrixXc rho, double t0, double t1,
                            const DensePropagationOptions& opt = {});

/// One evaluation of the master-equation right-hand side.
MatrixXc lindblad_rhs(const LindbladModel& model, const MatrixXc& rho);

struct SteadyStateResult {
  MatrixXc rho;
  double t_reached = 0.0;
  bool converged = false;
  double rhs_norm = 0.0;  // ||drho/dt||_F at the returned state
};

/// Integrates in chunks until the generator residual stalls below
/// tol * max(gamma) or t_max is hit.
SteadyStateResult propagate_to_steady(const LindbladModel& model, MatrixXc rho0, double t_max,
                                      double chunk = 2.0, double tol = 1e-7,
                                      const DensePropagationOptions& opt = {});

/// Diagonal of a single-mode density matrix (clamped at 0 for roundoff).
VectorXd photon_distribution(const MatrixXc& rho1);

/// Mean photon number of a single-mode density matrix.
double mean_photon_number(const MatrixXc& rho1);

/// Normalized zero-delay third-order correlation Tr[a+^3 a^3 rho] / <n>^3.
/// Throws NumericalError when <n> == 0.
double g3(const MatrixXc& rho1);

/// Fidelity-free distance 0.5 * ||rho - sigma||_1 (trace norm).
double trace_distance(const MatrixXc& rho, const MatrixXc& sigma);

}  // namespace cpdc
