#pragma once

#include <vector>

#include "mggm/block_matrix.hpp"
#include "mggm/penalty.hpp"

namespace mggm {

// Control constants for the scaled-ADMM solver: initial penalty parameter,
// adaptation factor, absolute/relative stopping tolerances, iteration cap.
struct AdmmConfig {
  double rho_init = 2.0;
  double phi = 10.0;
  double tau_abs = 1e-4;
  double tau_rel = 1e-4;
  int t_max = 200;

  void validate() const {
    if (!(rho_init > 0)) throw InvalidInputError("admm: rho_init must be > 0");
    if (!(phi > 1)) throw InvalidInputError("admm: phi must be > 1");
    if (!(tau_abs > 0) || !(tau_rel > 0))
      throw InvalidInputError("admm: tolerances must be > 0");
    if (t_max < 1) throw InvalidInputError("admm: t_max must be >= 1");
  }
};

struct AdmmState {
  BlockMatrix omega;  // likelihood-side iterate, positive definite
  BlockMatrix v;      // split variable carrying the penalties
  BlockMatrix u;      // scaled dual
  double rho = 0.0;
  int iteration = 0;
};

struct SolverResult {
  BlockMatrix omega_hat;  // converged V
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

struct ConvergenceReport {
  bool converged = false;
  double d_p = 0.0;
  double d_d = 0.0;
  double tau_pri = 0.0;
  double tau_dual = 0.0;
};

struct IterationTrace {
  int iteration = 0;
  double d_p = 0.0;
  double d_d = 0.0;
  double rho = 0.0;
  double objective = 0.0;  // weighted objective at V; +inf when V is not PD
};

/// Soft threshold T_st(a, beta) = (1 - beta/|a|)_+ * a, with T_st(0, .) = 0.
inline double soft_threshold(double a, double beta) {
  if (a == 0.0) return 0.0;
  const double f = 1.0 - beta / std::abs(a);
  return f > 0.0 ? f * a : 0.0;
}

/// Likelihood-side update: eigendecompose sigma_hat - rho (V - U) = P D P^T
/// and rebuild with D_ll replaced by (-D_ll + sqrt(D_ll^2 + 4 rho))/(2 rho).
/// The output is symmetric positive definite for any real spectrum.
BlockMatrix omega_update(const BlockMatrix& sigma_hat, const AdmmState& state);

/// Proximal update of the split variable. With A = omega_next + U: diagonal
/// blocks keep their diagonal entries and soft-threshold off-diagonal entries
/// at alpha * w_e(i,j) / rho; off-diagonal blocks are soft-thresholded
/// element-wise, then shrunk as a group by
/// (1 - (1-alpha) m w_g(k,l) / (rho ||B||_F))_+, giving an exactly zero block
/// at or below the threshold.
BlockMatrix v_update(const BlockMatrix& omega_next, const AdmmState& state,
                     const LlaWeights& weights, double alpha);

/// Residuals and tolerances:
///   tau_pri  = mp tau_abs + tau_rel max(||Omega||_F, ||V||_F)
///   tau_dual = mp tau_abs + tau_rel ||U||_F / rho
///   d_p = ||Omega - V||_F,  d_d = rho ||V - V_prev||_F.
ConvergenceReport convergence_check(const AdmmState& next, const AdmmState& prev,
                                    const AdmmConfig& config);

/// Doubles rho and halves U when d_p > phi d_d; halves rho and doubles U when
/// d_d > phi d_p; ties leave both unchanged.
void rho_update(double d_p, double d_d, AdmmState& state, double phi);

/// Weighted objective -ln|V| + tr(sigma_hat V) + penalties with fixed weights;
/// +inf when V is not positive definite.
double weighted_objective(const BlockMatrix& sigma_hat, const BlockMatrix& v,
                          const LlaWeights& weights, double alpha);

/// Full solver loop. omega_init seeds the Omega iterate; V and U start at
/// zero. Reaching t_max returns converged = false rather than throwing;
/// non-finite iterates throw NumericError.
SolverResult solve(const BlockMatrix& sigma_hat, const LlaWeights& weights, double alpha,
                   const AdmmConfig& config, const BlockMatrix& omega_init,
                   std::vector<IterationTrace>* trace = nullptr);

void write_trace_csv(const std::vector<IterationTrace>& trace,
                     const std::filesystem::path& path);

}  // namespace mggm
