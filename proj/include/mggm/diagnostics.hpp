#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "mggm/block_matrix.hpp"
#include "mggm/datagen.hpp"
#include "mggm/penalty.hpp"

namespace mggm {

// First-order stationarity report. On coordinates where the subgradient is
// determined (nonzero entries / nonzero blocks) the violation of
//   sigma_hat - omega^{-1} + alpha*lambda*Z + (1-alpha)*m*lambda*Y = 0
// is measured directly; on zero entries/blocks the minimal-norm subgradient
// consistent with stationarity is solved for and its feasibility
// (|z| <= 1, ||Y||_F <= 1) reported.
struct KktReport {
  double residual_inf = 0.0;
  std::pair<int, int> max_violation_location{-1, -1};
  bool subgradient_feasible = true;
  double max_subgradient_excess = 0.0;  // worst overflow past the unit bound
};

KktReport kkt_residual(const BlockMatrix& omega_hat, const BlockMatrix& sigma_hat,
                       const PenaltySpec& spec, double feasibility_slack = 1e-3);

/// Operator-norm radius below which the penalized objective is strictly
/// convex: +inf for lasso, sqrt((a-1)/m) for SCAD, sqrt(epsilon/(m lambda))
/// for log-sum.
double convexity_threshold(const PenaltySpec& spec, int m);

/// True when ||omega|| <= 0.99 * convexity_threshold(spec, m).
bool within_convexity_region(const PenaltySpec& spec, int m, const BlockMatrix& omega);

/// Checks phi_min(omega^{-1} (x) omega^{-1}) - mu >= -1e-10 by explicit
/// Kronecker eigendecomposition (capped at mp <= 12), and cross-checks
/// phi_min against 1/||omega||^2.
bool hessian_convexity_check(const BlockMatrix& omega, double mu);

struct TailBoundReport {
  double empirical_rate = 0.0;      // block-norm deviations past the threshold
  double bound = 0.0;               // 1 / p^(tau-2)
  bool passes = false;              // empirical_rate <= bound
  double c0_tilde = 0.0;            // block-norm constant
  double c0 = 0.0;                  // element-wise constant (= c0_tilde / m)
  double threshold = 0.0;           // c0_tilde * sqrt(ln p / n)
  double empirical_rate_element = 0.0;  // element-wise deviations past c0*sqrt(ln p/n)
  std::vector<double> deviations;   // per-trial max block-norm deviation
};

/// Monte-Carlo check of the sample-covariance concentration bound:
/// frequency of ||C(sigma_hat - sigma_star)||_inf > c0_tilde sqrt(ln p / n)
/// over trials, against 1/p^(tau-2). Requires n > 2 ln(4 m^2 p^tau).
TailBoundReport tail_bound_check(const BlockMatrix& sigma_star, int n, double tau,
                                 int trials, std::uint64_t seed = 0, int jobs = 1);

void write_tail_bound_csv(const TailBoundReport& report, const std::filesystem::path& path);

struct IrrepReport {
  double lhs_group = 0.0;    // max over non-support pairs of the grouped l1 norm
  double lhs_element = 0.0;  // element-wise analogue over single rows
  double gamma_implied = 0.0;
};

/// Builds Gamma* = (omega_star)^{-1} [x] (omega_star)^{-1}, takes
/// S = E* plus all diagonal pairs (as ordered pairs), and computes both
/// irrepresentability left-hand sides plus the implied gamma = 1 - max(lhs).
/// Capped at mp <= 20.
IrrepReport irrepresentability(const GroundTruth& truth);

}  // namespace mggm
