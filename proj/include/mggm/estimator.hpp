#pragma once

#include <filesystem>
#include <vector>

#include "mggm/admm.hpp"
#include "mggm/block_matrix.hpp"
#include "mggm/edges.hpp"
#include "mggm/penalty.hpp"

namespace mggm {

// Estimated precision matrix with the edge set read off its block norms.
struct GraphEstimate {
  BlockMatrix omega_hat;
  EdgeSet edges;
  Eigen::MatrixXd block_weights;  // p x p per-block Frobenius norms
  double theta = 0.0;             // edge threshold used
  int lla_rounds = 0;             // solver calls actually made
  std::vector<SolverResult> solver_results;

  bool converged() const {
    for (const auto& r : solver_results)
      if (!r.converged) return false;
    return !solver_results.empty();
  }
};

struct FitOptions {
  int lla_rounds = 2;                 // total solver calls for non-convex penalties
  double theta = 0.0;                 // edge threshold on block norms
  double fixed_point_tol = 1e-4;      // relative change that stops extra rounds
  std::vector<IterationTrace>* trace = nullptr;  // trace of the last round
  // Optional reweighting seed: when set, the first round computes its weights
  // from this estimate instead of (diag sigma_hat)^{-1}. Used to seed the
  // non-convex penalties from a converged lasso solution, which lets their
  // lambda live on its own scale.
  const BlockMatrix* initial_estimate = nullptr;
};

/// Sample covariance (1/n) X^T X of pre-centered data, one sample per row.
BlockMatrix sample_covariance(const Eigen::MatrixXd& data, int p, int m);

/// Initial guess (diag sigma_hat)^{-1}; throws on a nonpositive diagonal.
BlockMatrix initial_guess(const BlockMatrix& sigma_hat);

/// Edges {q, l} with ||omega_hat^(ql)||_F > theta, q < l.
EdgeSet extract_edges(const BlockMatrix& omega_hat, double theta = 0.0);

/// Outer estimation loop: initialize from (diag sigma_hat)^{-1}, compute
/// reweighting from the current iterate, solve, and for non-convex penalties
/// repeat with weights recomputed from the converged estimate (default two
/// rounds total, earlier stop at a relative fixed point). Lasso always makes
/// exactly one solver call.
GraphEstimate fit(const BlockMatrix& sigma_hat, const PenaltySpec& spec,
                  const AdmmConfig& config, const FitOptions& options = {});

GraphEstimate fit_data(const Eigen::MatrixXd& data, int p, int m, const PenaltySpec& spec,
                       const AdmmConfig& config, const FitOptions& options = {});

/// JSON summary: edges, block weight matrix, solver telemetry, theta.
void save_estimate_json(const GraphEstimate& estimate, const std::filesystem::path& path);

}  // namespace mggm
