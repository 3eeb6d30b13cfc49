#pragma once

#include <filesystem>
#include <vector>

#include "mggm/admm.hpp"
#include "mggm/estimator.hpp"
#include "mggm/penalty.hpp"

namespace mggm {

struct BicRecord {
  double lambda = 0.0;
  double alpha = 0.0;
  double bic = 0.0;   // +inf when the estimate has no log-determinant
  long n_edges = 0;   // nonzero off-diagonal entries of omega_hat, ordered pairs
  bool converged = false;
};

struct SelectionResult {
  double best_lambda = 0.0;
  double best_alpha = 0.0;
  std::vector<BicRecord> bic_table;
  double lambda_lower = 0.0;
  double lambda_upper = 0.0;
};

struct LambdaGrid {
  double lambda_sm = 0.0;  // smallest lambda giving a no-edge model
  double lambda_lower = 0.0;
  double lambda_upper = 0.0;
  std::vector<double> values;  // log-spaced, inclusive of both bounds
};

/// BIC(lambda, alpha) = tr(sigma_hat omega_hat) - ln|omega_hat|
///                      + (ln n / n) (|ebar| / 2)
/// where |ebar| counts ordered nonzero off-diagonal entries of omega_hat
/// (magnitude above 1e-10), so |ebar|/2 is the number of free off-diagonal
/// parameters. Throws InvalidInputError when omega_hat is not positive
/// definite.
double bic(const BlockMatrix& sigma_hat, const BlockMatrix& omega_hat, int n);

/// Grid-search objective. Same fit term as bic(), but the complexity term
/// takes the edge set over unordered pairs and halves that cardinality:
///   fit + (ln n / n) (|ebar| / 4).
/// This softer count is what the selection rule is calibrated against; with
/// the full free-parameter count the search collapses onto over-sparse
/// models whose debiased fit terms barely move.
double selection_criterion(const BlockMatrix& sigma_hat, const BlockMatrix& omega_hat, int n);

/// Ordered nonzero off-diagonal entry count used by the BIC penalty.
long count_nonzero_offdiag(const BlockMatrix& omega_hat, double floor = 1e-10);

struct GridSearchOptions {
  int grid_size = 15;
  int lla_rounds = 2;
  double lambda_init = 1.0;    // bracketing starts here
  double lambda_cap = 1e6;     // no-edge model must appear below this
  double lambda_floor = 1e-6;  // assigned when every lambda gives no edges
  // Reweighting seed forwarded to every fit (see FitOptions).
  const BlockMatrix* initial_estimate = nullptr;
};

/// Finds lambda_sm (smallest no-edge lambda) by doubling/halving from
/// lambda_init and geometric bisection to 1% relative tolerance, then returns
/// bounds lambda_upper = lambda_sm / 2, lambda_lower = lambda_upper / 10 and a
/// log-spaced inclusive grid. An already-diagonal model pins lambda_sm at
/// lambda_floor; failure to reach a no-edge model below lambda_cap throws
/// SearchError.
LambdaGrid lambda_grid(const BlockMatrix& sigma_hat, const PenaltySpec& spec_template,
                       const AdmmConfig& config, const GridSearchOptions& options = {});

/// Deterministic argmin over a BIC table: smallest BIC, ties broken toward
/// larger lambda, then larger alpha (sparser models win).
const BicRecord& pick_best(const std::vector<BicRecord>& table);

/// Converged lasso estimate used to seed the non-convex penalties: phase-1
/// selection of a lasso fit at alpha = 0.05, refit at the winner.
GraphEstimate lasso_reference(const BlockMatrix& sigma_hat, int n, const AdmmConfig& config,
                              const GridSearchOptions& options = {});

/// Two-phase selection: phase 1 fixes alpha = 0.05 and scans the lambda grid;
/// phase 2 (run when alpha_grid is nonempty) fixes the winning lambda and
/// scans alpha_grid. Every evaluated point lands in bic_table. Non-convex
/// penalties are seeded from lasso_reference (computed internally unless
/// options.initial_estimate is already set).
SelectionResult select(const Eigen::MatrixXd& data, int p, int m,
                       const PenaltySpec& spec_template, const AdmmConfig& config,
                       const GridSearchOptions& options = {},
                       const std::vector<double>& alpha_grid = {});

SelectionResult select_from_covariance(const BlockMatrix& sigma_hat, int n,
                                       const PenaltySpec& spec_template,
                                       const AdmmConfig& config,
                                       const GridSearchOptions& options = {},
                                       const std::vector<double>& alpha_grid = {});

/// Default alpha grid for the real-data phase-2 search.
std::vector<double> default_alpha_grid();

void write_bic_csv(const SelectionResult& result, const std::filesystem::path& path);

}  // namespace mggm
