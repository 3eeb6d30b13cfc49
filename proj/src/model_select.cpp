#include "mggm/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace mggm {

long count_nonzero_offdiag(const BlockMatrix& omega_hat, double floor) {
  long count = 0;
  const auto& a = omega_hat.data();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && std::abs(a(i, j)) > floor) ++count;
  return count;
}

namespace {

double fit_term(const BlockMatrix& sigma_hat, const BlockMatrix& omega_hat) {
  const Eigen::LLT<Eigen::MatrixXd> llt(omega_hat.data());
  if (llt.info() != Eigen::Success)
    throw InvalidInputError("bic: omega_hat must be positive definite");
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  return sigma_hat.data().cwiseProduct(omega_hat.data()).sum() - logdet;
}

double information_criterion(const BlockMatrix& sigma_hat, const BlockMatrix& omega_hat,
                             int n, double pair_weight) {
  if (n < 1) throw InvalidInputError("bic: n must be >= 1");
  if (sigma_hat.dim() != omega_hat.dim()) throw InvalidInputError("bic: dimension mismatch");
  const double ebar = static_cast<double>(count_nonzero_offdiag(omega_hat));
  return fit_term(sigma_hat, omega_hat) +
         std::log(static_cast<double>(n)) / static_cast<double>(n) * ebar * pair_weight;
}

}  // namespace

double bic(const BlockMatrix& sigma_hat, const BlockMatrix& omega_hat, int n) {
  return information_criterion(sigma_hat, omega_hat, n, 0.5);
}

double selection_criterion(const BlockMatrix& sigma_hat, const BlockMatrix& omega_hat, int n) {
  return information_criterion(sigma_hat, omega_hat, n, 0.25);
}

namespace {

FitOptions fit_options_of(const GridSearchOptions& options) {
  FitOptions fo;
  fo.lla_rounds = options.lla_rounds;
  fo.initial_estimate = options.initial_estimate;
  return fo;
}

bool no_edges_at(const BlockMatrix& sigma_hat, const PenaltySpec& spec_template,
                 const AdmmConfig& config, const GridSearchOptions& options, double lambda) {
  const GraphEstimate est =
      fit(sigma_hat, spec_template.with_lambda(lambda), config, fit_options_of(options));
  return est.edges.empty();
}

}  // namespace

LambdaGrid lambda_grid(const BlockMatrix& sigma_hat, const PenaltySpec& spec_template,
                       const AdmmConfig& config, const GridSearchOptions& options) {
  if (options.grid_size < 2) throw InvalidInputError("lambda_grid: grid_size must be >= 2");
  auto empty_at = [&](double lambda) {
    return no_edges_at(sigma_hat, spec_template, config, options, lambda);
  };

  double lambda_sm = 0.0;
  double lo = 0.0, hi = 0.0;  // lo has edges, hi does not
  if (empty_at(options.lambda_init)) {
    hi = options.lambda_init;
    double lambda = options.lambda_init / 2.0;
    while (lambda >= options.lambda_floor && empty_at(lambda)) {
      hi = lambda;
      lambda /= 2.0;
    }
    if (lambda < options.lambda_floor) {
      lambda_sm = options.lambda_floor;  // diagonal at every lambda tried
    } else {
      lo = lambda;
    }
  } else {
    lo = options.lambda_init;
    double lambda = options.lambda_init * 2.0;
    while (lambda <= options.lambda_cap && !empty_at(lambda)) {
      lo = lambda;
      lambda *= 2.0;
    }
    if (lambda > options.lambda_cap)
      throw SearchError("lambda_grid: no-edge model not reached below lambda = " +
                        std::to_string(options.lambda_cap));
    hi = lambda;
  }
  if (lambda_sm == 0.0) {
    while (hi > 1.01 * lo) {
      const double mid = std::sqrt(hi * lo);
      if (empty_at(mid))
        hi = mid;
      else
        lo = mid;
    }
    lambda_sm = hi;
  }

  LambdaGrid grid;
  grid.lambda_sm = lambda_sm;
  grid.lambda_upper = lambda_sm / 2.0;
  grid.lambda_lower = grid.lambda_upper / 10.0;
  grid.values.resize(options.grid_size);
  const double log_lo = std::log(grid.lambda_lower), log_hi = std::log(grid.lambda_upper);
  for (int i = 0; i < options.grid_size; ++i)
    grid.values[i] =
        std::exp(log_lo + (log_hi - log_lo) * i / static_cast<double>(options.grid_size - 1));
  grid.values.front() = grid.lambda_lower;
  grid.values.back() = grid.lambda_upper;
  return grid;
}

const BicRecord& pick_best(const std::vector<BicRecord>& table) {
  if (table.empty()) throw InvalidInputError("pick_best: empty table");
  const BicRecord* best = &table.front();
  for (const auto& rec : table) {
    if (rec.bic < best->bic ||
        (rec.bic == best->bic &&
         (rec.lambda > best->lambda ||
          (rec.lambda == best->lambda && rec.alpha > best->alpha))))
      best = &rec;
  }
  return *best;
}

namespace {

BicRecord evaluate_point(const BlockMatrix& sigma_hat, int n, const PenaltySpec& spec,
                         const AdmmConfig& config, const GridSearchOptions& options) {
  const GraphEstimate est = fit(sigma_hat, spec, config, fit_options_of(options));
  BicRecord rec;
  rec.lambda = spec.lambda;
  rec.alpha = spec.alpha;
  rec.n_edges = count_nonzero_offdiag(est.omega_hat);
  rec.converged = est.converged();
  try {
    rec.bic = selection_criterion(sigma_hat, est.omega_hat, n);
  } catch (const InvalidInputError&) {
    rec.bic = std::numeric_limits<double>::infinity();
  }
  return rec;
}

}  // namespace

GraphEstimate lasso_reference(const BlockMatrix& sigma_hat, int n, const AdmmConfig& config,
                              const GridSearchOptions& options) {
  PenaltySpec lasso;
  lasso.kind = PenaltyKind::Lasso;
  lasso.alpha = 0.05;
  GridSearchOptions lasso_options = options;
  lasso_options.initial_estimate = nullptr;
  const LambdaGrid grid = lambda_grid(sigma_hat, lasso, config, lasso_options);
  std::vector<BicRecord> table;
  table.reserve(grid.values.size());
  for (double lambda : grid.values)
    table.push_back(
        evaluate_point(sigma_hat, n, lasso.with_lambda(lambda), config, lasso_options));
  const BicRecord& best = pick_best(table);
  return fit(sigma_hat, lasso.with_lambda(best.lambda), config,
             fit_options_of(lasso_options));
}

SelectionResult select_from_covariance(const BlockMatrix& sigma_hat, int n,
                                       const PenaltySpec& spec_template,
                                       const AdmmConfig& config,
                                       const GridSearchOptions& options_in,
                                       const std::vector<double>& alpha_grid) {
  GridSearchOptions options = options_in;
  GraphEstimate reference;
  if (spec_template.kind != PenaltyKind::Lasso && options.initial_estimate == nullptr) {
    reference = lasso_reference(sigma_hat, n, config, options);
    options.initial_estimate = &reference.omega_hat;
  }
  const PenaltySpec phase1_template = spec_template.with_alpha(0.05);
  const LambdaGrid grid = lambda_grid(sigma_hat, phase1_template, config, options);

  SelectionResult result;
  result.lambda_lower = grid.lambda_lower;
  result.lambda_upper = grid.lambda_upper;
  for (double lambda : grid.values)
    result.bic_table.push_back(
        evaluate_point(sigma_hat, n, phase1_template.with_lambda(lambda), config, options));

  const BicRecord phase1_best = pick_best(result.bic_table);
  for (double alpha : alpha_grid) {
    if (alpha == 0.05) continue;  // already scored in phase 1
    result.bic_table.push_back(evaluate_point(
        sigma_hat, n, spec_template.with_lambda(phase1_best.lambda).with_alpha(alpha), config,
        options));
  }
  const BicRecord& best = pick_best(result.bic_table);
  result.best_lambda = best.lambda;
  result.best_alpha = best.alpha;
  return result;
}

SelectionResult select(const Eigen::MatrixXd& data, int p, int m,
                       const PenaltySpec& spec_template, const AdmmConfig& config,
                       const GridSearchOptions& options,
                       const std::vector<double>& alpha_grid) {
  return select_from_covariance(sample_covariance(data, p, m),
                                static_cast<int>(data.rows()), spec_template, config, options,
                                alpha_grid);
}

std::vector<double> default_alpha_grid() { return {0.01, 0.05, 0.1, 0.2, 0.3}; }

void write_bic_csv(const SelectionResult& result, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "lambda,alpha,bic,n_edges,converged\n";
  for (const auto& rec : result.bic_table)
    os << rec.lambda << "," << rec.alpha << "," << rec.bic << "," << rec.n_edges << ","
       << (rec.converged ? 1 : 0) << "\n";
}

}  // namespace mggm
