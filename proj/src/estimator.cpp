#include "mggm/estimator.hpp"

#include <fstream>

#include "json.hpp"
#include "mggm/linalg.hpp"

namespace mggm {

BlockMatrix sample_covariance(const Eigen::MatrixXd& data, int p, int m) {
  if (data.rows() < 1) throw InvalidInputError("sample_covariance: need at least one sample");
  if (data.cols() != static_cast<Eigen::Index>(p) * m)
    throw InvalidInputError("sample_covariance: data has " + std::to_string(data.cols()) +
                            " columns, expected " + std::to_string(p * m));
  const Eigen::Index n = data.rows(), d = data.cols();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
  sigma.selfadjointView<Eigen::Lower>().rankUpdate(data.transpose(), 1.0 / static_cast<double>(n));
  sigma.triangularView<Eigen::StrictlyUpper>() = sigma.transpose();
  return BlockMatrix(std::move(sigma), p, m);
}

BlockMatrix initial_guess(const BlockMatrix& sigma_hat) {
  Eigen::VectorXd diag = sigma_hat.data().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (!(diag(i) > 0))
      throw InvalidInputError("initial_guess: covariance diagonal must be positive (entry " +
                              std::to_string(i) + ")");
  BlockMatrix omega = BlockMatrix::Zero(sigma_hat.p(), sigma_hat.m());
  omega.data().diagonal() = diag.cwiseInverse();
  return omega;
}

EdgeSet extract_edges(const BlockMatrix& omega_hat, double theta) {
  if (theta < 0) throw InvalidInputError("extract_edges: theta must be nonnegative");
  EdgeSet edges;
  for (int q = 0; q < omega_hat.p(); ++q)
    for (int l = q + 1; l < omega_hat.p(); ++l)
      if (omega_hat.block(q, l).norm() > theta) edges.insert({q, l});
  return edges;
}

GraphEstimate fit(const BlockMatrix& sigma_hat, const PenaltySpec& spec,
                  const AdmmConfig& config, const FitOptions& options) {
  spec.validate();
  config.validate();
  sigma_hat.require_symmetric("fit", 1e-9);
  if (options.lla_rounds < 1) throw InvalidInputError("fit: lla_rounds must be >= 1");

  GraphEstimate est;
  BlockMatrix omega_bar =
      options.initial_estimate ? *options.initial_estimate : initial_guess(sigma_hat);
  if (options.initial_estimate &&
      (omega_bar.p() != sigma_hat.p() || omega_bar.m() != sigma_hat.m()))
    throw InvalidInputError("fit: initial_estimate shape does not match sigma_hat");
  const int rounds = spec.kind == PenaltyKind::Lasso ? 1 : options.lla_rounds;
  for (int r = 0; r < rounds; ++r) {
    const LlaWeights weights = lla_weights(spec, omega_bar);
    const bool last = (r == rounds - 1);
    SolverResult result =
        solve(sigma_hat, weights, spec.alpha, config, omega_bar, last ? options.trace : nullptr);
    const double rel_change =
        omega_bar.data().norm() > 0
            ? (result.omega_hat.data() - omega_bar.data()).norm() / omega_bar.data().norm()
            : 0.0;
    omega_bar = result.omega_hat;
    est.solver_results.push_back(std::move(result));
    if (r > 0 && rel_change <= options.fixed_point_tol) break;
  }
  est.omega_hat = omega_bar;
  est.lla_rounds = static_cast<int>(est.solver_results.size());
  est.theta = options.theta;
  est.block_weights = block_norm_map(est.omega_hat);
  est.edges = extract_edges(est.omega_hat, options.theta);
  return est;
}

GraphEstimate fit_data(const Eigen::MatrixXd& data, int p, int m, const PenaltySpec& spec,
                       const AdmmConfig& config, const FitOptions& options) {
  return fit(sample_covariance(data, p, m), spec, config, options);
}

void save_estimate_json(const GraphEstimate& estimate, const std::filesystem::path& path) {
  nlohmann::json j;
  j["p"] = estimate.omega_hat.p();
  j["m"] = estimate.omega_hat.m();
  j["theta"] = estimate.theta;
  j["lla_rounds"] = estimate.lla_rounds;
  auto edges = nlohmann::json::array();
  for (const auto& [a, b] : estimate.edges) edges.push_back({a + 1, b + 1});  // 1-based on disk
  j["edges"] = std::move(edges);
  auto weights = nlohmann::json::array();
  for (int k = 0; k < estimate.block_weights.rows(); ++k) {
    auto row = nlohmann::json::array();
    for (int l = 0; l < estimate.block_weights.cols(); ++l)
      row.push_back(estimate.block_weights(k, l));
    weights.push_back(std::move(row));
  }
  j["block_weights"] = std::move(weights);
  auto telemetry = nlohmann::json::array();
  for (const auto& r : estimate.solver_results)
    telemetry.push_back({{"iterations", r.iterations},
                         {"converged", r.converged},
                         {"primal_residual", r.primal_residual},
                         {"dual_residual", r.dual_residual}});
  j["solver"] = std::move(telemetry);
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << "\n";
}

}  // namespace mggm
