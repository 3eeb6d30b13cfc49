// Property-style acceptance suite: always runnable, no large sweeps.
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acceptance_util.hpp"
#include "mggm/diagnostics.hpp"
#include "mggm/harness.hpp"
#include "mggm/linalg.hpp"
#include "mggm/rng.hpp"

using namespace mggm;

namespace {

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return 0.5 * (a + a.transpose());
}

Eigen::MatrixXd random_spd(int n, Rng& rng, double lo, double hi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(random_symmetric(n, rng));
  Eigen::VectorXd evals(n);
  for (int i = 0; i < n; ++i) evals(i) = rng.uniform(lo, hi);
  return es.eigenvectors() * evals.asDiagonal() * es.eigenvectors().transpose();
}

LlaWeights constant_weights(int p, int m, double lambda) {
  LlaWeights w;
  w.element = Eigen::MatrixXd::Constant(p * m, p * m, lambda);
  w.group = Eigen::MatrixXd::Constant(p, p, lambda);
  return w;
}

BlockMatrix covariance_of(const GroundTruth& truth) {
  const auto es = sym_eig(truth.omega_star);
  BlockMatrix sigma = truth.omega_star.with_same_shape(
      es.eigenvectors * es.eigenvalues.cwiseInverse().asDiagonal() *
      es.eigenvectors.transpose());
  sigma.symmetrize();
  return sigma;
}

// quadruple-loop reference for the support projection constants
IrrepReport irrep_oracle(const GroundTruth& truth) {
  const int p = truth.p, m = truth.m, mm = m * m;
  const Eigen::MatrixXd sigma = truth.omega_star.data().inverse();
  const int dim = p * p * mm;
  Eigen::MatrixXd gamma(dim, dim);
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k)
      for (int s = 0; s < m; ++s)
        for (int u = 0; u < m; ++u)
          for (int l = 0; l < p; ++l)
            for (int q = 0; q < p; ++q)
              for (int t = 0; t < m; ++t)
                for (int v = 0; v < m; ++v)
                  gamma((j * p + k) * mm + s * m + u, (l * p + q) * mm + t * m + v) =
                      sigma(j * m + s, l * m + t) * sigma(k * m + u, q * m + v);
  std::vector<int> support, complement;
  for (int j = 0; j < p; ++j)
    for (int k = 0; k < p; ++k) {
      const bool in_s = (j == k) || truth.edges_star.count(make_edge(j, k)) > 0;
      (in_s ? support : complement).push_back(j * p + k);
    }
  const int sc = static_cast<int>(support.size()) * mm;
  Eigen::MatrixXd gss(sc, sc);
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = 0; b < support.size(); ++b)
      gss.block(a * mm, b * mm, mm, mm) =
          gamma.block(support[a] * mm, support[b] * mm, mm, mm);
  const Eigen::MatrixXd gss_inv = gss.inverse();
  IrrepReport report;
  for (int f : complement) {
    Eigen::MatrixXd gfs(mm, sc);
    for (std::size_t a = 0; a < support.size(); ++a)
      gfs.block(0, a * mm, mm, mm) = gamma.block(f * mm, support[a] * mm, mm, mm);
    const Eigen::MatrixXd mf = gfs * gss_inv;
    double group_sum = 0.0;
    for (std::size_t a = 0; a < support.size(); ++a)
      group_sum += mf.block(0, a * mm, mm, mm).norm();
    report.lhs_group = std::max(report.lhs_group, group_sum);
    for (int r = 0; r < mm; ++r)
      report.lhs_element = std::max(report.lhs_element, mf.row(r).cwiseAbs().sum());
  }
  report.gamma_implied = 1.0 - std::max(report.lhs_group, report.lhs_element);
  return report;
}

std::string strip_timing_column(const std::filesystem::path& path) {
  std::ifstream is(path);
  std::ostringstream out;
  std::string line;
  while (std::getline(is, line)) out << line.substr(0, line.rfind(',')) << "\n";
  return out.str();
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

int main() {
  acceptance::Suite suite;

  suite.criterion("A7 likelihood-step output is positive definite on 1000 random inputs",
                  [](std::string& detail) {
    Rng rng(7001);
    double worst = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
      const int p = 2 + static_cast<int>(rng.below(3));
      const int m = 1 + static_cast<int>(rng.below(2));
      const double rho = std::pow(2.0, rng.uniform(-5.0, 5.0));
      AdmmState state{BlockMatrix::Identity(p, m),
                      BlockMatrix(random_symmetric(p * m, rng), p, m),
                      BlockMatrix(random_symmetric(p * m, rng), p, m), rho, 0};
      const BlockMatrix sigma(random_symmetric(p * m, rng), p, m);
      const BlockMatrix omega = omega_update(sigma, state);
      worst = std::min(worst, sym_eig(omega).eigenvalues.minCoeff());
      // the eigenvalue map itself is positive for any real input
      const auto es = sym_eig(sigma.data() - rho * (state.v.data() - state.u.data()));
      for (int l = 0; l < es.eigenvalues.size(); ++l) {
        const double d = es.eigenvalues(l);
        if ((-d + std::sqrt(d * d + 4.0 * rho)) / (2.0 * rho) <= 0.0) return false;
      }
      if (worst <= 0.0) return false;
    }
    detail = acceptance::fmt("min eigenvalue over all trials = %.3e", worst);
    return worst > 0.0;
  });

  suite.criterion("A8 stationarity residual <= 1e-3 with feasible subgradients, 20 lasso fits",
                  [](std::string& detail) {
    AdmmConfig tight;
    tight.tau_abs = 1e-7;
    tight.tau_rel = 1e-7;
    tight.t_max = 5000;
    Rng pick(8001);
    double worst_residual = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const int p = 3 + static_cast<int>(pick.below(8));
      const int m = 1 + static_cast<int>(pick.below(3));
      const GroundTruth truth = make_ground_truth(GraphKind::Er, p, m, 0.3, 2000 + trial);
      const Eigen::MatrixXd data = sample_data(truth, 60 * p, derive_seed(81, trial));
      const BlockMatrix sigma = sample_covariance(data, p, m);
      PenaltySpec spec;
      spec.kind = PenaltyKind::Lasso;
      spec.alpha = 0.05;
      spec.lambda = 0.05 + 0.01 * (trial % 5);
      const GraphEstimate est = fit(sigma, spec, tight);
      if (!est.converged()) {
        detail = acceptance::fmt("trial %d did not converge", trial);
        return false;
      }
      const KktReport report = kkt_residual(est.omega_hat, sigma, spec);
      worst_residual = std::max(worst_residual, report.residual_inf);
      if (report.residual_inf > 1e-3 || !report.subgradient_feasible) {
        detail = acceptance::fmt("trial %d residual %.3e feasible=%d", trial,
                                 report.residual_inf, report.subgradient_feasible ? 1 : 0);
        return false;
      }
    }
    detail = acceptance::fmt("worst residual %.3e", worst_residual);
    return true;
  });

  suite.criterion("A9 Hessian convexity check agrees with the operator-norm rule, 100 matrices",
                  [](std::string& detail) {
    Rng rng(9001);
    int checked = 0;
    while (checked < 100) {
      const double mu = rng.uniform(0.05, 2.0);
      const Eigen::MatrixXd a = random_spd(4, rng, 0.3, 2.5);
      const double op = sym_eig(a).eigenvalues.cwiseAbs().maxCoeff();
      if (std::abs(op - 1.0 / std::sqrt(mu)) <= 1e-3) continue;
      const bool analytic = op <= 1.0 / std::sqrt(mu);
      if (hessian_convexity_check(BlockMatrix(a, 2, 2), mu) != analytic) {
        detail = acceptance::fmt("disagreement at ||omega|| = %.6f, mu = %.6f", op, mu);
        return false;
      }
      ++checked;
    }
    detail = "100/100 agree";
    return true;
  });

  suite.criterion("A10 covariance concentration: exceedance rate under 1/p^(tau-2)",
                  [](std::string& detail) {
    const GroundTruth truth = make_ground_truth(GraphKind::Er, 20, 2, 0.05, 104);
    const TailBoundReport report = tail_bound_check(covariance_of(truth), 1000, 3.0, 500, 10);
    detail = acceptance::fmt("rate %.4f vs bound %.4f", report.empirical_rate, report.bound);
    return report.passes && report.bound == 0.05;
  });

  suite.criterion("A11 support projection constants match a quadruple-loop oracle, 10 truths",
                  [](std::string& detail) {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const int p = 2 + trial % 3, m = 1 + trial % 2;
      const GroundTruth truth = make_ground_truth(GraphKind::Er, p, m, 0.5, 1100 + trial);
      const IrrepReport fast = irrepresentability(truth);
      const IrrepReport slow = irrep_oracle(truth);
      worst = std::max({worst, std::abs(fast.lhs_group - slow.lhs_group),
                        std::abs(fast.lhs_element - slow.lhs_element)});
    }
    detail = acceptance::fmt("max |difference| = %.3e", worst);
    return worst <= 1e-10;
  });

  suite.criterion("A12a group soft-threshold zeroing is bitwise exact", [](std::string& detail) {
    const int p = 2, m = 3;
    Rng rng(1201);
    BlockMatrix omega = BlockMatrix::Identity(p, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) omega.data()(r, m + c) = 1e-3 * rng.normal();
    omega.symmetrize();
    AdmmState state{omega, BlockMatrix::Zero(p, m), BlockMatrix::Zero(p, m), 1.0, 0};
    const BlockMatrix v = v_update(omega, state, constant_weights(p, m, 0.5), 0.05);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (v.block(0, 1)(r, c) != 0.0 || v.block(1, 0)(r, c) != 0.0) return false;
    detail = "below-threshold block is exactly zero";
    return true;
  });

  suite.criterion("A12b lasso edge count non-increasing over a sorted lambda grid",
                  [](std::string& detail) {
    const GroundTruth truth = make_ground_truth(GraphKind::Er, 6, 2, 0.3, 1202);
    const Eigen::MatrixXd data = sample_data(truth, 400, 12);
    const BlockMatrix sigma = sample_covariance(data, 6, 2);
    PenaltySpec spec;
    spec.kind = PenaltyKind::Lasso;
    spec.alpha = 0.05;
    long prev = 0;
    bool first = true;
    for (int i = 0; i < 12; ++i) {
      const double lambda = 0.01 * std::pow(1.6, i);
      const GraphEstimate est = fit(sigma, spec.with_lambda(lambda), AdmmConfig{});
      const long count = static_cast<long>(est.edges.size());
      if (!first && count > prev + 1) {
        detail = acceptance::fmt("count rose from %ld to %ld at lambda %.4f", prev, count,
                                 lambda);
        return false;
      }
      first = false;
      prev = count;
    }
    return true;
  });

  suite.criterion("A12c node relabeling permutes the fitted edge set identically",
                  [](std::string& detail) {
    const int p = 5, m = 2, n = 2000;
    const GroundTruth truth = make_ground_truth(GraphKind::Er, p, m, 0.4, 1203);
    const Eigen::MatrixXd data = sample_data(truth, n, 13);
    PenaltySpec spec;
    spec.kind = PenaltyKind::Lasso;
    spec.lambda = 0.08;
    const GraphEstimate base = fit_data(data, p, m, spec, AdmmConfig{});
    const std::vector<int> perm = {3, 0, 4, 1, 2};
    Eigen::MatrixXd permuted(n, p * m);
    for (int j = 0; j < p; ++j)
      permuted.middleCols(perm[j] * m, m) = data.middleCols(j * m, m);
    const GraphEstimate moved = fit_data(permuted, p, m, spec, AdmmConfig{});
    EdgeSet expected;
    for (const auto& [a, b] : base.edges) expected.insert(make_edge(perm[a], perm[b]));
    detail = acceptance::fmt("%zu edges", base.edges.size());
    return moved.edges == expected && !base.edges.empty();
  });

  suite.criterion("A12d synthetic pipeline is byte-deterministic under a fixed seed",
                  [](std::string& detail) {
    ExperimentConfig cfg;
    cfg.p = 6;
    cfg.m = 2;
    cfg.n_list = {150};
    cfg.penalties = {PenaltyKind::Lasso, PenaltyKind::LogSum};
    cfg.runs = 2;
    cfg.seed = 1204;
    cfg.mode = SelectionMode::Both;
    cfg.lambda_grid_size = 5;
    const auto base = std::filesystem::temp_directory_path() / "mggm_accept_det";
    std::filesystem::remove_all(base);
    cfg.output_dir = base / "a";
    run_synthetic(cfg);
    ExperimentConfig again = cfg;
    again.output_dir = base / "b";
    run_synthetic(again);
    const bool same = strip_timing_column(base / "a" / "runs.csv") ==
                      strip_timing_column(base / "b" / "runs.csv");
    std::filesystem::remove_all(base);
    detail = same ? "identical modulo timing" : "runs.csv differs";
    return same;
  });

  suite.criterion("A13a penalty values and gradients at their pinned points",
                  [](std::string& detail) {
    PenaltySpec scad;
    scad.kind = PenaltyKind::Scad;
    scad.lambda = 1.0;
    PenaltySpec ls;
    ls.kind = PenaltyKind::LogSum;
    ls.lambda = 1.0;
    PenaltySpec lasso;
    lasso.kind = PenaltyKind::Lasso;
    lasso.lambda = 1.0;
    bool ok = true;
    for (const auto* s : {&scad, &ls, &lasso}) ok = ok && penalty_value(*s, 0.0) == 0.0;
    ok = ok && close(penalty_value(scad, 5.0), 2.35, 1e-12);
    ok = ok && close(penalty_value(scad, 2.0), (2 * 3.7 * 2 - 4 - 1) / (2 * 2.7), 1e-12);
    ok = ok && close(penalty_value(ls, 1e-4), 1e-4 * std::log(2.0), 1e-15);
    ok = ok && close(penalty_gradient(ls, 0.0), 1.0, 1e-15);
    ok = ok && close(penalty_gradient(ls, 1e-4), 0.5, 1e-12);
    ok = ok && close(penalty_gradient(scad, 2.0), 1.7 / 2.7, 1e-12);
    ok = ok && penalty_gradient(scad, 4.0) == 0.0;
    // reweighting: lasso constant, zero matrix gives lambda, scad block 0.5
    const LlaWeights wl = lla_weights(lasso, BlockMatrix::Identity(2, 2));
    ok = ok && wl.element.isApproxToConstant(1.0, 0.0) && wl.group.isApproxToConstant(1.0, 0.0);
    const LlaWeights wz = lla_weights(ls, BlockMatrix::Zero(2, 2));
    ok = ok && wz.element.isApproxToConstant(1.0, 1e-14) &&
         wz.group.isApproxToConstant(1.0, 1e-14);
    BlockMatrix half = BlockMatrix::Identity(2, 2);
    half.data()(0, 2) = half.data()(2, 0) = 0.5;
    ok = ok && close(lla_weights(scad, half).group(0, 1), 1.0, 1e-12);
    detail = "penalty module examples";
    return ok;
  });

  suite.criterion("A13b solver examples: eigenvalue map, thresholds, bookkeeping",
                  [](std::string& detail) {
    bool ok = true;
    auto shrunk = [](double d, double rho) {
      return (-d + std::sqrt(d * d + 4.0 * rho)) / (2.0 * rho);
    };
    ok = ok && close(shrunk(0.0, 2.0), 0.70711, 5e-6);
    ok = ok && close(shrunk(3.0, 1.0), 0.30278, 5e-6);
    {
      AdmmState state{BlockMatrix::Identity(3, 1), BlockMatrix::Zero(3, 1),
                      BlockMatrix::Zero(3, 1), 1.0, 0};
      const BlockMatrix omega = omega_update(BlockMatrix::Identity(3, 1), state);
      ok = ok && close(omega.data()(0, 0), 0.61803, 5e-6);
    }
    ok = ok && soft_threshold(2.0, 0.5) == 1.5 && soft_threshold(-2.0, 0.5) == -1.5 &&
         soft_threshold(0.3, 0.5) == 0.0;
    {
      AdmmConfig config;
      BlockMatrix omega = BlockMatrix::Identity(4, 2);
      omega.data() *= 10.0 / omega.data().norm();
      AdmmState next{omega, omega, BlockMatrix::Zero(4, 2), 2.0, 1};
      const auto rep = convergence_check(next, next, config);
      ok = ok && close(rep.tau_pri, 1.8e-3, 1e-15) && rep.converged;
    }
    {
      AdmmState state{BlockMatrix::Identity(2, 1), BlockMatrix::Zero(2, 1),
                      BlockMatrix::Identity(2, 1), 1.0, 0};
      rho_update(100.0, 1.0, state, 10.0);
      ok = ok && state.rho == 2.0 && state.u.data()(0, 0) == 0.5;
      rho_update(1.0, 100.0, state, 10.0);
      ok = ok && state.rho == 1.0 && state.u.data()(0, 0) == 1.0;
      rho_update(5.0, 5.0, state, 10.0);
      ok = ok && state.rho == 1.0;
    }
    {
      const BlockMatrix sigma(Eigen::MatrixXd::Constant(1, 1, 2.0), 1, 1);
      const SolverResult res = solve(sigma, constant_weights(1, 1, 0.3), 0.05, AdmmConfig{},
                                     initial_guess(sigma));
      ok = ok && res.converged && close(res.omega_hat.data()(0, 0), 0.5, 1e-3);
    }
    {
      const SolverResult res = solve(BlockMatrix::Identity(3, 2), constant_weights(3, 2, 5.0),
                                     0.05, AdmmConfig{}, BlockMatrix::Identity(3, 2));
      ok = ok && extract_edges(res.omega_hat).empty();
    }
    {
      GroundTruth truth = make_ground_truth(GraphKind::Er, 4, 2, 0.5, 3);
      for (std::uint64_t seed = 4; truth.edges_star.empty(); ++seed)
        truth = make_ground_truth(GraphKind::Er, 4, 2, 0.5, seed);
      const BlockMatrix sigma = covariance_of(truth);
      bool matched = false;
      for (double lambda : {0.01, 0.02, 0.05, 0.1, 0.2}) {
        const SolverResult res = solve(sigma, constant_weights(4, 2, lambda), 0.05,
                                       AdmmConfig{}, initial_guess(sigma));
        matched = matched || extract_edges(res.omega_hat) == truth.edges_star;
      }
      ok = ok && matched;
    }
    detail = "solver module examples";
    return ok;
  });

  suite.criterion("A13c selection examples: information criterion and bounds",
                  [](std::string& detail) {
    bool ok = true;
    ok = ok && close(bic(BlockMatrix::Identity(3, 2), BlockMatrix::Identity(3, 2), 50), 6.0,
                     1e-12);
    {
      BlockMatrix omega = BlockMatrix::Identity(2, 1);
      omega.data() *= 2.0;
      ok = ok && close(bic(BlockMatrix::Identity(2, 1), omega, 3),
                       4.0 - 2.0 * std::log(2.0), 1e-12);
    }
    {
      // adding one symmetric off-diagonal pair charges exactly ln(n)/n
      const int n = 57;
      BlockMatrix omega = BlockMatrix::Identity(3, 1);
      const BlockMatrix sigma = BlockMatrix::Identity(3, 1);
      const double before = bic(sigma, omega, n);
      const double fit_before = omega.data().trace();  // logdet = 0
      omega.data()(0, 1) = omega.data()(1, 0) = 1e-3;
      const Eigen::LLT<Eigen::MatrixXd> llt(omega.data());
      const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
      const double fit_after = omega.data().trace() - logdet;
      const double penalty_step = bic(sigma, omega, n) - before - (fit_after - fit_before);
      ok = ok && close(penalty_step, std::log(static_cast<double>(n)) / n, 1e-12);
    }
    {
      // bound arithmetic and the floor behavior
      const BlockMatrix eye = BlockMatrix::Identity(4, 1);
      PenaltySpec tmpl;
      tmpl.kind = PenaltyKind::Lasso;
      GridSearchOptions options;
      const LambdaGrid grid = lambda_grid(eye, tmpl, AdmmConfig{}, options);
      ok = ok && close(grid.lambda_upper, grid.lambda_sm / 2.0, 1e-15);
      ok = ok && close(grid.lambda_lower, grid.lambda_upper / 10.0, 1e-15);
      ok = ok && grid.lambda_sm == options.lambda_floor;
      GridSearchOptions two;
      two.grid_size = 2;
      const LambdaGrid grid2 = lambda_grid(eye, tmpl, AdmmConfig{}, two);
      ok = ok && grid2.values.size() == 2 && grid2.values.front() == grid2.lambda_lower &&
           grid2.values.back() == grid2.lambda_upper;
    }
    {
      std::vector<BicRecord> ties = {{0.1, 0.05, 1.0, 9, true}, {0.3, 0.05, 1.0, 3, true}};
      ok = ok && pick_best(ties).lambda == 0.3;
    }
    {
      // synthetic-mode selection fixes alpha at 0.05
      const GroundTruth truth = make_ground_truth(GraphKind::Er, 5, 2, 0.4, 1301);
      const Eigen::MatrixXd data = sample_data(truth, 500, 21);
      PenaltySpec tmpl;
      tmpl.kind = PenaltyKind::Lasso;
      GridSearchOptions options;
      options.grid_size = 6;
      const SelectionResult phase1 = select(data, 5, 2, tmpl, AdmmConfig{}, options, {});
      const SelectionResult same = select(data, 5, 2, tmpl, AdmmConfig{}, options, {0.05});
      ok = ok && phase1.best_alpha == 0.05 && phase1.best_lambda == same.best_lambda &&
           phase1.bic_table.size() == same.bic_table.size();
    }
    detail = "selection module examples";
    return ok;
  });

  suite.criterion("A13d generator examples: graphs, precision blocks, sampling",
                  [](std::string& detail) {
    bool ok = true;
    ok = ok && gen_er_graph(10, 0.0, 1).empty();
    ok = ok && gen_er_graph(10, 1.0, 1).size() == 45;
    {
      double total = 0.0;
      for (int s = 0; s < 100; ++s) total += static_cast<double>(gen_er_graph(100, 0.05, s).size());
      const double sigma = std::sqrt(4950.0 * 0.05 * 0.95);
      ok = ok && std::abs(total / 100.0 - 247.5) <= 3.0 * sigma / 10.0;
    }
    ok = ok && gen_ba_graph(100, 2.0, 2).size() == 99;
    {
      const GroundTruth truth = build_precision({}, 3, 1, 5);
      ok = ok && close(truth.delta, -0.5, 1e-9) &&
           (truth.omega_star.data() - 0.5 * Eigen::MatrixXd::Identity(3, 3))
                   .cwiseAbs()
                   .maxCoeff() <= 1e-9;
    }
    {
      const GroundTruth truth = build_precision({}, 2, 4, 5);
      const Eigen::MatrixXd block = truth.omega_star.block(0, 0);
      ok = ok && close(block(0, 1), 0.5, 1e-12) && close(block(0, 2), 0.25, 1e-12) &&
           close(block(0, 3), 0.125, 1e-12);
    }
    {
      GroundTruth eye;
      eye.omega_star = BlockMatrix::Identity(2, 1);
      eye.p = 2;
      eye.m = 1;
      const int n = 40000;
      const Eigen::MatrixXd data = sample_data(eye, n, 13);
      const Eigen::MatrixXd cov = data.transpose() * data / n;
      ok = ok && (cov - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <=
                     4.0 / std::sqrt(static_cast<double>(n));
      ok = ok && sample_data(eye, 1, 5).allFinite();
      ok = ok && (sample_data(eye, 20, 9) - sample_data(eye, 20, 9)).cwiseAbs().maxCoeff() == 0.0;
    }
    detail = "generator module examples";
    return ok;
  });

  suite.criterion("A13e metric examples", [](std::string& detail) {
    bool ok = true;
    const EdgeSet truth = {{0, 1}, {1, 2}};
    ok = ok && f1_score(truth, truth) == 1.0;
    ok = ok && f1_score({}, truth) == 0.0;
    ok = ok && close(f1_score({{0, 1}}, truth), 2.0 / 3.0, 1e-15);
    ok = ok && hamming(truth, truth) == 0;
    ok = ok && hamming({{0, 1}, {0, 2}}, {{1, 2}, {1, 3}, {2, 3}}) == 5;
    ok = ok && hamming({{0, 1}, {0, 2}}, {{0, 1}, {1, 2}}) == 2;
    Rng rng(1305);
    const BlockMatrix star(random_spd(4, rng, 0.5, 2.0), 2, 2);
    BlockMatrix twice = star;
    twice.data() *= 2.0;
    ok = ok && frob_error(star, star) == 0.0 && close(frob_error(twice, star), 1.0, 1e-12) &&
         close(frob_error(BlockMatrix::Zero(2, 2), star), 1.0, 1e-12);
    detail = "metric module examples";
    return ok;
  });

  std::printf("%d criteria failed\n", suite.failures());
  return suite.exit_code();
}
