#include "doctest.h"

#include <algorithm>

#include "mggm/datagen.hpp"
#include "mggm/estimator.hpp"
#include "mggm/linalg.hpp"
#include "mggm/model_select.hpp"
#include "test_helpers.hpp"

using namespace mggm;

TEST_CASE("sample covariance") {
  SUBCASE("single sample is its outer product") {
    Eigen::MatrixXd x(1, 4);
    x << 1.0, -2.0, 0.5, 3.0;
    const BlockMatrix sigma = sample_covariance(x, 2, 2);
    CHECK((sigma.data() - x.row(0).transpose() * x.row(0)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("alternating +-e1 averages to a rank-one diagonal") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 3);
    for (int i = 0; i < 6; ++i) x(i, 0) = (i % 2 == 0) ? 1.0 : -1.0;
    const BlockMatrix sigma = sample_covariance(x, 3, 1);
    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK((sigma.data() - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(sample_covariance(Eigen::MatrixXd(0, 4), 2, 2), InvalidInputError);
  }
  SUBCASE("entrywise error shrinks with n") {
    const GroundTruth truth = make_ground_truth(GraphKind::Er, 3, 2, 0.5, 10);
    const auto es = sym_eig(truth.omega_star);
    const Eigen::MatrixXd sigma_true = es.eigenvectors *
                                       es.eigenvalues.cwiseInverse().asDiagonal() *
                                       es.eigenvectors.transpose();
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {100, 1000, 10000}) {
      const Eigen::MatrixXd data = sample_data(truth, n, 4);
      const BlockMatrix sigma = sample_covariance(data, 3, 2);
      const double err = (sigma.data() - sigma_true).cwiseAbs().maxCoeff();
      CHECK(err < prev);
      prev = err;
    }
  }
}

TEST_CASE("initial guess inverts the covariance diagonal") {
  SUBCASE("identity stays identity") {
    const BlockMatrix init = initial_guess(BlockMatrix::Identity(3, 2));
    CHECK(init.data().isIdentity(0.0));
  }
  SUBCASE("zero diagonal is invalid") {
    BlockMatrix sigma = BlockMatrix::Identity(2, 1);
    sigma.data()(1, 1) = 0.0;
    CHECK_THROWS_AS(initial_guess(sigma), InvalidInputError);
  }
}

TEST_CASE("edge extraction") {
  BlockMatrix omega = BlockMatrix::Identity(4, 2);
  SUBCASE("diagonal matrix has no edges") { CHECK(extract_edges(omega).empty()); }
  SUBCASE("single nonzero block") {
    omega.data()(0 * 2, 2 * 2) = 0.3;  // block (0, 2)
    omega.symmetrize();
    const EdgeSet edges = extract_edges(omega);
    CHECK(edges == EdgeSet{{0, 2}});
  }
  SUBCASE("threshold above the largest block norm empties the set") {
    omega.data()(0, 2) = omega.data()(2, 0) = 0.3;
    CHECK(extract_edges(omega, 10.0).empty());
  }
}

TEST_CASE("fit run counts per penalty kind") {
  const GroundTruth truth = make_ground_truth(GraphKind::Er, 4, 2, 0.4, 12);
  const Eigen::MatrixXd data = sample_data(truth, 300, 5);
  const BlockMatrix sigma = sample_covariance(data, 4, 2);
  const AdmmConfig config;

  PenaltySpec lasso;
  lasso.kind = PenaltyKind::Lasso;
  lasso.lambda = 0.1;
  FitOptions more_rounds;
  more_rounds.lla_rounds = 3;
  CHECK(fit(sigma, lasso, config, more_rounds).lla_rounds == 1);

  PenaltySpec logsum = lasso;
  logsum.kind = PenaltyKind::LogSum;
  CHECK(fit(sigma, logsum, config).lla_rounds == 2);
}

TEST_CASE("fit rejects a covariance with nonpositive diagonal") {
  BlockMatrix sigma = BlockMatrix::Identity(2, 2);
  sigma.data()(0, 0) = 0.0;
  PenaltySpec spec;
  spec.lambda = 0.1;
  CHECK_THROWS_AS(fit(sigma, spec, AdmmConfig{}), InvalidInputError);
}

TEST_CASE("reweighted rounds cannot be requested below one") {
  PenaltySpec spec;
  FitOptions fo;
  fo.lla_rounds = 0;
  CHECK_THROWS_AS(fit(BlockMatrix::Identity(2, 2), spec, AdmmConfig{}, fo),
                  InvalidInputError);
}

TEST_CASE("edge count is non-increasing along a lasso lambda grid") {
  const GroundTruth truth = make_ground_truth(GraphKind::Er, 6, 2, 0.3, 77);
  const Eigen::MatrixXd data = sample_data(truth, 400, 8);
  const BlockMatrix sigma = sample_covariance(data, 6, 2);
  PenaltySpec spec;
  spec.kind = PenaltyKind::Lasso;
  spec.alpha = 0.05;
  const AdmmConfig config;

  std::vector<double> lambdas;
  for (int i = 0; i < 12; ++i) lambdas.push_back(0.01 * std::pow(1.6, i));
  long prev = 0;
  bool first = true;
  for (double lambda : lambdas) {
    const GraphEstimate est = fit(sigma, spec.with_lambda(lambda), config);
    const long count = static_cast<long>(est.edges.size());
    if (!first) CHECK(count <= prev + 1);  // solver-tolerance slack of one edge
    first = false;
    prev = count;
  }
}

TEST_CASE("node relabeling permutes the recovered edges identically") {
  const int p = 5, m = 2, n = 2000;
  const GroundTruth truth = make_ground_truth(GraphKind::Er, p, m, 0.4, 42);
  const Eigen::MatrixXd data = sample_data(truth, n, 9);
  PenaltySpec spec;
  spec.kind = PenaltyKind::Lasso;
  spec.lambda = 0.08;
  const AdmmConfig config;
  const GraphEstimate base = fit_data(data, p, m, spec, config);

  const std::vector<int> perm = {3, 0, 4, 1, 2};  // node j of base ends up at perm[j]
  Eigen::MatrixXd permuted(n, p * m);
  for (int j = 0; j < p; ++j)
    permuted.middleCols(perm[j] * m, m) = data.middleCols(j * m, m);
  const GraphEstimate moved = fit_data(permuted, p, m, spec, config);

  EdgeSet expected;
  for (const auto& [a, b] : base.edges) expected.insert(make_edge(perm[a], perm[b]));
  CHECK(moved.edges == expected);
}

TEST_CASE("block support equals element support in the flattened view") {
  const GroundTruth truth = make_ground_truth(GraphKind::Er, 5, 2, 0.4, 21);
  const Eigen::MatrixXd data = sample_data(truth, 500, 3);
  PenaltySpec spec;
  spec.kind = PenaltyKind::Lasso;
  spec.lambda = 0.1;
  const GraphEstimate est = fit_data(data, 5, 2, spec, AdmmConfig{});
  for (int q = 0; q < 5; ++q)
    for (int l = q + 1; l < 5; ++l) {
      const bool edge = est.edges.count({q, l}) > 0;
      const bool any_nonzero = est.omega_hat.block(q, l).cwiseAbs().maxCoeff() > 0.0;
      CHECK(edge == any_nonzero);
    }
}

TEST_CASE("estimate serializes to json") {
  const GroundTruth truth = make_ground_truth(GraphKind::Er, 3, 2, 0.5, 2);
  const Eigen::MatrixXd data = sample_data(truth, 200, 2);
  PenaltySpec spec;
  spec.lambda = 0.05;
  const GraphEstimate est = fit_data(data, 3, 2, spec, AdmmConfig{});
  const auto dir = test_helpers::scratch_dir("est");
  save_estimate_json(est, dir / "estimate.json");
  CHECK(std::filesystem::file_size(dir / "estimate.json") > 0);
  std::filesystem::remove_all(dir);
}
