#include "mggm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "mggm/linalg.hpp"
#include "mggm/parallel.hpp"
#include "mggm/rng.hpp"

namespace mggm {

namespace {

double sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

/// Determined subgradient value z with lambda*z = d rho(|u|)/du at u != 0.
double z_value(const PenaltySpec& spec, double u) {
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      return sign(u);
    case PenaltyKind::LogSum:
      return spec.epsilon / (spec.epsilon + std::abs(u)) * sign(u);
    case PenaltyKind::Scad: {
      const double x = std::abs(u), lam = spec.lambda, a = spec.a;
      if (x <= lam) return sign(u);
      if (x <= a * lam) return (a - x / lam) / (a - 1.0) * sign(u);
      return 0.0;
    }
  }
  return 0.0;
}

/// Determined group subgradient factor y with Y^(kl) = factor * block.
double y_factor(const PenaltySpec& spec, double block_norm) {
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      return 1.0 / block_norm;
    case PenaltyKind::LogSum:
      return spec.epsilon / (spec.epsilon + block_norm) / block_norm;
    case PenaltyKind::Scad: {
      const double lam = spec.lambda, a = spec.a;
      if (block_norm <= lam) return 1.0 / block_norm;
      if (block_norm <= a * lam) return (a - block_norm / lam) / (a - 1.0) / block_norm;
      return 0.0;
    }
  }
  return 0.0;
}

}  // namespace

KktReport kkt_residual(const BlockMatrix& omega_hat, const BlockMatrix& sigma_hat,
                       const PenaltySpec& spec, double feasibility_slack) {
  spec.validate();
  if (omega_hat.dim() != sigma_hat.dim())
    throw InvalidInputError("kkt_residual: dimension mismatch");
  const Eigen::LLT<Eigen::MatrixXd> llt(omega_hat.data());
  if (llt.info() != Eigen::Success)
    throw InvalidInputError("kkt_residual: omega_hat must be positive definite");
  const Eigen::MatrixXd g =
      sigma_hat.data() -
      llt.solve(Eigen::MatrixXd::Identity(omega_hat.dim(), omega_hat.dim()));

  const int p = omega_hat.p(), m = omega_hat.m();
  const double lam = spec.lambda, alpha = spec.alpha;
  const double group_scale = (1.0 - alpha) * m * lam;

  KktReport report;
  auto record_residual = [&report](double value, int i, int j) {
    if (value > report.residual_inf) {
      report.residual_inf = value;
      report.max_violation_location = {i, j};
    }
  };
  auto record_excess = [&](double magnitude) {
    report.max_subgradient_excess =
        std::max(report.max_subgradient_excess, std::max(0.0, magnitude - 1.0));
    if (magnitude > 1.0 + feasibility_slack) report.subgradient_feasible = false;
  };

  for (int k = 0; k < p; ++k) {
    for (int l = 0; l < p; ++l) {
      const auto block = omega_hat.block(k, l);
      const double bnorm = block.norm();
      const bool diag_block = (k == l);
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
          const int i = k * m + r, j = l * m + c;
          if (i == j) {
            record_residual(std::abs(g(i, j)), i, j);
            continue;
          }
          const double w = omega_hat.data()(i, j);
          double fixed = g(i, j);
          if (!diag_block && bnorm > 0) fixed += group_scale * y_factor(spec, bnorm) * w;
          if (w != 0.0) {
            record_residual(std::abs(fixed + alpha * lam * z_value(spec, w)), i, j);
          } else if (!diag_block && bnorm == 0.0) {
            continue;  // whole-block feasibility handled below
          } else {
            // zero entry inside a diagonal block or a nonzero block
            if (alpha * lam == 0.0)
              record_residual(std::abs(fixed), i, j);
            else
              record_excess(std::abs(fixed) / (alpha * lam));
          }
        }
      }
      // zero off-diagonal block: minimal-norm group subgradient
      if (!diag_block && bnorm == 0.0) {
        if (group_scale == 0.0) {
          // element-wise subgradient must absorb the whole block
          for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
              const int i = k * m + r, j = l * m + c;
              if (alpha * lam == 0.0)
                record_residual(std::abs(g(i, j)), i, j);
              else
                record_excess(std::abs(g(i, j)) / (alpha * lam));
            }
        } else {
          double y_sq = 0.0;
          for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
              const int i = k * m + r, j = l * m + c;
              const double residual = std::max(0.0, std::abs(g(i, j)) - alpha * lam);
              y_sq += (residual / group_scale) * (residual / group_scale);
            }
          record_excess(std::sqrt(y_sq));
        }
      }
    }
  }
  return report;
}

double convexity_threshold(const PenaltySpec& spec, int m) {
  spec.validate();
  if (m < 1) throw InvalidInputError("convexity_threshold: m must be >= 1");
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      return std::numeric_limits<double>::infinity();
    case PenaltyKind::Scad:
      return std::sqrt((spec.a - 1.0) / m);
    case PenaltyKind::LogSum:
      return std::sqrt(spec.epsilon / (m * spec.lambda));
  }
  return 0.0;
}

bool within_convexity_region(const PenaltySpec& spec, int m, const BlockMatrix& omega) {
  const double mu_bar = convexity_threshold(spec, m);
  if (std::isinf(mu_bar)) return true;
  return operator_norm(omega.data()) <= 0.99 * mu_bar;
}

bool hessian_convexity_check(const BlockMatrix& omega, double mu) {
  if (omega.dim() > 12)
    throw ResourceError("hessian_convexity_check: capped at mp <= 12, got " +
                        std::to_string(omega.dim()));
  omega.require_symmetric("hessian_convexity_check", 1e-10);
  const SpectralDecomposition es = sym_eig(omega);
  if (es.eigenvalues.minCoeff() <= 0)
    throw InvalidInputError("hessian_convexity_check: omega must be positive definite");
  const Eigen::MatrixXd inv = es.eigenvectors * es.eigenvalues.cwiseInverse().asDiagonal() *
                              es.eigenvectors.transpose();
  const double phi_min = sym_eig(kron(inv, inv)).eigenvalues.minCoeff();
  const double expected = 1.0 / (es.eigenvalues.maxCoeff() * es.eigenvalues.maxCoeff());
  if (std::abs(phi_min - expected) > 1e-8 * std::max(1.0, expected))
    throw NumericError("hessian_convexity_check: Kronecker minimum eigenvalue " +
                       std::to_string(phi_min) + " disagrees with 1/||omega||^2 = " +
                       std::to_string(expected));
  return phi_min - mu >= -1e-10;
}

TailBoundReport tail_bound_check(const BlockMatrix& sigma_star, int n, double tau,
                                 int trials, std::uint64_t seed, int jobs) {
  const int p = sigma_star.p(), m = sigma_star.m();
  if (p < 2) throw InvalidInputError("tail_bound_check: p must be >= 2");
  if (trials < 1) throw InvalidInputError("tail_bound_check: trials must be >= 1");
  if (tau <= 2) throw InvalidInputError("tail_bound_check: tau must be > 2");
  const double n1 = 2.0 * std::log(4.0 * m * m * std::pow(static_cast<double>(p), tau));
  if (!(static_cast<double>(n) > n1))
    throw InvalidInputError("tail_bound_check: requires n > 2 ln(4 m^2 p^tau) = " +
                            std::to_string(n1));
  sigma_star.require_symmetric("tail_bound_check", 1e-9);

  const double sigma_max = sigma_star.data().diagonal().maxCoeff();
  const double log_p = std::log(static_cast<double>(p));
  TailBoundReport report;
  report.c0_tilde = 40.0 * m * sigma_max * std::sqrt(n1 / log_p);
  report.c0 = report.c0_tilde / m;
  report.threshold = report.c0_tilde * std::sqrt(log_p / n);
  const double element_threshold = report.c0 * std::sqrt(log_p / n);
  report.bound = std::pow(static_cast<double>(p), -(tau - 2.0));

  const SpectralDecomposition es = sym_eig(sigma_star);
  if (es.eigenvalues.minCoeff() <= 0)
    throw InvalidInputError("tail_bound_check: sigma_star must be positive definite");
  const Eigen::MatrixXd phi = es.eigenvectors * es.eigenvalues.cwiseSqrt().asDiagonal() *
                              es.eigenvectors.transpose();

  report.deviations.resize(trials);
  std::vector<double> element_deviations(trials);
  parallel_for(trials, jobs, [&](int trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial) + 1));
    const int d = p * m;
    Eigen::MatrixXd w(n, d);
    for (int i = 0; i < n; ++i)
      for (int q = 0; q < d; ++q) w(i, q) = rng.normal();
    const Eigen::MatrixXd x = w * phi;  // rows ~ N(0, sigma_star)
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
    sigma.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / n);
    sigma.triangularView<Eigen::StrictlyUpper>() = sigma.transpose();
    const BlockMatrix diff(sigma - sigma_star.data(), p, m);
    report.deviations[trial] = block_norm_map(diff).maxCoeff();
    element_deviations[trial] = diff.data().cwiseAbs().maxCoeff();
  });

  int exceed = 0, exceed_element = 0;
  for (int t = 0; t < trials; ++t) {
    if (report.deviations[t] > report.threshold) ++exceed;
    if (element_deviations[t] > element_threshold) ++exceed_element;
  }
  report.empirical_rate = static_cast<double>(exceed) / trials;
  report.empirical_rate_element = static_cast<double>(exceed_element) / trials;
  report.passes = report.empirical_rate <= report.bound;
  return report;
}

void write_tail_bound_csv(const TailBoundReport& report, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "trial,deviation,threshold\n";
  for (std::size_t t = 0; t < report.deviations.size(); ++t)
    os << t << "," << report.deviations[t] << "," << report.threshold << "\n";
}

IrrepReport irrepresentability(const GroundTruth& truth) {
  const int p = truth.p, m = truth.m;
  if (p * m > 20)
    throw ResourceError("irrepresentability: capped at mp <= 20, got " +
                        std::to_string(p * m));
  const SpectralDecomposition es = sym_eig(truth.omega_star);
  if (es.eigenvalues.minCoeff() <= 0)
    throw InvalidInputError("irrepresentability: omega_star must be positive definite");
  const Eigen::MatrixXd sigma = es.eigenvectors * es.eigenvalues.cwiseInverse().asDiagonal() *
                                es.eigenvectors.transpose();
  const BlockMatrix sigma_bm(((sigma + sigma.transpose()) * 0.5).eval(), p, m);
  const Eigen::MatrixXd gamma = tracy_singh(sigma_bm, sigma_bm);

  // ordered node pairs; pair (j,k) owns the m^2 x m^2 cell at flat index j*p + k
  std::vector<int> support;  // flat ids in S
  std::vector<char> in_support(static_cast<std::size_t>(p) * p, 0);
  for (int j = 0; j < p; ++j) in_support[j * p + j] = 1;
  for (const auto& [a, b] : truth.edges_star) {
    in_support[a * p + b] = 1;
    in_support[b * p + a] = 1;
  }
  for (int f = 0; f < p * p; ++f)
    if (in_support[f]) support.push_back(f);

  const int mm = m * m;
  const int s_cols = static_cast<int>(support.size()) * mm;
  Eigen::MatrixXd gamma_ss(s_cols, s_cols);
  for (std::size_t a = 0; a < support.size(); ++a)
    for (std::size_t b = 0; b < support.size(); ++b)
      gamma_ss.block(a * mm, b * mm, mm, mm) =
          gamma.block(static_cast<Eigen::Index>(support[a]) * mm,
                      static_cast<Eigen::Index>(support[b]) * mm, mm, mm);

  const Eigen::LLT<Eigen::MatrixXd> llt(gamma_ss);
  if (llt.info() != Eigen::Success)
    throw NumericError("irrepresentability: Gamma(S,S) is singular");

  IrrepReport report;
  for (int f = 0; f < p * p; ++f) {
    if (in_support[f]) continue;
    Eigen::MatrixXd gamma_sf(s_cols, mm);  // columns of Gamma at pair f, rows at S
    for (std::size_t a = 0; a < support.size(); ++a)
      gamma_sf.block(a * mm, 0, mm, mm) =
          gamma.block(static_cast<Eigen::Index>(support[a]) * mm,
                      static_cast<Eigen::Index>(f) * mm, mm, mm);
    const Eigen::MatrixXd mf = llt.solve(gamma_sf).transpose();  // Gamma_{f,S} Gamma_{S,S}^{-1}
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

}  // namespace mggm
