#include "mggm/admm.hpp"

#include <cassert>
#include <cmath>
#include <fstream>
#include <limits>

#include "mggm/linalg.hpp"

namespace mggm {

BlockMatrix omega_update(const BlockMatrix& sigma_hat, const AdmmState& state) {
  const double rho = state.rho;
  Eigen::MatrixXd shifted =
      sigma_hat.data() - rho * (state.v.data() - state.u.data());
  shifted = ((shifted + shifted.transpose()) * 0.5).eval();
  const SpectralDecomposition es = sym_eig(shifted, 1e-7);

  const Eigen::Index n = es.eigenvalues.size();
  Eigen::VectorXd dtilde(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    const double d = es.eigenvalues(l);
    dtilde(l) = (-d + std::sqrt(d * d + 4.0 * rho)) / (2.0 * rho);
  }
#ifndef NDEBUG
  assert(dtilde.minCoeff() > 0.0);
#endif
  // P diag(dtilde) P^T as a symmetric rank update of P diag(sqrt(dtilde))
  Eigen::MatrixXd scaled = es.eigenvectors * dtilde.cwiseSqrt().asDiagonal();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
  return sigma_hat.with_same_shape(std::move(out));
}

BlockMatrix v_update(const BlockMatrix& omega_next, const AdmmState& state,
                     const LlaWeights& weights, double alpha) {
  const int p = omega_next.p(), m = omega_next.m();
  const double rho = state.rho;
  const Eigen::MatrixXd a = omega_next.data() + state.u.data();
  BlockMatrix v = BlockMatrix::Zero(p, m);

  for (int k = 0; k < p; ++k) {
    // diagonal block: copy the diagonal, soft-threshold the rest
    for (int r = 0; r < m; ++r) {
      const int i = k * m + r;
      v.data()(i, i) = a(i, i);
      for (int c = r + 1; c < m; ++c) {
        const int j = k * m + c;
        const double t = soft_threshold(a(i, j), alpha * weights.element(i, j) / rho);
        v.data()(i, j) = t;
        v.data()(j, i) = soft_threshold(a(j, i), alpha * weights.element(j, i) / rho);
      }
    }
    // off-diagonal blocks: element-wise threshold, then group shrink
    for (int l = 0; l < p; ++l) {
      if (l == k) continue;
      Eigen::MatrixXd b(m, m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          const int i = k * m + r, j = l * m + c;
          b(r, c) = soft_threshold(a(i, j), alpha * weights.element(i, j) / rho);
        }
      const double bnorm = b.norm();
      const double threshold = (1.0 - alpha) * m * weights.group(k, l) / rho;
      if (bnorm <= threshold) continue;  // block stays exactly zero
      v.block(k, l) = b * (1.0 - threshold / bnorm);
    }
  }
  return v;
}

ConvergenceReport convergence_check(const AdmmState& next, const AdmmState& prev,
                                    const AdmmConfig& config) {
  const double mp = static_cast<double>(next.omega.dim());
  ConvergenceReport r;
  r.tau_pri = mp * config.tau_abs +
              config.tau_rel * std::max(next.omega.data().norm(), next.v.data().norm());
  r.tau_dual = mp * config.tau_abs + config.tau_rel * next.u.data().norm() / next.rho;
  r.d_p = (next.omega.data() - next.v.data()).norm();
  r.d_d = next.rho * (next.v.data() - prev.v.data()).norm();
  r.converged = (r.d_p <= r.tau_pri) && (r.d_d <= r.tau_dual);
  return r;
}

void rho_update(double d_p, double d_d, AdmmState& state, double phi) {
  if (d_p < 0 || d_d < 0) throw InvalidInputError("rho_update: residuals must be >= 0");
  if (d_p > phi * d_d) {
    state.rho *= 2.0;
    state.u.data() *= 0.5;
  } else if (d_d > phi * d_p) {
    state.rho *= 0.5;
    state.u.data() *= 2.0;
  }
}

double weighted_objective(const BlockMatrix& sigma_hat, const BlockMatrix& v,
                          const LlaWeights& weights, double alpha) {
  const Eigen::LLT<Eigen::MatrixXd> llt(v.data());
  if (llt.info() != Eigen::Success)
    return std::numeric_limits<double>::infinity();
  const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();

  double obj = -logdet + sigma_hat.data().cwiseProduct(v.data()).sum();
  const int n = v.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) obj += alpha * weights.element(i, j) * std::abs(v.data()(i, j));
  const Eigen::MatrixXd bn = block_norm_map(v);
  for (int k = 0; k < v.p(); ++k)
    for (int l = 0; l < v.p(); ++l)
      if (k != l) obj += (1.0 - alpha) * v.m() * weights.group(k, l) * bn(k, l);
  return obj;
}

SolverResult solve(const BlockMatrix& sigma_hat, const LlaWeights& weights, double alpha,
                   const AdmmConfig& config, const BlockMatrix& omega_init,
                   std::vector<IterationTrace>* trace) {
  config.validate();
  sigma_hat.require_symmetric("admm::solve", 1e-9);
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvalidInputError("admm::solve: alpha must be in [0,1]");
  const int p = sigma_hat.p(), m = sigma_hat.m();
  if (weights.element.rows() != sigma_hat.dim() || weights.group.rows() != p)
    throw InvalidInputError("admm::solve: weight shapes do not match sigma_hat");

  AdmmState state{omega_init, BlockMatrix::Zero(p, m), BlockMatrix::Zero(p, m),
                  config.rho_init, 0};
  bool converged = false;
  double d_p = 0.0, d_d = 0.0;
  int t = 0;
  while (!converged && t <= config.t_max) {
    AdmmState next = state;
    next.omega = omega_update(sigma_hat, state);
    next.v = v_update(next.omega, state, weights, alpha);
    next.u.data() = state.u.data() + (next.omega.data() - next.v.data());

    const ConvergenceReport rep = convergence_check(next, state, config);
    converged = rep.converged;
    d_p = rep.d_p;
    d_d = rep.d_d;
    rho_update(rep.d_p, rep.d_d, next, config.phi);

    if (!next.omega.data().allFinite() || !next.v.data().allFinite() ||
        !next.u.data().allFinite())
      throw NumericError("admm::solve: non-finite iterate at t=" + std::to_string(t));

    ++t;
    next.iteration = t;
    if (trace)
      trace->push_back({t, rep.d_p, rep.d_d, state.rho,
                        weighted_objective(sigma_hat, next.v, weights, alpha)});
    state = std::move(next);
  }

  SolverResult result;
  result.omega_hat = state.v;
  result.iterations = t;
  result.converged = converged;
  result.primal_residual = d_p;
  result.dual_residual = d_d;
  return result;
}

void write_trace_csv(const std::vector<IterationTrace>& trace,
                     const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open " + path.string() + " for writing");
  os << "iteration,d_p,d_d,rho,objective\n";
  os.precision(17);
  for (const auto& row : trace)
    os << row.iteration << "," << row.d_p << "," << row.d_d << "," << row.rho << ","
       << row.objective << "\n";
}

}  // namespace mggm
