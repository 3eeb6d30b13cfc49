#include "mggm/penalty.hpp"

#include <cmath>

#include "mggm/linalg.hpp"

namespace mggm {

std::string to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::Lasso: return "lasso";
    case PenaltyKind::LogSum: return "logsum";
    case PenaltyKind::Scad: return "scad";
  }
  return "?";
}

PenaltyKind penalty_kind_from_string(const std::string& name) {
  if (name == "lasso") return PenaltyKind::Lasso;
  if (name == "logsum" || name == "log-sum" || name == "log_sum") return PenaltyKind::LogSum;
  if (name == "scad") return PenaltyKind::Scad;
  throw InvalidInputError("unknown penalty '" + name + "' (expected lasso|logsum|scad)");
}

void PenaltySpec::validate() const {
  if (!(lambda > 0)) throw InvalidInputError("penalty: lambda must be > 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInputError("penalty: alpha must be in [0,1]");
  if (kind == PenaltyKind::LogSum && !(epsilon > 0))
    throw InvalidInputError("penalty: epsilon must be > 0 for log-sum");
  if (kind == PenaltyKind::Scad && !(a > 2))
    throw InvalidInputError("penalty: a must be > 2 for SCAD");
}

double penalty_value(const PenaltySpec& spec, double u) {
  const double x = std::abs(u);
  const double lam = spec.lambda;
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      return lam * x;
    case PenaltyKind::LogSum:
      return lam * spec.epsilon * std::log1p(x / spec.epsilon);
    case PenaltyKind::Scad: {
      const double a = spec.a;
      if (x <= lam) return lam * x;
      if (x < a * lam) return (2.0 * a * lam * x - x * x - lam * lam) / (2.0 * (a - 1.0));
      return lam * lam * (a + 1.0) / 2.0;
    }
  }
  return 0.0;
}

double penalty_gradient(const PenaltySpec& spec, double u0) {
  if (u0 < 0) throw InvalidInputError("penalty_gradient: u0 must be nonnegative");
  const double lam = spec.lambda;
  switch (spec.kind) {
    case PenaltyKind::Lasso:
      return lam;
    case PenaltyKind::LogSum:
      return lam * spec.epsilon / (u0 + spec.epsilon);
    case PenaltyKind::Scad: {
      const double a = spec.a;
      if (u0 <= lam) return lam;
      if (u0 <= a * lam) return (a * lam - u0) / (a - 1.0);
      return 0.0;
    }
  }
  return 0.0;
}

LlaWeights lla_weights(const PenaltySpec& spec, const BlockMatrix& omega_bar) {
  spec.validate();
  omega_bar.require_symmetric("lla_weights");
  const int n = omega_bar.dim(), p = omega_bar.p();
  LlaWeights w;
  if (spec.kind == PenaltyKind::Lasso) {
    w.element = Eigen::MatrixXd::Constant(n, n, spec.lambda);
    w.group = Eigen::MatrixXd::Constant(p, p, spec.lambda);
    return w;
  }
  w.element.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w.element(i, j) = penalty_gradient(spec, std::abs(omega_bar.data()(i, j)));
  const Eigen::MatrixXd bn = block_norm_map(omega_bar);
  w.group.resize(p, p);
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) w.group(k, l) = penalty_gradient(spec, bn(k, l));
  return w;
}

}  // namespace mggm
