#pragma once

#include <Eigen/Dense>
#include <string>

#include "mggm/block_matrix.hpp"

namespace mggm {

enum class PenaltyKind { Lasso, LogSum, Scad };

std::string to_string(PenaltyKind kind);
PenaltyKind penalty_kind_from_string(const std::string& name);

// Penalty family and its parameters. lambda scales all three penalties;
// alpha balances element-wise vs group-wise terms; epsilon is the log-sum
// knee; a is the SCAD saturation multiple.
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::Lasso;
  double lambda = 0.1;
  double alpha = 0.05;
  double epsilon = 1e-4;  // log-sum only
  double a = 3.7;         // SCAD only

  void validate() const;

  PenaltySpec with_lambda(double new_lambda) const {
    PenaltySpec s = *this;
    s.lambda = new_lambda;
    return s;
  }
  PenaltySpec with_alpha(double new_alpha) const {
    PenaltySpec s = *this;
    s.alpha = new_alpha;
    return s;
  }
};

/// rho_lambda(|u|): 0 at u = 0, symmetric in the sign of u.
double penalty_value(const PenaltySpec& spec, double u);

/// d rho_lambda / d|u| evaluated at |u| = u0 >= 0; always in [0, lambda].
/// At 0 this is the one-sided limit, which equals lambda for all three kinds.
double penalty_gradient(const PenaltySpec& spec, double u0);

// Weight matrices for one reweighted-lasso round: element weights from
// |omega_bar_ij|, group weights from per-block Frobenius norms, both through
// penalty_gradient. Lasso yields constant lambda everywhere.
struct LlaWeights {
  Eigen::MatrixXd element;  // (mp) x (mp)
  Eigen::MatrixXd group;    // p x p
};

LlaWeights lla_weights(const PenaltySpec& spec, const BlockMatrix& omega_bar);

}  // namespace mggm
