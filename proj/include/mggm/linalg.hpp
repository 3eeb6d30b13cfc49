#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>

#include "mggm/block_matrix.hpp"

namespace mggm {

/// Eigendecomposition A = P diag(D) P^T of a symmetric matrix,
/// eigenvalues ascending, eigenvector columns orthonormal.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  Eigen::MatrixXd reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
  }
};

/// Symmetric eigendecomposition. Throws InvalidInputError on non-finite or
/// asymmetric input, NumericError if the iteration fails to converge.
SpectralDecomposition sym_eig(const Eigen::MatrixXd& a, double sym_tol = 1e-9);
SpectralDecomposition sym_eig(const BlockMatrix& a);

/// p x p map of per-block Frobenius norms.
Eigen::MatrixXd block_norm_map(const BlockMatrix& a);

/// Tracy-Singh product of two (p, m) block matrices: the result is
/// (mp)^2 x (mp)^2, organized as a p x p array of outer blocks indexed (i, j),
/// each a p x p array of m^2 x m^2 Kronecker factors A_ij (x) B_kl. Entry
/// formula, all indices 0-based:
///   (A [x] B)[i*p*m^2 + k*m^2 + s*m + u, j*p*m^2 + l*m^2 + t*m + v]
///     = A[i*m + s, j*m + t] * B[k*m + u, l*m + v].
/// For m = 1 this is exactly the Kronecker product A (x) B.
/// Throws ResourceError when the output would exceed max_entries.
Eigen::MatrixXd tracy_singh(const BlockMatrix& a, const BlockMatrix& b,
                            std::size_t max_entries = 1'000'000);

struct MatrixNorms {
  double frobenius = 0.0;
  std::optional<double> operator_norm;  // only for symmetric input
  double max_abs = 0.0;
  double one_infinity = 0.0;  // max row sum of absolute values
};

/// All four norms; operator norm (largest |eigenvalue|) is computed only for
/// symmetric input and left empty otherwise.
MatrixNorms norms(const Eigen::MatrixXd& a);

/// Operator norm of a symmetric matrix; throws InvalidInputError if asymmetric.
double operator_norm(const Eigen::MatrixXd& a);

/// Kronecker product (dense, small inputs).
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace mggm
