#include "mggm/linalg.hpp"

#include <string>

namespace mggm {

SpectralDecomposition sym_eig(const Eigen::MatrixXd& a, double sym_tol) {
  if (a.rows() != a.cols()) throw InvalidInputError("sym_eig: matrix is not square");
  if (!a.allFinite()) throw InvalidInputError("sym_eig: non-finite entries");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > sym_tol * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw InvalidInputError("sym_eig: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success)
    throw NumericError("sym_eig: iteration failed to converge (info=" +
                       std::to_string(static_cast<int>(es.info())) + ")");
  return SpectralDecomposition{es.eigenvalues(), es.eigenvectors()};
}

SpectralDecomposition sym_eig(const BlockMatrix& a) { return sym_eig(a.data()); }

Eigen::MatrixXd block_norm_map(const BlockMatrix& a) {
  const int p = a.p();
  Eigen::MatrixXd out(p, p);
  for (int k = 0; k < p; ++k)
    for (int l = 0; l < p; ++l) out(k, l) = a.block(k, l).norm();
  return out;
}

Eigen::MatrixXd tracy_singh(const BlockMatrix& a, const BlockMatrix& b,
                            std::size_t max_entries) {
  if (a.p() != b.p() || a.m() != b.m())
    throw InvalidInputError("tracy_singh: operands must share (p, m) structure");
  const int p = a.p(), m = a.m();
  const std::size_t dim = static_cast<std::size_t>(p) * p * m * m;  // = (mp)^2
  if (dim * dim > max_entries)
    throw ResourceError("tracy_singh: output of " + std::to_string(dim) + "^2 entries exceeds cap " +
                        std::to_string(max_entries));
  Eigen::MatrixXd out(dim, dim);
  const int mm = m * m;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p; ++k)
        for (int l = 0; l < p; ++l)
          out.block(static_cast<Eigen::Index>(i) * p * mm + k * mm,
                    static_cast<Eigen::Index>(j) * p * mm + l * mm, mm, mm) =
              kron(a.block(i, j), b.block(k, l));
  return out;
}

MatrixNorms norms(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw InvalidInputError("norms: non-finite entries");
  MatrixNorms out;
  out.frobenius = a.norm();
  out.max_abs = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  out.one_infinity = a.rows() ? a.cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
  if (a.rows() == a.cols() && (a - a.transpose()).cwiseAbs().maxCoeff() <=
                                  1e-9 * std::max(1.0, out.max_abs)) {
    const auto es = sym_eig(a);
    out.operator_norm = es.eigenvalues.cwiseAbs().maxCoeff();
  }
  return out;
}

double operator_norm(const Eigen::MatrixXd& a) {
  const auto n = norms(a);
  if (!n.operator_norm)
    throw InvalidInputError("operator_norm: supported for symmetric input only");
  return *n.operator_norm;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace mggm
