#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "mggm/errors.hpp"

namespace mggm {

// Dense (m*p) x (m*p) real matrix carrying a (p, m) block structure:
// p nodes, m attributes per node. The (k,l) block is the m x m submatrix
// at rows [k*m, (k+1)*m), cols [l*m, (l+1)*m), k,l in [0, p).
class BlockMatrix {
 public:
  BlockMatrix() = default;

  BlockMatrix(Eigen::MatrixXd data, int p, int m) : data_(std::move(data)), p_(p), m_(m) {
    if (p_ <= 0 || m_ <= 0)
      throw InvalidInputError("BlockMatrix: p and m must be positive");
    if (data_.rows() != dim() || data_.cols() != dim())
      throw InvalidInputError("BlockMatrix: data is " + std::to_string(data_.rows()) + "x" +
                              std::to_string(data_.cols()) + ", expected " +
                              std::to_string(dim()) + " square");
  }

  static BlockMatrix Zero(int p, int m) {
    return BlockMatrix(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p) * m,
                                             static_cast<Eigen::Index>(p) * m),
                       p, m);
  }

  static BlockMatrix Identity(int p, int m) {
    return BlockMatrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(p) * m,
                                                 static_cast<Eigen::Index>(p) * m),
                       p, m);
  }

  int p() const { return p_; }
  int m() const { return m_; }
  int dim() const { return p_ * m_; }

  const Eigen::MatrixXd& data() const { return data_; }
  Eigen::MatrixXd& data() { return data_; }

  /// m x m block view at node pair (k, l), 0-based.
  auto block(int k, int l) const { return data_.block(k * m_, l * m_, m_, m_); }
  auto block(int k, int l) { return data_.block(k * m_, l * m_, m_, m_); }

  /// Replace by (A + A^T)/2.
  void symmetrize() { data_ = ((data_ + data_.transpose()) * 0.5).eval(); }

  bool is_symmetric(double tol = 1e-12) const {
    return (data_ - data_.transpose()).cwiseAbs().maxCoeff() <= tol;
  }

  /// Throws InvalidInputError unless symmetric within tol and all finite.
  void require_symmetric(const char* who, double tol = 1e-12) const {
    if (!data_.allFinite())
      throw InvalidInputError(std::string(who) + ": matrix has non-finite entries");
    if (!is_symmetric(tol))
      throw InvalidInputError(std::string(who) + ": matrix is not symmetric");
  }

  BlockMatrix with_same_shape(Eigen::MatrixXd data) const {
    return BlockMatrix(std::move(data), p_, m_);
  }

  // File formats, documented in docs/formats.md. CSV: first line the literal
  // header "rows,cols,p,m", second line the four values, then one CSV row per
  // matrix row. Binary: magic "MAGM", four little-endian uint32 (rows, cols,
  // p, m), then rows*cols little-endian f64, row-major.
  void save_csv(const std::filesystem::path& path) const;
  static BlockMatrix load_csv(const std::filesystem::path& path);
  void save_binary(const std::filesystem::path& path) const;
  static BlockMatrix load_binary(const std::filesystem::path& path);

 private:
  Eigen::MatrixXd data_;
  int p_ = 0;
  int m_ = 0;
};

}  // namespace mggm
