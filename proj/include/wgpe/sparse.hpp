// Thin wrapper over Eigen's sparse storage for symmetric operators assembled
// from element triplets.

#ifndef WGPE_SPARSE_HPP
#define WGPE_SPARSE_HPP

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace wgpe {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

class SparseSymMatrix {
public:
  SparseSymMatrix() = default;
  SparseSymMatrix(int dim, const std::vector<Triplet>& triplets);
  explicit SparseSymMatrix(SpMat mat);

  int dim() const { return static_cast<int>(mat_.rows()); }
  int nonzeros() const { return static_cast<int>(mat_.nonZeros()); }
  const SpMat& matrix() const { return mat_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return mat_ * x; }
  double quad_form(const Eigen::VectorXd& x) const { return x.dot(mat_ * x); }
  double bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const
  {
    return x.dot(mat_ * y);
  }

  /// max |K - K^T| / max |K| (0 for the empty matrix).
  double symmetry_error() const;

  /// Writes the matrix in MatrixMarket coordinate format.
  void write_matrix_market(const std::string& path) const;

private:
  SpMat mat_;
};

}  // namespace wgpe

#endif
