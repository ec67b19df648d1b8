#include "wgpe/sparse.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace wgpe {

SparseSymMatrix::SparseSymMatrix(int dim, const std::vector<Triplet>& triplets)
    : mat_(dim, dim)
{
  mat_.setFromTriplets(triplets.begin(), triplets.end());
  mat_.makeCompressed();
}

SparseSymMatrix::SparseSymMatrix(SpMat mat) : mat_(std::move(mat))
{
  mat_.makeCompressed();
}

double SparseSymMatrix::symmetry_error() const
{
  if (mat_.nonZeros() == 0) {
    return 0.0;
  }
  double max_entry = 0.0;
  for (int c = 0; c < mat_.outerSize(); ++c) {
    for (SpMat::InnerIterator it(mat_, c); it; ++it) {
      max_entry = std::max(max_entry, std::abs(it.value()));
    }
  }
  const SpMat diff = SpMat(mat_.transpose()) - mat_;
  double max_diff = 0.0;
  for (int c = 0; c < diff.outerSize(); ++c) {
    for (SpMat::InnerIterator it(diff, c); it; ++it) {
      max_diff = std::max(max_diff, std::abs(it.value()));
    }
  }
  return (max_entry > 0.0) ? max_diff / max_entry : max_diff;
}

void SparseSymMatrix::write_matrix_market(const std::string& path) const
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_matrix_market: cannot open " + path);
  }
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << mat_.rows() << " " << mat_.cols() << " " << mat_.nonZeros() << "\n";
  out.precision(17);
  for (int c = 0; c < mat_.outerSize(); ++c) {
    for (SpMat::InnerIterator it(mat_, c); it; ++it) {
      out << it.row() + 1 << " " << it.col() + 1 << " " << it.value() << "\n";
    }
  }
}

}  // namespace wgpe
