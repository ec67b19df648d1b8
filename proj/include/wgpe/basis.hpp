// Scaled monomial bases on triangles and edges. Element bases are centered at
// the centroid and scaled by the element diameter, which keeps local Gram
// matrices well conditioned on shape-regular meshes.

#ifndef WGPE_BASIS_HPP
#define WGPE_BASIS_HPP

#include "wgpe/geometry.hpp"
#include "wgpe/mesh.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace wgpe {

/// Dimension of P_k on a triangle.
constexpr int tri_poly_dim(int k) { return (k + 1) * (k + 2) / 2; }

/// Basis of P_k(T): functions ((x-x_T)/h_T)^a ((y-y_T)/h_T)^b, a+b <= k,
/// ordered by total degree and, within a degree, by descending x power.
class TriBasis {
public:
  TriBasis(int degree, const Vec2& center, double scale);

  static TriBasis for_element(const TriMesh& mesh, int t, int degree)
  {
    return TriBasis(degree, mesh.centroid(t), mesh.h_tri(t));
  }

  int degree() const { return degree_; }
  int dim() const { return static_cast<int>(powers_.size()); }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }
  const std::array<int, 2>& powers(int i) const { return powers_[i]; }

  double value(int i, const Vec2& x) const;
  Vec2 gradient(int i, const Vec2& x) const;

  /// Values of all basis functions at all points; (npts x dim).
  Eigen::MatrixXd values(const Eigen::MatrixX2d& pts) const;
  /// Gradient components of all basis functions at all points; each (npts x dim).
  void gradients(const Eigen::MatrixX2d& pts, Eigen::MatrixXd& gx,
                 Eigen::MatrixXd& gy) const;

private:
  int degree_;
  Vec2 center_;
  double scale_;
  std::vector<std::array<int, 2>> powers_;
};

/// Basis of P_k(e) on an edge: powers of the signed arclength from the edge
/// midpoint, scaled by the edge length. Both elements sharing an edge see the
/// same parametrization (tangent runs from the lower- to the higher-indexed
/// vertex).
class EdgeBasis {
public:
  EdgeBasis(int degree, const Vec2& midpoint, const Vec2& tangent, double length);

  static EdgeBasis for_edge(const TriMesh& mesh, int e, int degree)
  {
    return EdgeBasis(degree, mesh.edge_midpoint(e), mesh.edge_tangent(e),
                     mesh.edge_length(e));
  }

  int degree() const { return degree_; }
  int dim() const { return degree_ + 1; }

  double value(int i, const Vec2& x) const;
  /// Values at physical points lying on the edge; (npts x dim).
  Eigen::MatrixXd values(const Eigen::MatrixX2d& pts) const;

private:
  int degree_;
  Vec2 midpoint_;
  Vec2 tangent_;
  double length_;
};

}  // namespace wgpe

#endif
