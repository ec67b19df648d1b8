// Weak Galerkin function space: totally discontinuous P_k unknowns inside
// elements plus P_{k-1} unknowns on interior edges, coupled through a discrete
// weak gradient and an edge stabilizer. Homogeneous Dirichlet data is imposed
// by eliminating boundary-edge unknowns at construction.

#ifndef WGPE_WG_SPACE_HPP
#define WGPE_WG_SPACE_HPP

#include "wgpe/basis.hpp"
#include "wgpe/mesh.hpp"
#include "wgpe/quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

namespace wgpe {

class WgSpace {
public:
  /// degree k >= 1: P_k interior blocks, P_{k-1} edge blocks.
  WgSpace(std::shared_ptr<const TriMesh> mesh, int degree);

  const TriMesh& mesh() const { return *mesh_; }
  std::shared_ptr<const TriMesh> mesh_ptr() const { return mesh_; }
  int degree() const { return degree_; }

  int interior_block_dim() const { return n0_; }
  int edge_block_dim() const { return degree_; }
  /// Local coefficient layout per element: [interior | edge 0 | edge 1 | edge 2].
  int local_dim() const { return n0_ + 3 * degree_; }
  int num_dofs() const { return num_dofs_; }

  int interior_base(int t) const { return t * n0_; }
  /// First global dof of edge e, or -1 if e carries no dofs (boundary).
  int edge_base(int e) const { return edge_base_[e]; }

  /// Global index of each local dof of element t (-1 on boundary-edge blocks).
  std::vector<int> element_dofs(int t) const;

  TriBasis element_basis(int t) const
  {
    return TriBasis::for_element(*mesh_, t, degree_);
  }
  /// Basis of [P_{k-1}(T)] hosting weak gradient components.
  TriBasis gradient_basis(int t) const
  {
    return TriBasis::for_element(*mesh_, t, degree_ - 1);
  }
  EdgeBasis edge_basis(int e) const
  {
    return EdgeBasis::for_edge(*mesh_, e, degree_ - 1);
  }

  /// Volume rule degree making every assembled integrand with polynomial data
  /// exact, including the quartic density term of degree 4k.
  int default_quad_degree() const { return std::max(4 * degree_, 2 * degree_ + 2); }
  int default_edge_quad_degree() const { return 2 * degree_; }

  /// Extracts the local coefficients of element t (zeros on boundary blocks).
  Eigen::VectorXd gather_local(const Eigen::VectorXd& coeffs, int t) const;

private:
  std::shared_ptr<const TriMesh> mesh_;
  int degree_;
  int n0_;
  int num_dofs_;
  std::vector<int> edge_base_;
};

/// A function in the WG space: one coefficient per degree of freedom.
struct WgFunction {
  std::shared_ptr<const WgSpace> space;
  Eigen::VectorXd coeffs;

  /// Interior component u0 evaluated at physical points of element t.
  Eigen::VectorXd interior_values(int t, const Eigen::MatrixX2d& pts) const;
};

/// L2 projection onto the span of `basis`, computed with the given rule.
Eigen::VectorXd project_element(const TriBasis& basis, const MappedQuad& quad,
                                const std::function<double(const Vec2&)>& f);

/// L2 projection onto the edge polynomial space.
Eigen::VectorXd project_edge(const EdgeBasis& basis, const MappedQuad& quad,
                             const std::function<double(const Vec2&)>& f);

/// Componentwise L2 projection of a vector field onto [span(basis)]^2;
/// returns the x-block stacked over the y-block.
Eigen::VectorXd project_element_vec(const TriBasis& basis, const MappedQuad& quad,
                                    const std::function<Vec2(const Vec2&)>& f);

/// Combined WG interpolant: element projections inside, edge projections on
/// interior edges. The function should vanish on the boundary for consistency
/// with the eliminated boundary blocks.
WgFunction project_wg(std::shared_ptr<const WgSpace> space,
                      const std::function<double(const Vec2&)>& f,
                      int quad_degree = -1);

/// Per-element weak gradient operators: local coefficients -> coefficients of
/// the weak gradient in [P_{k-1}(T)]^2 (x-block stacked over y-block).
class WeakGradientTable {
public:
  explicit WeakGradientTable(const WgSpace& space);

  /// (2m x local_dim) operator of element t, m = dim P_{k-1}(T).
  const Eigen::MatrixXd& local(int t) const { return ops_[t]; }

  int vec_dim() const { return 2 * m_; }

private:
  std::vector<Eigen::MatrixXd> ops_;
  int m_;
};

/// Local stabilizer matrix: v^T S w = h_T^{-1+eps} sum over the element edges
/// of the L2 pairing of the projected-trace mismatches. Symmetric PSD.
/// Throws std::invalid_argument unless eps is in (0,1).
Eigen::MatrixXd stabilizer_local(const WgSpace& space, int t, double eps);

/// Same mismatch machinery with a plain 1/h_T weight, used by the discrete
/// H1 norm.
Eigen::MatrixXd jump_penalty_local(const WgSpace& space, int t);

}  // namespace wgpe

#endif
