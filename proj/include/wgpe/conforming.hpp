// Conforming Lagrange elements (P1 at vertices, P2 with edge midpoints) on the
// same triangulations, used for the upper-bound post-processing and as a
// cross-check discretization.

#ifndef WGPE_CONFORMING_HPP
#define WGPE_CONFORMING_HPP

#include "wgpe/assembly.hpp"
#include "wgpe/eigensolve.hpp"
#include "wgpe/mesh.hpp"
#include "wgpe/problem.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace wgpe {

class LagrangeSpace {
public:
  /// order 1 (vertices) or 2 (vertices + edge midpoints); Dirichlet nodes on
  /// the boundary are eliminated.
  LagrangeSpace(std::shared_ptr<const TriMesh> mesh, int order);

  const TriMesh& mesh() const { return *mesh_; }
  std::shared_ptr<const TriMesh> mesh_ptr() const { return mesh_; }
  int order() const { return order_; }

  int num_nodes() const { return num_nodes_; }
  int num_dofs() const { return num_dofs_; }
  /// Active dof of a node, -1 on the boundary.
  int dof_of_node(int node) const { return dof_of_node_[node]; }
  Vec2 node_coord(int node) const;

  int nodes_per_element() const { return order_ == 1 ? 3 : 6; }
  /// Global node indices of element t: vertices, then midpoints of local
  /// edges 0,1,2 for P2.
  std::vector<int> element_nodes(int t) const;

  /// Lagrange shape values on element t at physical points; (npts x nodes).
  Eigen::MatrixXd shape_values(int t, const Eigen::MatrixX2d& pts) const;
  void shape_gradients(int t, const Eigen::MatrixX2d& pts, Eigen::MatrixXd& gx,
                       Eigen::MatrixXd& gy) const;

  int default_quad_degree() const { return std::max(4 * order_, 2 * order_ + 2); }

private:
  std::shared_ptr<const TriMesh> mesh_;
  int order_;
  int num_nodes_;
  int num_dofs_;
  std::vector<int> dof_of_node_;
};

/// Stiffness + potential and mass for the conforming space (no stabilizer,
/// classical gradients), with the same density caches as the WG assembly.
AssembledOperators assemble_conforming(const LagrangeSpace& space,
                                       const ProblemSpec& spec);

/// Self-consistent ground state in the conforming space.
GroundState scf_solve_conforming(const LagrangeSpace& space, const ProblemSpec& spec,
                                 const ScfConfig& config = {});

}  // namespace wgpe

#endif
