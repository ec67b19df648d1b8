#include "wgpe/conforming.hpp"

#include "wgpe/quadrature.hpp"

#include <stdexcept>

namespace wgpe {

LagrangeSpace::LagrangeSpace(std::shared_ptr<const TriMesh> mesh, int order)
    : mesh_(std::move(mesh)), order_(order)
{
  if (!mesh_) {
    throw std::invalid_argument("LagrangeSpace: null mesh");
  }
  if (order_ != 1 && order_ != 2) {
    throw std::invalid_argument("LagrangeSpace: order must be 1 or 2");
  }

  const int nv = mesh_->num_vertices();
  num_nodes_ = (order_ == 1) ? nv : nv + mesh_->num_edges();

  std::vector<bool> boundary_node(num_nodes_, false);
  for (int e = 0; e < mesh_->num_edges(); ++e) {
    const auto& edge = mesh_->edge(e);
    if (edge.boundary) {
      boundary_node[edge.v0] = true;
      boundary_node[edge.v1] = true;
      if (order_ == 2) {
        boundary_node[nv + e] = true;
      }
    }
  }

  dof_of_node_.assign(num_nodes_, -1);
  int next = 0;
  for (int n = 0; n < num_nodes_; ++n) {
    if (!boundary_node[n]) {
      dof_of_node_[n] = next++;
    }
  }
  num_dofs_ = next;
}

Vec2 LagrangeSpace::node_coord(int node) const
{
  const int nv = mesh_->num_vertices();
  if (node < nv) {
    return mesh_->vertex(node);
  }
  return mesh_->edge_midpoint(node - nv);
}

std::vector<int> LagrangeSpace::element_nodes(int t) const
{
  const auto& tri = mesh_->triangle(t);
  std::vector<int> nodes = {tri[0], tri[1], tri[2]};
  if (order_ == 2) {
    const int nv = mesh_->num_vertices();
    for (int le = 0; le < 3; ++le) {
      nodes.push_back(nv + mesh_->tri_edge(t, le));
    }
  }
  return nodes;
}

namespace {

// Barycentric coordinates and their constant gradients on a triangle.
struct Barycentric {
  Mat2 jac_inv_t;
  Vec2 p0;

  explicit Barycentric(const TriMesh& mesh, int t)
  {
    const auto& tri = mesh.triangle(t);
    p0 = mesh.vertex(tri[0]);
    Mat2 jac;
    jac.col(0) = mesh.vertex(tri[1]) - p0;
    jac.col(1) = mesh.vertex(tri[2]) - p0;
    jac_inv_t = jac.inverse().transpose();
  }

  void coords(const Vec2& x, double lam[3]) const
  {
    const Vec2 ref = jac_inv_t.transpose() * (x - p0);
    lam[1] = ref.x();
    lam[2] = ref.y();
    lam[0] = 1.0 - lam[1] - lam[2];
  }

  Vec2 grad(int i) const
  {
    switch (i) {
    case 1:
      return jac_inv_t.col(0);
    case 2:
      return jac_inv_t.col(1);
    default:
      return -jac_inv_t.col(0) - jac_inv_t.col(1);
    }
  }
};

}  // namespace

Eigen::MatrixXd LagrangeSpace::shape_values(int t, const Eigen::MatrixX2d& pts) const
{
  const Barycentric bc(*mesh_, t);
  const int np = static_cast<int>(pts.rows());
  Eigen::MatrixXd vals(np, nodes_per_element());
  double lam[3];
  for (int q = 0; q < np; ++q) {
    bc.coords(pts.row(q).transpose(), lam);
    if (order_ == 1) {
      for (int i = 0; i < 3; ++i) {
        vals(q, i) = lam[i];
      }
    } else {
      for (int i = 0; i < 3; ++i) {
        vals(q, i) = lam[i] * (2.0 * lam[i] - 1.0);
      }
      for (int le = 0; le < 3; ++le) {
        vals(q, 3 + le) = 4.0 * lam[le] * lam[(le + 1) % 3];
      }
    }
  }
  return vals;
}

void LagrangeSpace::shape_gradients(int t, const Eigen::MatrixX2d& pts,
                                    Eigen::MatrixXd& gx, Eigen::MatrixXd& gy) const
{
  const Barycentric bc(*mesh_, t);
  const int np = static_cast<int>(pts.rows());
  gx.resize(np, nodes_per_element());
  gy.resize(np, nodes_per_element());
  double lam[3];
  const Vec2 glam[3] = {bc.grad(0), bc.grad(1), bc.grad(2)};
  for (int q = 0; q < np; ++q) {
    bc.coords(pts.row(q).transpose(), lam);
    if (order_ == 1) {
      for (int i = 0; i < 3; ++i) {
        gx(q, i) = glam[i].x();
        gy(q, i) = glam[i].y();
      }
    } else {
      for (int i = 0; i < 3; ++i) {
        const Vec2 g = (4.0 * lam[i] - 1.0) * glam[i];
        gx(q, i) = g.x();
        gy(q, i) = g.y();
      }
      for (int le = 0; le < 3; ++le) {
        const int a = le;
        const int b = (le + 1) % 3;
        const Vec2 g = 4.0 * (lam[a] * glam[b] + lam[b] * glam[a]);
        gx(q, 3 + le) = g.x();
        gy(q, 3 + le) = g.y();
      }
    }
  }
  return;
}

AssembledOperators assemble_conforming(const LagrangeSpace& space,
                                       const ProblemSpec& spec)
{
  spec.validate();
  const TriMesh& mesh = space.mesh();
  const int nt = mesh.num_triangles();
  const int nl = space.nodes_per_element();
  const QuadRule vol_rule = tri_quadrature(space.default_quad_degree());

  AssembledOperators ops;
  ops.n_dofs = space.num_dofs();
  ops.cells.resize(nt);

  std::vector<Triplet> kt;
  std::vector<Triplet> mt;
  kt.reserve(static_cast<size_t>(nt) * nl * nl);
  mt.reserve(static_cast<size_t>(nt) * nl * nl);

  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangle(t);
    const MappedQuad quad = map_to_triangle(vol_rule, mesh.vertex(tri[0]),
                                            mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    const int nq = static_cast<int>(quad.weights.size());

    const Eigen::MatrixXd sv = space.shape_values(t, quad.points);
    Eigen::MatrixXd gx, gy;
    space.shape_gradients(t, quad.points, gx, gy);

    Eigen::MatrixXd kloc = Eigen::MatrixXd::Zero(nl, nl);
    for (int q = 0; q < nq; ++q) {
      const Vec2 xq = quad.points.row(q).transpose();
      const double v = spec.potential(xq);
      if (v < 0.0) {
        throw std::domain_error("assemble_conforming: negative potential value");
      }
      const Eigen::VectorXd gxq = gx.row(q).transpose();
      const Eigen::VectorXd gyq = gy.row(q).transpose();
      if (spec.identity_diffusion()) {
        kloc += quad.weights[q] *
                (gxq * gxq.transpose() + gyq * gyq.transpose());
      } else {
        const Mat2 a = spec.diffusion_at(xq);
        kloc += quad.weights[q] *
                (a(0, 0) * gxq * gxq.transpose() + a(0, 1) * gxq * gyq.transpose() +
                 a(1, 0) * gyq * gxq.transpose() + a(1, 1) * gyq * gyq.transpose());
      }
      kloc += (quad.weights[q] * v) * (sv.row(q).transpose() * sv.row(q));
    }
    const Eigen::MatrixXd mloc = sv.transpose() * quad.weights.asDiagonal() * sv;

    const auto nodes = space.element_nodes(t);
    std::vector<int> dofs(nl);
    for (int i = 0; i < nl; ++i) {
      dofs[i] = space.dof_of_node(nodes[i]);
    }

    int na = 0;
    for (int i = 0; i < nl; ++i) {
      if (dofs[i] >= 0) {
        ++na;
      }
    }
    DensityCell& cell = ops.cells[t];
    cell.phi.resize(nq, na);
    cell.dofs.resize(na);
    cell.w = quad.weights;
    int col = 0;
    for (int i = 0; i < nl; ++i) {
      if (dofs[i] < 0) {
        continue;
      }
      cell.phi.col(col) = sv.col(i);
      cell.dofs[col] = dofs[i];
      ++col;
    }

    for (int i = 0; i < nl; ++i) {
      if (dofs[i] < 0) {
        continue;
      }
      for (int j = 0; j < nl; ++j) {
        if (dofs[j] < 0) {
          continue;
        }
        kt.emplace_back(dofs[i], dofs[j], kloc(i, j));
        mt.emplace_back(dofs[i], dofs[j], mloc(i, j));
      }
    }
  }

  ops.stiffness = SparseSymMatrix(ops.n_dofs, kt);
  ops.mass = SparseSymMatrix(ops.n_dofs, mt);
  return ops;
}

GroundState scf_solve_conforming(const LagrangeSpace& space, const ProblemSpec& spec,
                                 const ScfConfig& config)
{
  const AssembledOperators ops = assemble_conforming(space, spec);
  return scf_solve(ops, spec.term, config);
}

}  // namespace wgpe
