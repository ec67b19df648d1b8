#include "wgpe/wg_space.hpp"

#include <stdexcept>

namespace wgpe {

WgSpace::WgSpace(std::shared_ptr<const TriMesh> mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree)
{
  if (!mesh_) {
    throw std::invalid_argument("WgSpace: null mesh");
  }
  if (degree_ < 1) {
    throw std::invalid_argument("WgSpace: degree must be >= 1");
  }
  n0_ = tri_poly_dim(degree_);

  const int nt = mesh_->num_triangles();
  int next = nt * n0_;
  edge_base_.assign(mesh_->num_edges(), -1);
  for (int e = 0; e < mesh_->num_edges(); ++e) {
    if (!mesh_->edge(e).boundary) {
      edge_base_[e] = next;
      next += degree_;
    }
  }
  num_dofs_ = next;
}

std::vector<int> WgSpace::element_dofs(int t) const
{
  std::vector<int> dofs(local_dim());
  for (int i = 0; i < n0_; ++i) {
    dofs[i] = interior_base(t) + i;
  }
  for (int le = 0; le < 3; ++le) {
    const int base = edge_base_[mesh_->tri_edge(t, le)];
    for (int i = 0; i < degree_; ++i) {
      dofs[n0_ + le * degree_ + i] = (base < 0) ? -1 : base + i;
    }
  }
  return dofs;
}

Eigen::VectorXd WgSpace::gather_local(const Eigen::VectorXd& coeffs, int t) const
{
  Eigen::VectorXd loc = Eigen::VectorXd::Zero(local_dim());
  const auto dofs = element_dofs(t);
  for (int i = 0; i < local_dim(); ++i) {
    if (dofs[i] >= 0) {
      loc[i] = coeffs[dofs[i]];
    }
  }
  return loc;
}

Eigen::VectorXd WgFunction::interior_values(int t, const Eigen::MatrixX2d& pts) const
{
  const TriBasis basis = space->element_basis(t);
  const int n0 = basis.dim();
  const Eigen::VectorXd loc =
      coeffs.segment(space->interior_base(t), n0);
  return basis.values(pts) * loc;
}

Eigen::VectorXd project_element(const TriBasis& basis, const MappedQuad& quad,
                                const std::function<double(const Vec2&)>& f)
{
  const Eigen::MatrixXd phi = basis.values(quad.points);
  const Eigen::MatrixXd mass = phi.transpose() * quad.weights.asDiagonal() * phi;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.dim());
  for (int q = 0; q < quad.weights.size(); ++q) {
    rhs += quad.weights[q] * f(quad.points.row(q).transpose()) *
           phi.row(q).transpose();
  }
  return mass.ldlt().solve(rhs);
}

Eigen::VectorXd project_edge(const EdgeBasis& basis, const MappedQuad& quad,
                             const std::function<double(const Vec2&)>& f)
{
  const Eigen::MatrixXd chi = basis.values(quad.points);
  const Eigen::MatrixXd mass = chi.transpose() * quad.weights.asDiagonal() * chi;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.dim());
  for (int q = 0; q < quad.weights.size(); ++q) {
    rhs += quad.weights[q] * f(quad.points.row(q).transpose()) *
           chi.row(q).transpose();
  }
  return mass.ldlt().solve(rhs);
}

Eigen::VectorXd project_element_vec(const TriBasis& basis, const MappedQuad& quad,
                                    const std::function<Vec2(const Vec2&)>& f)
{
  const Eigen::MatrixXd phi = basis.values(quad.points);
  const Eigen::MatrixXd mass = phi.transpose() * quad.weights.asDiagonal() * phi;
  Eigen::VectorXd rhs_x = Eigen::VectorXd::Zero(basis.dim());
  Eigen::VectorXd rhs_y = Eigen::VectorXd::Zero(basis.dim());
  for (int q = 0; q < quad.weights.size(); ++q) {
    const Vec2 v = f(quad.points.row(q).transpose());
    rhs_x += quad.weights[q] * v.x() * phi.row(q).transpose();
    rhs_y += quad.weights[q] * v.y() * phi.row(q).transpose();
  }
  const auto solver = mass.ldlt();
  Eigen::VectorXd out(2 * basis.dim());
  out.head(basis.dim()) = solver.solve(rhs_x);
  out.tail(basis.dim()) = solver.solve(rhs_y);
  return out;
}

WgFunction project_wg(std::shared_ptr<const WgSpace> space,
                      const std::function<double(const Vec2&)>& f, int quad_degree)
{
  const TriMesh& mesh = space->mesh();
  const int vol_deg =
      (quad_degree > 0) ? quad_degree : space->default_quad_degree() + 2;
  const QuadRule vol_rule = tri_quadrature(std::min(vol_deg, 20));
  const QuadRule edge_rule = edge_quadrature(vol_deg);

  WgFunction u;
  u.space = space;
  u.coeffs = Eigen::VectorXd::Zero(space->num_dofs());

  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const MappedQuad quad = map_to_triangle(vol_rule, mesh.vertex(tri[0]),
                                            mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    u.coeffs.segment(space->interior_base(t), space->interior_block_dim()) =
        project_element(space->element_basis(t), quad, f);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (space->edge_base(e) < 0) {
      continue;
    }
    const auto& edge = mesh.edge(e);
    const MappedQuad quad =
        map_to_segment(edge_rule, mesh.vertex(edge.v0), mesh.vertex(edge.v1));
    u.coeffs.segment(space->edge_base(e), space->edge_block_dim()) =
        project_edge(space->edge_basis(e), quad, f);
  }
  return u;
}

WeakGradientTable::WeakGradientTable(const WgSpace& space)
{
  const TriMesh& mesh = space.mesh();
  const int k = space.degree();
  m_ = tri_poly_dim(k - 1);
  const int n0 = space.interior_block_dim();
  const int nb = space.edge_block_dim();
  const int nloc = space.local_dim();

  const QuadRule vol_rule = tri_quadrature(std::max(2 * k, 2));
  const QuadRule edge_rule = edge_quadrature(space.default_edge_quad_degree());

  ops_.resize(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const MappedQuad quad = map_to_triangle(vol_rule, mesh.vertex(tri[0]),
                                            mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    const TriBasis psi = space.element_basis(t);
    const TriBasis phi = space.gradient_basis(t);

    const Eigen::MatrixXd psi_v = psi.values(quad.points);
    const Eigen::MatrixXd phi_v = phi.values(quad.points);
    Eigen::MatrixXd phi_gx, phi_gy;
    phi.gradients(quad.points, phi_gx, phi_gy);

    const Eigen::MatrixXd mass =
        phi_v.transpose() * quad.weights.asDiagonal() * phi_v;

    // Right side of the defining relation, rows = vector test functions
    // (phi_j, 0) then (0, phi_j).
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * m_, nloc);
    rhs.block(0, 0, m_, n0) =
        -(phi_gx.transpose() * quad.weights.asDiagonal() * psi_v);
    rhs.block(m_, 0, m_, n0) =
        -(phi_gy.transpose() * quad.weights.asDiagonal() * psi_v);

    for (int le = 0; le < 3; ++le) {
      const int e = mesh.tri_edge(t, le);
      const auto& edge = mesh.edge(e);
      const MappedQuad equad =
          map_to_segment(edge_rule, mesh.vertex(edge.v0), mesh.vertex(edge.v1));
      const EdgeBasis chi = space.edge_basis(e);
      const Eigen::MatrixXd chi_v = chi.values(equad.points);
      const Eigen::MatrixXd phi_e = phi.values(equad.points);
      const Eigen::MatrixXd pair =
          phi_e.transpose() * equad.weights.asDiagonal() * chi_v;  // m x nb
      const Vec2 n = mesh.outward_normal(t, le);
      rhs.block(0, n0 + le * nb, m_, nb) += n.x() * pair;
      rhs.block(m_, n0 + le * nb, m_, nb) += n.y() * pair;
    }

    const auto solver = mass.ldlt();
    Eigen::MatrixXd g(2 * m_, nloc);
    g.topRows(m_) = solver.solve(rhs.topRows(m_));
    g.bottomRows(m_) = solver.solve(rhs.bottomRows(m_));
    ops_[t] = std::move(g);
  }
}

namespace {

// Shared core of the stabilizer and the discrete-H1 jump term: accumulates
// weight * sum_e (P_e c0 - c_be)^T Me (P_e c0 - c_be).
Eigen::MatrixXd trace_mismatch_form(const WgSpace& space, int t, double weight)
{
  const TriMesh& mesh = space.mesh();
  const int n0 = space.interior_block_dim();
  const int nb = space.edge_block_dim();
  const int nloc = space.local_dim();

  const TriBasis psi = space.element_basis(t);
  const QuadRule edge_rule = edge_quadrature(space.default_edge_quad_degree());

  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(nloc, nloc);
  for (int le = 0; le < 3; ++le) {
    const int e = mesh.tri_edge(t, le);
    const auto& edge = mesh.edge(e);
    const MappedQuad equad =
        map_to_segment(edge_rule, mesh.vertex(edge.v0), mesh.vertex(edge.v1));
    const EdgeBasis chi = space.edge_basis(e);
    const Eigen::MatrixXd chi_v = chi.values(equad.points);
    const Eigen::MatrixXd psi_e = psi.values(equad.points);

    const Eigen::MatrixXd me = chi_v.transpose() * equad.weights.asDiagonal() * chi_v;
    const Eigen::MatrixXd tr = chi_v.transpose() * equad.weights.asDiagonal() * psi_e;
    const Eigen::MatrixXd pe = me.ldlt().solve(tr);  // Qb of the interior trace

    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(nb, nloc);
    L.leftCols(n0) = pe;
    L.block(0, n0 + le * nb, nb, nb) = -Eigen::MatrixXd::Identity(nb, nb);

    S += weight * L.transpose() * me * L;
  }
  return S;
}

}  // namespace

Eigen::MatrixXd stabilizer_local(const WgSpace& space, int t, double eps)
{
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("stabilizer_local: eps must be in (0,1)");
  }
  const double h = space.mesh().h_tri(t);
  return trace_mismatch_form(space, t, std::pow(h, -1.0 + eps));
}

Eigen::MatrixXd jump_penalty_local(const WgSpace& space, int t)
{
  return trace_mismatch_form(space, t, 1.0 / space.mesh().h_tri(t));
}

}  // namespace wgpe
