#include "wgpe/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wgpe {

AssembledOperators assemble_linear(const WgSpace& space, const ProblemSpec& spec,
                                   double eps)
{
  spec.validate();
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("assemble_linear: eps must be in (0,1)");
  }

  const TriMesh& mesh = space.mesh();
  const int nt = mesh.num_triangles();
  const int n0 = space.interior_block_dim();
  const int nloc = space.local_dim();

  const WeakGradientTable wgrad(space);
  const QuadRule vol_rule = tri_quadrature(space.default_quad_degree());

  AssembledOperators ops;
  ops.n_dofs = space.num_dofs();
  ops.cells.resize(nt);

  std::vector<Triplet> kt;
  std::vector<Triplet> mt;
  kt.reserve(static_cast<size_t>(nt) * nloc * nloc);
  mt.reserve(static_cast<size_t>(nt) * n0 * n0);

  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangle(t);
    const MappedQuad quad = map_to_triangle(vol_rule, mesh.vertex(tri[0]),
                                            mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    const int nq = static_cast<int>(quad.weights.size());

    const TriBasis psi = space.element_basis(t);
    const Eigen::MatrixXd psi_v = psi.values(quad.points);

    const TriBasis phi = space.gradient_basis(t);
    const Eigen::MatrixXd phi_v = phi.values(quad.points);
    const int m = phi.dim();

    // Weighted vector mass (A grad_w ., grad_w .) in the gradient basis.
    Eigen::MatrixXd wvec = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    if (spec.identity_diffusion()) {
      const Eigen::MatrixXd mphi =
          phi_v.transpose() * quad.weights.asDiagonal() * phi_v;
      wvec.topLeftCorner(m, m) = mphi;
      wvec.bottomRightCorner(m, m) = mphi;
    } else {
      for (int q = 0; q < nq; ++q) {
        const Mat2 a = spec.diffusion_at(quad.points.row(q).transpose());
        const Eigen::VectorXd pq = phi_v.row(q).transpose();
        const Eigen::MatrixXd outer = quad.weights[q] * (pq * pq.transpose());
        wvec.topLeftCorner(m, m) += a(0, 0) * outer;
        wvec.topRightCorner(m, m) += a(0, 1) * outer;
        wvec.bottomLeftCorner(m, m) += a(1, 0) * outer;
        wvec.bottomRightCorner(m, m) += a(1, 1) * outer;
      }
    }

    const Eigen::MatrixXd& g = wgrad.local(t);
    Eigen::MatrixXd kloc = g.transpose() * wvec * g;
    kloc += stabilizer_local(space, t, eps);

    // Potential pairing on the interior component.
    Eigen::MatrixXd vloc = Eigen::MatrixXd::Zero(n0, n0);
    for (int q = 0; q < nq; ++q) {
      const double v = spec.potential(quad.points.row(q).transpose());
      if (v < 0.0) {
        throw std::domain_error("assemble_linear: negative potential value");
      }
      vloc += (quad.weights[q] * v) * (psi_v.row(q).transpose() * psi_v.row(q));
    }
    kloc.topLeftCorner(n0, n0) += vloc;

    const Eigen::MatrixXd mloc =
        psi_v.transpose() * quad.weights.asDiagonal() * psi_v;

    const auto dofs = space.element_dofs(t);
    for (int i = 0; i < nloc; ++i) {
      if (dofs[i] < 0) {
        continue;
      }
      for (int j = 0; j < nloc; ++j) {
        if (dofs[j] < 0) {
          continue;
        }
        kt.emplace_back(dofs[i], dofs[j], kloc(i, j));
      }
    }
    const int ib = space.interior_base(t);
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n0; ++j) {
        mt.emplace_back(ib + i, ib + j, mloc(i, j));
      }
    }

    DensityCell& cell = ops.cells[t];
    cell.phi = psi_v;
    cell.w = quad.weights;
    cell.dofs.resize(n0);
    for (int i = 0; i < n0; ++i) {
      cell.dofs[i] = ib + i;
    }
  }

  ops.stiffness = SparseSymMatrix(ops.n_dofs, kt);
  ops.mass = SparseSymMatrix(ops.n_dofs, mt);
  return ops;
}

SparseSymMatrix assemble_density_term(const AssembledOperators& ops,
                                      const NonlinearTerm& term,
                                      const Eigen::VectorXd& state)
{
  std::vector<Triplet> triplets;
  for (const DensityCell& cell : ops.cells) {
    const int na = static_cast<int>(cell.dofs.size());
    Eigen::VectorXd uloc(na);
    for (int i = 0; i < na; ++i) {
      uloc[i] = state[cell.dofs[i]];
    }
    const Eigen::VectorXd uq = cell.phi * uloc;
    Eigen::VectorXd coef(cell.w.size());
    for (int q = 0; q < cell.w.size(); ++q) {
      coef[q] = cell.w[q] * term.f(uq[q] * uq[q]);
    }
    const Eigen::MatrixXd local = cell.phi.transpose() * coef.asDiagonal() * cell.phi;
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < na; ++j) {
        triplets.emplace_back(cell.dofs[i], cell.dofs[j], local(i, j));
      }
    }
  }
  return SparseSymMatrix(ops.n_dofs, triplets);
}

double energy(const AssembledOperators& ops, const NonlinearTerm& term,
              const Eigen::VectorXd& state)
{
  double nonlinear = 0.0;
  for (const DensityCell& cell : ops.cells) {
    const int na = static_cast<int>(cell.dofs.size());
    Eigen::VectorXd uloc(na);
    for (int i = 0; i < na; ++i) {
      uloc[i] = state[cell.dofs[i]];
    }
    const Eigen::VectorXd uq = cell.phi * uloc;
    for (int q = 0; q < cell.w.size(); ++q) {
      nonlinear += cell.w[q] * term.F(uq[q] * uq[q]);
    }
  }
  return 0.5 * ops.stiffness.quad_form(state) + 0.5 * nonlinear;
}

double l4_norm4(const AssembledOperators& ops, const Eigen::VectorXd& state)
{
  double total = 0.0;
  for (const DensityCell& cell : ops.cells) {
    const int na = static_cast<int>(cell.dofs.size());
    Eigen::VectorXd uloc(na);
    for (int i = 0; i < na; ++i) {
      uloc[i] = state[cell.dofs[i]];
    }
    const Eigen::VectorXd uq = cell.phi * uloc;
    for (int q = 0; q < cell.w.size(); ++q) {
      const double u2 = uq[q] * uq[q];
      total += cell.w[q] * u2 * u2;
    }
  }
  return total;
}

double interior_integral(const AssembledOperators& ops, const Eigen::VectorXd& state)
{
  double total = 0.0;
  for (const DensityCell& cell : ops.cells) {
    const int na = static_cast<int>(cell.dofs.size());
    Eigen::VectorXd uloc(na);
    for (int i = 0; i < na; ++i) {
      uloc[i] = state[cell.dofs[i]];
    }
    total += cell.w.dot(cell.phi * uloc);
  }
  return total;
}

double h1_discrete_norm(const WgSpace& space, const Eigen::VectorXd& state)
{
  const TriMesh& mesh = space.mesh();
  const QuadRule vol_rule = tri_quadrature(std::max(2 * space.degree(), 2));
  double total = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const MappedQuad quad = map_to_triangle(vol_rule, mesh.vertex(tri[0]),
                                            mesh.vertex(tri[1]), mesh.vertex(tri[2]));
    const TriBasis psi = space.element_basis(t);
    Eigen::MatrixXd gx, gy;
    psi.gradients(quad.points, gx, gy);

    const Eigen::VectorXd u0 =
        state.segment(space.interior_base(t), space.interior_block_dim());
    const Eigen::VectorXd dux = gx * u0;
    const Eigen::VectorXd duy = gy * u0;
    for (int q = 0; q < quad.weights.size(); ++q) {
      total += quad.weights[q] * (dux[q] * dux[q] + duy[q] * duy[q]);
    }

    const Eigen::VectorXd loc = space.gather_local(state, t);
    total += loc.dot(jump_penalty_local(space, t) * loc);
  }
  return std::sqrt(total);
}

NonlinearUpdater::NonlinearUpdater(const AssembledOperators& ops)
    : ops_(&ops), k_(ops.stiffness.matrix())
{
  k_.makeCompressed();
  base_values_ = Eigen::Map<const Eigen::VectorXd>(k_.valuePtr(), k_.nonZeros());

  positions_.resize(ops.cells.size());
  const int* outer = k_.outerIndexPtr();
  const int* inner = k_.innerIndexPtr();
  for (size_t c = 0; c < ops.cells.size(); ++c) {
    const DensityCell& cell = ops.cells[c];
    const int na = static_cast<int>(cell.dofs.size());
    positions_[c].resize(static_cast<size_t>(na) * na);
    for (int j = 0; j < na; ++j) {
      const int col = cell.dofs[j];
      const int* begin = inner + outer[col];
      const int* end = inner + outer[col + 1];
      for (int i = 0; i < na; ++i) {
        const int row = cell.dofs[i];
        const int* it = std::lower_bound(begin, end, row);
        if (it == end || *it != row) {
          throw std::logic_error("NonlinearUpdater: density entry missing from pattern");
        }
        positions_[c][static_cast<size_t>(j) * na + i] =
            static_cast<int>(outer[col] + (it - begin));
      }
    }
  }
}

const SpMat& NonlinearUpdater::refresh(const NonlinearTerm& term,
                                       const Eigen::VectorXd& state)
{
  Eigen::Map<Eigen::VectorXd>(k_.valuePtr(), k_.nonZeros()) = base_values_;
  if (term.linear()) {
    return k_;
  }
  double* values = k_.valuePtr();
  for (size_t c = 0; c < ops_->cells.size(); ++c) {
    const DensityCell& cell = ops_->cells[c];
    const int na = static_cast<int>(cell.dofs.size());
    Eigen::VectorXd uloc(na);
    for (int i = 0; i < na; ++i) {
      uloc[i] = state[cell.dofs[i]];
    }
    const Eigen::VectorXd uq = cell.phi * uloc;
    Eigen::VectorXd coef(cell.w.size());
    for (int q = 0; q < cell.w.size(); ++q) {
      coef[q] = cell.w[q] * term.f(uq[q] * uq[q]);
    }
    const Eigen::MatrixXd local = cell.phi.transpose() * coef.asDiagonal() * cell.phi;
    const auto& pos = positions_[c];
    for (int j = 0; j < na; ++j) {
      for (int i = 0; i < na; ++i) {
        values[pos[static_cast<size_t>(j) * na + i]] += local(i, j);
      }
    }
  }
  return k_;
}

}  // namespace wgpe
