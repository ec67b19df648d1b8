// Global operator assembly shared by the weak Galerkin and conforming
// discretizations: the linear part (stiffness + potential + stabilizer for
// WG), the L2 mass, and per-element caches for reassembling the
// density-dependent term during the self-consistent iteration.

#ifndef WGPE_ASSEMBLY_HPP
#define WGPE_ASSEMBLY_HPP

#include "wgpe/problem.hpp"
#include "wgpe/sparse.hpp"
#include "wgpe/wg_space.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace wgpe {

/// Element-local data needed to rebuild the density term (f(u^2) v, w) and
/// evaluate nonlinear integrals. `phi` holds the active basis values at the
/// element quadrature points.
struct DensityCell {
  Eigen::MatrixXd phi;    // nq x na
  Eigen::VectorXd w;      // nq physical quadrature weights
  Eigen::VectorXi dofs;   // na global dof indices
};

struct AssembledOperators {
  SparseSymMatrix stiffness;  ///< linear part: energy form without the density term
  SparseSymMatrix mass;       ///< L2 pairing (interior components for WG)
  std::vector<DensityCell> cells;
  int n_dofs = 0;
};

/// Assembles the WG linear operator (weak-gradient stiffness + potential +
/// stabilizer) and the interior mass. The L2 pairings act on interior
/// components only; edge unknowns enter through the weak gradient and the
/// stabilizer.
AssembledOperators assemble_linear(const WgSpace& space, const ProblemSpec& spec,
                                   double eps);

/// Density matrix N(u) with v^T N(u) w = sum_T int f(u0^2) v0 w0. PSD for
/// nondecreasing f.
SparseSymMatrix assemble_density_term(const AssembledOperators& ops,
                                      const NonlinearTerm& term,
                                      const Eigen::VectorXd& state);

/// Discrete energy 1/2 x^T K_lin x + 1/2 sum_T int F(u0^2).
double energy(const AssembledOperators& ops, const NonlinearTerm& term,
              const Eigen::VectorXd& state);

/// Fourth power of the L4 norm of the interior component.
double l4_norm4(const AssembledOperators& ops, const Eigen::VectorXd& state);

/// Integral of the interior component over the domain (sign diagnostic).
double interior_integral(const AssembledOperators& ops,
                         const Eigen::VectorXd& state);

/// Discrete H1 norm: elementwise gradients of the interior part plus the
/// 1/h_T-weighted projected-trace mismatch.
double h1_discrete_norm(const WgSpace& space, const Eigen::VectorXd& state);

/// Keeps K(u) = K_lin + N(u) on a fixed sparsity pattern so the symbolic
/// factorization can be reused across self-consistent iterations.
class NonlinearUpdater {
public:
  explicit NonlinearUpdater(const AssembledOperators& ops);

  /// Recomputes K(u) in place and returns it.
  const SpMat& refresh(const NonlinearTerm& term, const Eigen::VectorXd& state);

  const SpMat& matrix() const { return k_; }

private:
  const AssembledOperators* ops_;
  SpMat k_;
  Eigen::VectorXd base_values_;
  std::vector<std::vector<int>> positions_;  // per cell, na*na flat offsets
};

}  // namespace wgpe

#endif
