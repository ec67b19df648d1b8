// Smallest-eigenpair solver for SPD pencils (K, M) with possibly semidefinite
// M, and the damped self-consistent field iteration for the nonlinear ground
// state.

#ifndef WGPE_EIGENSOLVE_HPP
#define WGPE_EIGENSOLVE_HPP

#include "wgpe/assembly.hpp"
#include "wgpe/problem.hpp"
#include "wgpe/sparse.hpp"

#include <Eigen/SparseCholesky>

#include <stdexcept>
#include <string>
#include <vector>

namespace wgpe {

struct EigenPair {
  double lambda = 0.0;
  Eigen::VectorXd x;       ///< M-normalized: x^T M x = 1
  double residual = 0.0;   ///< ||K x - lambda M x|| / ||K x||
};

struct ScfConfig {
  double damping = 0.3;        ///< mixing parameter t in (0,1]
  double tol_lambda = 1e-10;   ///< |d lambda| <= tol_lambda * max(1,|lambda|)
  double tol_state = 1e-8;     ///< L2 distance between successive iterates
  double tol_residual = 1e-9;  ///< self-consistent relative residual
  int max_iters = 500;
  double inner_tol = 1e-10;    ///< eigensolver residual tolerance
  int inner_max_iters = 5000;  ///< solver applications budget per inner solve
  bool adaptive_damping = true;

  void validate() const;
};

struct ScfIterate {
  int iter;
  double lambda;
  double dlambda;
  double dstate;
};

struct GroundState {
  double lambda = 0.0;
  Eigen::VectorXd coeffs;
  double energy = 0.0;
  double l4norm4 = 0.0;
  int iterations = 0;
  double residual = 0.0;
  double beta = 0.0;  ///< nonlinearity strength the state was solved with
  std::vector<ScfIterate> history;
};

class EigenSolveError : public std::runtime_error {
public:
  EigenSolveError(const std::string& msg, double best)
      : std::runtime_error(msg), best_residual(best)
  {
  }
  double best_residual;
};

class ScfError : public std::runtime_error {
public:
  ScfError(const std::string& msg, std::vector<ScfIterate> hist)
      : std::runtime_error(msg), history(std::move(hist))
  {
  }
  std::vector<ScfIterate> history;
};

/// Smallest eigenpair of K x = lambda M x over the subspace where M is
/// definite, by shift-invert Lanczos with full reorthogonalization in the
/// M-inner product. K must be SPD; M positive semidefinite and not zero.
/// `max_iters` bounds the number of K-solves.
EigenPair smallest_eigenpair(const SparseSymMatrix& K, const SparseSymMatrix& M,
                             double tol = 1e-10, int max_iters = 5000);

/// Same, reusing a prepared factorization of K and warm-starting from x0.
EigenPair smallest_eigenpair_prefactored(
    const Eigen::SimplicialLDLT<SpMat>& K_solver, const SpMat& K, const SpMat& M,
    double tol, int max_iters, const Eigen::VectorXd& x0);

/// Damped self-consistent field iteration for the ground state of the
/// nonlinear pencil (K_lin + N(u), M): solve the linearized eigenproblem at
/// the current density, mix with damping, renormalize, repeat. Converges on
/// eigenvalue increment, state increment, and self-consistent residual;
/// throws ScfError with the iteration history on failure.
GroundState scf_solve(const AssembledOperators& ops, const NonlinearTerm& term,
                      const ScfConfig& config = {});

/// Writes the convergence history as CSV (iteration, lambda, dlambda, dstate).
void write_history_csv(const GroundState& state, const std::string& path);

}  // namespace wgpe

#endif
