#include "wgpe/eigensolve.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>

namespace wgpe {

void ScfConfig::validate() const
{
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw std::invalid_argument("ScfConfig: damping must be in (0,1]");
  }
  if (!(tol_lambda > 0.0) || !(tol_state > 0.0) || !(tol_residual > 0.0) ||
      !(inner_tol > 0.0)) {
    throw std::invalid_argument("ScfConfig: tolerances must be positive");
  }
  if (max_iters < 1 || inner_max_iters < 1) {
    throw std::invalid_argument("ScfConfig: iteration limits must be >= 1");
  }
}

namespace {

constexpr int kLanczosBlock = 40;

double pencil_residual(const SpMat& K, const SpMat& M, double lambda,
                       const Eigen::VectorXd& x)
{
  const Eigen::VectorXd kx = K * x;
  const double nkx = kx.norm();
  if (nkx == 0.0) {
    return 0.0;
  }
  return (kx - lambda * (M * x)).norm() / nkx;
}

// Deterministic stand-in for a random vector (thread-safe, reproducible runs).
Eigen::VectorXd hash_vector(int n)
{
  Eigen::VectorXd v(n);
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v[i] = static_cast<double>(s >> 11) * (1.0 / 9007199254740992.0) - 0.5;
  }
  return v;
}

}  // namespace

EigenPair smallest_eigenpair_prefactored(
    const Eigen::SimplicialLDLT<SpMat>& K_solver, const SpMat& K, const SpMat& M,
    double tol, int max_iters, const Eigen::VectorXd& x0)
{
  const int n = static_cast<int>(K.rows());

  EigenPair best;
  best.residual = std::numeric_limits<double>::infinity();

  Eigen::VectorXd start = x0;
  int solves = 0;

  while (solves < max_iters) {
    // (Re)start a Lanczos sweep for B = K^{-1} M in the M-semi-inner product.
    std::vector<Eigen::VectorXd> q_vecs;
    std::vector<Eigen::VectorXd> mq_vecs;
    std::vector<double> alphas;
    std::vector<double> betas;

    Eigen::VectorXd q = start;
    Eigen::VectorXd mq = M * q;
    double mnorm2 = q.dot(mq);
    if (!(mnorm2 > 0.0)) {
      // Start has no mass component; fall back to a deterministic ramp.
      q = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
      mq = M * q;
      mnorm2 = q.dot(mq);
      if (!(mnorm2 > 0.0)) {
        throw std::invalid_argument("smallest_eigenpair: M annihilates start vector");
      }
    }
    q /= std::sqrt(mnorm2);
    mq /= std::sqrt(mnorm2);
    q_vecs.push_back(q);
    mq_vecs.push_back(mq);

    bool breakdown = false;
    while (static_cast<int>(alphas.size()) < kLanczosBlock && solves < max_iters) {
      const int j = static_cast<int>(alphas.size());
      Eigen::VectorXd z = K_solver.solve(mq_vecs[j]);
      ++solves;

      const double alpha = z.dot(mq_vecs[j]);
      alphas.push_back(alpha);
      z -= alpha * q_vecs[j];
      if (j > 0) {
        z -= betas[j - 1] * q_vecs[j - 1];
      }
      // Full reorthogonalization, twice for safety.
      for (int pass = 0; pass < 2; ++pass) {
        for (size_t i = 0; i < q_vecs.size(); ++i) {
          const double h = z.dot(mq_vecs[i]);
          z -= h * q_vecs[i];
        }
      }

      const Eigen::VectorXd mz = M * z;
      const double beta2 = z.dot(mz);
      const double beta = (beta2 > 0.0) ? std::sqrt(beta2) : 0.0;

      // Ritz extraction from the tridiagonal section.
      const int msize = static_cast<int>(alphas.size());
      Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(msize, msize);
      for (int i = 0; i < msize; ++i) {
        tmat(i, i) = alphas[i];
        if (i > 0) {
          tmat(i, i - 1) = betas[i - 1];
          tmat(i - 1, i) = betas[i - 1];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tmat);
      const int top = msize - 1;  // largest eigenvalue of B ~ smallest lambda
      const double theta = es.eigenvalues()[top];
      if (theta > 0.0) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < msize; ++i) {
          x += es.eigenvectors()(i, top) * q_vecs[i];
        }
        const double xm2 = x.dot(M * x);
        if (xm2 > 0.0) {
          x /= std::sqrt(xm2);
          const double lambda = x.dot(K * x);
          const double res = pencil_residual(K, M, lambda, x);
          if (res < best.residual) {
            best.lambda = lambda;
            best.x = x;
            best.residual = res;
          }
          if (res <= tol) {
            return best;
          }
        }
      }

      if (beta <= 1e-14 * std::abs(alphas[0])) {
        breakdown = true;
        break;
      }
      betas.push_back(beta);
      q_vecs.push_back(z / beta);
      mq_vecs.push_back(mz / beta);
    }

    if (breakdown && best.residual <= tol) {
      return best;
    }
    // Restart from the best Ritz vector (or perturb after a breakdown).
    if (best.x.size() == n && !breakdown) {
      start = best.x;
    } else if (best.x.size() == n) {
      start = best.x + 1e-8 * hash_vector(n);
    } else {
      start = hash_vector(n);
    }
  }

  throw EigenSolveError("smallest_eigenpair: no convergence within the solve budget",
                        best.residual);
}

EigenPair smallest_eigenpair(const SparseSymMatrix& K, const SparseSymMatrix& M,
                             double tol, int max_iters)
{
  if (M.nonzeros() == 0 || M.matrix().norm() == 0.0) {
    throw std::invalid_argument("smallest_eigenpair: M is identically zero");
  }
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.compute(K.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("smallest_eigenpair: factorization of K failed");
  }
  const Eigen::VectorXd start = Eigen::VectorXd::Ones(K.dim());
  return smallest_eigenpair_prefactored(solver, K.matrix(), M.matrix(), tol,
                                        max_iters, start);
}

GroundState scf_solve(const AssembledOperators& ops, const NonlinearTerm& term,
                      const ScfConfig& config)
{
  config.validate();
  const SpMat& m_mat = ops.mass.matrix();

  NonlinearUpdater updater(ops);
  Eigen::SimplicialLDLT<SpMat> solver;
  solver.analyzePattern(updater.matrix());

  const auto finalize = [&](double lambda, Eigen::VectorXd x, int iters,
                            double residual, std::vector<ScfIterate> history) {
    if (interior_integral(ops, x) < 0.0) {
      x = -x;
    }
    GroundState gs;
    gs.lambda = lambda;
    gs.energy = energy(ops, term, x);
    gs.l4norm4 = l4_norm4(ops, x);
    gs.coeffs = std::move(x);
    gs.iterations = iters;
    gs.residual = residual;
    gs.beta = term.beta;
    gs.history = std::move(history);
    return gs;
  };

  // Ground state of the linear part; also the initial guess for beta > 0.
  solver.factorize(updater.refresh(NonlinearTerm{0.0}, Eigen::VectorXd()));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("scf_solve: factorization of the linear part failed");
  }
  EigenPair linear_pair = smallest_eigenpair_prefactored(
      solver, updater.matrix(), m_mat, config.inner_tol, config.inner_max_iters,
      Eigen::VectorXd::Ones(ops.n_dofs));

  if (term.linear()) {
    return finalize(linear_pair.lambda, std::move(linear_pair.x), 1,
                    linear_pair.residual, {});
  }

  Eigen::VectorXd x = std::move(linear_pair.x);
  std::vector<ScfIterate> history;
  double t = config.damping;
  double lambda_prev = std::numeric_limits<double>::quiet_NaN();
  double dstate = std::numeric_limits<double>::infinity();
  int sign_flips = 0;
  int steady = 0;
  double dlambda_prev = 0.0;

  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const SpMat& k_mat = updater.refresh(term, x);
    solver.factorize(k_mat);
    if (solver.info() != Eigen::Success) {
      throw ScfError("scf_solve: factorization failed", history);
    }

    const double lambda = x.dot(k_mat * x);  // x is M-normalized
    const double dlambda = std::isnan(lambda_prev) ? 0.0 : lambda - lambda_prev;
    const double residual = pencil_residual(k_mat, m_mat, lambda, x);
    history.push_back({iter, lambda, dlambda, dstate});

    if (iter > 1 && std::abs(dlambda) <= config.tol_lambda * std::max(1.0, std::abs(lambda)) &&
        dstate <= config.tol_state && residual <= config.tol_residual) {
      return finalize(lambda, std::move(x), iter, residual, std::move(history));
    }

    EigenPair pair;
    try {
      pair = smallest_eigenpair_prefactored(solver, k_mat, m_mat, config.inner_tol,
                                            config.inner_max_iters, x);
    } catch (const EigenSolveError& err) {
      throw ScfError(std::string("scf_solve: inner eigensolver failed: ") + err.what(),
                     history);
    }
    if (pair.x.dot(m_mat * x) < 0.0) {
      pair.x = -pair.x;
    }

    // Damping control: halve on oscillation, grow slowly when steady.
    if (config.adaptive_damping && iter > 2) {
      if (dlambda * dlambda_prev < 0.0) {
        if (++sign_flips >= 2) {
          t = std::max(0.5 * t, 1.0 / 64.0);
          sign_flips = 0;
          steady = 0;
        }
      } else if (++steady >= 4) {
        t = std::min(1.5 * t, 1.0);
        steady = 0;
      }
    }
    dlambda_prev = dlambda;

    Eigen::VectorXd x_next = (1.0 - t) * x + t * pair.x;
    const double norm2 = x_next.dot(m_mat * x_next);
    x_next /= std::sqrt(norm2);

    const Eigen::VectorXd diff = x_next - x;
    dstate = std::sqrt(diff.dot(m_mat * diff));
    lambda_prev = lambda;
    x = std::move(x_next);
  }

  throw ScfError("scf_solve: no convergence within max_iters", history);
}

void write_history_csv(const GroundState& state, const std::string& path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_history_csv: cannot open " + path);
  }
  out << "iteration,lambda,dlambda,dstate\n";
  out.precision(17);
  for (const auto& it : state.history) {
    out << it.iter << "," << it.lambda << "," << it.dlambda << "," << it.dstate
        << "\n";
  }
}

}  // namespace wgpe
