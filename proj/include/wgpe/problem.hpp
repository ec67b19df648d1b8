// The continuous variational problem: domain, diffusion coefficient,
// confining potential, and the repulsive nonlinearity. Potentials are
// black-box evaluators sampled at quadrature points.

#ifndef WGPE_PROBLEM_HPP
#define WGPE_PROBLEM_HPP

#include "wgpe/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wgpe {

/// Defocusing power nonlinearity F(t) = (beta/2) t^2, f(t) = F'(t) = beta t.
/// beta = 0 degenerates to a linear eigenvalue problem.
struct NonlinearTerm {
  double beta = 0.0;

  /// f(t) = beta t for t >= 0; throws std::domain_error for t < 0.
  double f(double t) const;
  /// F(t) = (beta/2) t^2 for t >= 0; throws std::domain_error for t < 0.
  double F(double t) const;

  bool linear() const { return beta == 0.0; }
};

/// Built-in potential catalog.
class Potential {
public:
  enum class Kind { Constant, Harmonic, HarmonicPlusGaussian };

  static Potential constant(double c);
  static Potential harmonic();
  static Potential harmonic_plus_gaussian(double amplitude, double x0, double y0);

  double operator()(const Vec2& p) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

private:
  Kind kind_ = Kind::Constant;
  double c_ = 0.0;
  double amp_ = 0.0;
  Vec2 center_ = Vec2::Zero();
};

/// Full problem: minimize E(v) = 1/2 (A grad v, grad v) + 1/2 (V v, v)
/// + 1/2 int F(v^2) over H^1_0 functions with unit L^2 norm.
struct ProblemSpec {
  Rect domain;
  std::function<double(const Vec2&)> potential;
  NonlinearTerm term;
  /// Diffusion coefficient field; empty means the identity matrix.
  std::function<Mat2(const Vec2&)> diffusion;
  std::string name = "custom";

  bool identity_diffusion() const { return !diffusion; }
  Mat2 diffusion_at(const Vec2& p) const
  {
    return diffusion ? diffusion(p) : Mat2::Identity();
  }

  /// Throws std::invalid_argument on a degenerate domain or beta < 0.
  void validate() const;
};

/// Evaluates the potential at the given points. Throws std::domain_error if a
/// point lies outside the domain closure or the potential is negative there.
std::vector<double> evaluate_potential(const ProblemSpec& spec,
                                       const std::vector<Vec2>& points);

}  // namespace wgpe

#endif
