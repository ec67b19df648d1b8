#include "wgpe/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wgpe {

double NonlinearTerm::f(double t) const
{
  if (t < 0.0) {
    throw std::domain_error("NonlinearTerm::f: t must be >= 0");
  }
  return beta * t;
}

double NonlinearTerm::F(double t) const
{
  if (t < 0.0) {
    throw std::domain_error("NonlinearTerm::F: t must be >= 0");
  }
  return 0.5 * beta * t * t;
}

Potential Potential::constant(double c)
{
  if (c < 0.0) {
    throw std::invalid_argument("Potential::constant: c must be >= 0");
  }
  Potential p;
  p.kind_ = Kind::Constant;
  p.c_ = c;
  return p;
}

Potential Potential::harmonic()
{
  Potential p;
  p.kind_ = Kind::Harmonic;
  return p;
}

Potential Potential::harmonic_plus_gaussian(double amplitude, double x0, double y0)
{
  if (amplitude < 0.0) {
    throw std::invalid_argument(
        "Potential::harmonic_plus_gaussian: amplitude must be >= 0");
  }
  Potential p;
  p.kind_ = Kind::HarmonicPlusGaussian;
  p.amp_ = amplitude;
  p.center_ = Vec2(x0, y0);
  return p;
}

double Potential::operator()(const Vec2& p) const
{
  switch (kind_) {
  case Kind::Constant:
    return c_;
  case Kind::Harmonic:
    return p.squaredNorm();
  case Kind::HarmonicPlusGaussian: {
    const Vec2 d = p - center_;
    return p.squaredNorm() + amp_ * std::exp(-d.squaredNorm());
  }
  }
  return 0.0;
}

std::string Potential::describe() const
{
  std::ostringstream os;
  switch (kind_) {
  case Kind::Constant:
    os << "V=" << c_;
    break;
  case Kind::Harmonic:
    os << "V=x^2+y^2";
    break;
  case Kind::HarmonicPlusGaussian:
    os << "V=x^2+y^2+" << amp_ << "*exp(-(x-" << center_.x() << ")^2-(y-"
       << center_.y() << ")^2)";
    break;
  }
  return os.str();
}

void ProblemSpec::validate() const
{
  domain.validate();
  if (term.beta < 0.0) {
    throw std::invalid_argument("ProblemSpec: beta must be >= 0 (defocusing)");
  }
  if (!potential) {
    throw std::invalid_argument("ProblemSpec: potential is not set");
  }
}

std::vector<double> evaluate_potential(const ProblemSpec& spec,
                                       const std::vector<Vec2>& points)
{
  std::vector<double> values;
  values.reserve(points.size());
  for (const Vec2& p : points) {
    if (!spec.domain.contains(p)) {
      throw std::domain_error("evaluate_potential: point outside domain closure");
    }
    const double v = spec.potential(p);
    if (v < 0.0) {
      throw std::domain_error("evaluate_potential: negative potential value");
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace wgpe
