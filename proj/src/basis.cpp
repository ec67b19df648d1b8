#include "wgpe/basis.hpp"

#include <stdexcept>

namespace wgpe {

namespace {

double ipow(double x, int n)
{
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r *= x;
  }
  return r;
}

}  // namespace

TriBasis::TriBasis(int degree, const Vec2& center, double scale)
    : degree_(degree), center_(center), scale_(scale)
{
  if (degree < 0) {
    throw std::invalid_argument("TriBasis: degree must be >= 0");
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("TriBasis: scale must be positive");
  }
  powers_.reserve(tri_poly_dim(degree));
  for (int l = 0; l <= degree; ++l) {
    for (int a = l; a >= 0; --a) {
      powers_.push_back({a, l - a});
    }
  }
}

double TriBasis::value(int i, const Vec2& x) const
{
  const double xi = (x.x() - center_.x()) / scale_;
  const double eta = (x.y() - center_.y()) / scale_;
  const auto& p = powers_[i];
  return ipow(xi, p[0]) * ipow(eta, p[1]);
}

Vec2 TriBasis::gradient(int i, const Vec2& x) const
{
  const double xi = (x.x() - center_.x()) / scale_;
  const double eta = (x.y() - center_.y()) / scale_;
  const auto& p = powers_[i];
  const double gx = (p[0] > 0) ? p[0] * ipow(xi, p[0] - 1) * ipow(eta, p[1]) / scale_ : 0.0;
  const double gy = (p[1] > 0) ? p[1] * ipow(xi, p[0]) * ipow(eta, p[1] - 1) / scale_ : 0.0;
  return Vec2(gx, gy);
}

Eigen::MatrixXd TriBasis::values(const Eigen::MatrixX2d& pts) const
{
  const int n = static_cast<int>(pts.rows());
  Eigen::MatrixXd out(n, dim());
  for (int q = 0; q < n; ++q) {
    const Vec2 x = pts.row(q).transpose();
    for (int i = 0; i < dim(); ++i) {
      out(q, i) = value(i, x);
    }
  }
  return out;
}

void TriBasis::gradients(const Eigen::MatrixX2d& pts, Eigen::MatrixXd& gx,
                         Eigen::MatrixXd& gy) const
{
  const int n = static_cast<int>(pts.rows());
  gx.resize(n, dim());
  gy.resize(n, dim());
  for (int q = 0; q < n; ++q) {
    const Vec2 x = pts.row(q).transpose();
    for (int i = 0; i < dim(); ++i) {
      const Vec2 g = gradient(i, x);
      gx(q, i) = g.x();
      gy(q, i) = g.y();
    }
  }
}

EdgeBasis::EdgeBasis(int degree, const Vec2& midpoint, const Vec2& tangent,
                     double length)
    : degree_(degree), midpoint_(midpoint), tangent_(tangent), length_(length)
{
  if (degree < 0) {
    throw std::invalid_argument("EdgeBasis: degree must be >= 0");
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("EdgeBasis: length must be positive");
  }
}

double EdgeBasis::value(int i, const Vec2& x) const
{
  const double s = (x - midpoint_).dot(tangent_) / length_;
  return ipow(s, i);
}

Eigen::MatrixXd EdgeBasis::values(const Eigen::MatrixX2d& pts) const
{
  const int n = static_cast<int>(pts.rows());
  Eigen::MatrixXd out(n, dim());
  for (int q = 0; q < n; ++q) {
    const Vec2 x = pts.row(q).transpose();
    for (int i = 0; i < dim(); ++i) {
      out(q, i) = value(i, x);
    }
  }
  return out;
}

}  // namespace wgpe
