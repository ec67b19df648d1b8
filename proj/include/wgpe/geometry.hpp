// Elementary geometric types shared by the mesh and discretization layers.

#ifndef WGPE_GEOMETRY_HPP
#define WGPE_GEOMETRY_HPP

#include <Eigen/Dense>

#include <stdexcept>

namespace wgpe {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Axis-aligned rectangle (xmin, xmax) x (ymin, ymax).
struct Rect {
  double xmin = 0.0;
  double xmax = 1.0;
  double ymin = 0.0;
  double ymax = 1.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }

  bool contains(const Vec2& p, double tol = 1e-12) const
  {
    return p.x() >= xmin - tol && p.x() <= xmax + tol && p.y() >= ymin - tol &&
           p.y() <= ymax + tol;
  }

  /// Throws std::invalid_argument unless the rectangle has positive area.
  void validate() const
  {
    if (!(xmax > xmin) || !(ymax > ymin)) {
      throw std::invalid_argument("Rect: rectangle must have positive area");
    }
  }

  static Rect square(double a, double b) { return Rect{a, b, a, b}; }
};

}  // namespace wgpe

#endif
