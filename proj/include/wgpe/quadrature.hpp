// Quadrature rules on the reference triangle {(0,0),(1,0),(0,1)} and the
// reference segment [0,1], plus affine mappings onto mesh entities.

#ifndef WGPE_QUADRATURE_HPP
#define WGPE_QUADRATURE_HPP

#include "wgpe/geometry.hpp"

#include <Eigen/Dense>

namespace wgpe {

/// A positive-measure quadrature rule on a reference element.
/// For triangles, `points` is n x 2 and weights sum to 1/2 (reference area);
/// for segments, `points` is n x 1 on [0,1] and weights sum to 1.
struct QuadRule {
  Eigen::MatrixXd points;
  Eigen::VectorXd weights;
  int degree = 0;  ///< all polynomials up to this total degree integrate exactly

  int size() const { return static_cast<int>(weights.size()); }
};

/// Symmetric rule on the reference triangle, exact at least to `degree`.
/// Degrees 1..9 use hardcoded symmetric Gauss tables; 10..20 use a conical
/// product rule (positive weights, interior points).
/// Throws std::invalid_argument outside [1, 20].
QuadRule tri_quadrature(int degree);

/// Gauss-Legendre rule on [0,1], exact at least to `degree` (degree >= 0).
QuadRule edge_quadrature(int degree);

/// Rule mapped to a physical element; weights carry the measure.
struct MappedQuad {
  Eigen::MatrixX2d points;   // physical coordinates
  Eigen::VectorXd weights;   // sum = |T| (triangle) or |e| (segment)
};

/// Maps a reference-triangle rule onto the triangle (p0, p1, p2).
MappedQuad map_to_triangle(const QuadRule& rule, const Vec2& p0, const Vec2& p1,
                           const Vec2& p2);

/// Maps a reference-segment rule onto the segment [a, b].
MappedQuad map_to_segment(const QuadRule& rule, const Vec2& a, const Vec2& b);

}  // namespace wgpe

#endif
