#include "wgpe/basis.hpp"

#include "wgpe/quadrature.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace wgpe;

TEST_SUITE_BEGIN("basis");

TEST_CASE("constant function and low-order gradients")
{
  const TriBasis basis(2, Vec2(0.3, 0.7), 1.5);
  CHECK(basis.dim() == 6);
  CHECK(basis.value(0, Vec2(42.0, -3.0)) == 1.0);

  // Basis 1 is (x - cx)/h: gradient (1/h, 0).
  const Vec2 g = basis.gradient(1, Vec2(0.1, 0.2));
  CHECK(g.x() == doctest::Approx(1.0 / 1.5).epsilon(1e-15));
  CHECK(g.y() == 0.0);
}

TEST_CASE("gradients match central finite differences")
{
  const TriBasis basis(2, Vec2(-0.2, 0.4), 0.8);
  const double step = 1e-6;
  for (int i = 0; i < basis.dim(); ++i) {
    for (const Vec2& x : {Vec2(0.0, 0.0), Vec2(-0.5, 0.3), Vec2(0.24, -0.11)}) {
      const Vec2 exact = basis.gradient(i, x);
      const Vec2 fd = oracles::fd_gradient(
          [&](const Vec2& p) { return basis.value(i, p); }, x, step);
      CHECK(std::abs(exact.x() - fd.x()) <= 1e-6 * std::max(1.0, std::abs(exact.x())));
      CHECK(std::abs(exact.y() - fd.y()) <= 1e-6 * std::max(1.0, std::abs(exact.y())));
    }
  }
}

TEST_CASE("local mass matrices are SPD with moderate conditioning")
{
  const auto mesh = TriMesh::uniform(Rect::square(-8, 8), 4);
  const QuadRule rule = tri_quadrature(8);
  for (int k : {1, 2}) {
    for (int t : {0, 1, 7}) {
      const TriBasis basis = TriBasis::for_element(mesh, t, k);
      const auto& tri = mesh.triangle(t);
      const MappedQuad quad = map_to_triangle(rule, mesh.vertex(tri[0]),
                                              mesh.vertex(tri[1]), mesh.vertex(tri[2]));
      const Eigen::MatrixXd phi = basis.values(quad.points);
      const Eigen::MatrixXd mass =
          phi.transpose() * quad.weights.asDiagonal() * phi;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mass);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
      CHECK(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff() < 1e4);
    }
  }
}

TEST_CASE("edge basis in the shared arclength parametrization")
{
  const auto mesh = TriMesh::uniform(Rect{0, 1, 0, 1}, 1);
  // Edge 0 connects vertices 0 and 1 (the bottom edge).
  const EdgeBasis basis = EdgeBasis::for_edge(mesh, 0, 1);
  CHECK(basis.dim() == 2);
  CHECK(basis.value(0, Vec2(0.3, 0.0)) == 1.0);
  CHECK(basis.value(1, Vec2(0.5, 0.0)) == doctest::Approx(0.0));
  CHECK(basis.value(1, Vec2(1.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(basis.value(1, Vec2(0.0, 0.0)) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("batch evaluation agrees with pointwise")
{
  const TriBasis basis(2, Vec2(0.1, 0.1), 2.0);
  Eigen::MatrixX2d pts(3, 2);
  pts << 0.0, 0.0, 0.5, -0.2, 1.0, 1.0;
  const Eigen::MatrixXd vals = basis.values(pts);
  Eigen::MatrixXd gx, gy;
  basis.gradients(pts, gx, gy);
  for (int q = 0; q < 3; ++q) {
    for (int i = 0; i < basis.dim(); ++i) {
      const Vec2 x = pts.row(q).transpose();
      CHECK(vals(q, i) == basis.value(i, x));
      CHECK(gx(q, i) == basis.gradient(i, x).x());
      CHECK(gy(q, i) == basis.gradient(i, x).y());
    }
  }
}

TEST_SUITE_END();
