#include "wgpe/quadrature.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace wgpe;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("degree 1 is the centroid rule")
{
  const QuadRule rule = tri_quadrature(1);
  REQUIRE(rule.size() == 1);
  CHECK(rule.points(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rule.points(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // Mapped weight equals the triangle area.
  const MappedQuad mq = map_to_triangle(rule, {0, 0}, {2, 0}, {0, 3});
  CHECK(mq.weights.sum() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("triangle rules integrate all monomials exactly")
{
  for (int d = 1; d <= 20; ++d) {
    const QuadRule rule = tri_quadrature(d);
    CHECK(rule.degree >= d);
    CHECK(std::abs(rule.weights.sum() - 0.5) <= 1e-13 * 0.5);
    for (int a = 0; a + 0 <= rule.degree; ++a) {
      for (int b = 0; a + b <= rule.degree; ++b) {
        double quad = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          quad += rule.weights[q] * std::pow(rule.points(q, 0), a) *
                  std::pow(rule.points(q, 1), b);
        }
        const double exact = oracles::ref_triangle_monomial(a, b);
        CHECK_MESSAGE(std::abs(quad - exact) <= 1e-13 * std::max(1.0, std::abs(exact)),
                      "degree ", d, " monomial x^", a, " y^", b);
      }
    }
  }
}

TEST_CASE("frozen reference values")
{
  // Oracle a! b! / (a+b+2)!: x^2 -> 1/12, x^4 y^4 -> 1/6300.
  CHECK(oracles::ref_triangle_monomial(2, 0) == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(oracles::ref_triangle_monomial(4, 4) == doctest::Approx(1.0 / 6300).epsilon(1e-15));

  const QuadRule d2 = tri_quadrature(2);
  double ix2 = 0.0;
  for (int q = 0; q < d2.size(); ++q) {
    ix2 += d2.weights[q] * d2.points(q, 0) * d2.points(q, 0);
  }
  CHECK(ix2 == doctest::Approx(1.0 / 12).epsilon(1e-14));

  const QuadRule d8 = tri_quadrature(8);
  double ix4y4 = 0.0;
  for (int q = 0; q < d8.size(); ++q) {
    ix4y4 += d8.weights[q] * std::pow(d8.points(q, 0), 4) * std::pow(d8.points(q, 1), 4);
  }
  CHECK(ix4y4 == doctest::Approx(1.0 / 6300).epsilon(1e-13));
}

TEST_CASE("assembly-degree rules have positive interior points")
{
  // The density term is sampled pointwise, so the default rules (4 for k=1,
  // 8 for k=2) and the over-integration rule (12) must be positive.
  for (int d : {2, 4, 5, 6, 8, 9, 10, 12}) {
    const QuadRule rule = tri_quadrature(d);
    for (int q = 0; q < rule.size(); ++q) {
      CHECK(rule.weights[q] > 0.0);
      CHECK(rule.points(q, 0) >= 0.0);
      CHECK(rule.points(q, 1) >= 0.0);
      CHECK(rule.points(q, 0) + rule.points(q, 1) <= 1.0 + 1e-14);
    }
  }
}

TEST_CASE("unsupported triangle degrees throw")
{
  CHECK_THROWS_AS(tri_quadrature(0), std::invalid_argument);
  CHECK_THROWS_AS(tri_quadrature(21), std::invalid_argument);
}

TEST_CASE("edge rules")
{
  SUBCASE("unit segment constants") {
    const QuadRule rule = edge_quadrature(1);
    CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("cubic on the unit segment") {
    const QuadRule rule = edge_quadrature(3);
    const MappedQuad mq = map_to_segment(rule, {0, 0}, {1, 0});
    double ix3 = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      ix3 += mq.weights[q] * std::pow(mq.points(q, 0), 3);
    }
    CHECK(ix3 == doctest::Approx(0.25).epsilon(1e-14));
  }

  SUBCASE("quartic on a centered segment of length 2") {
    const QuadRule rule = edge_quadrature(5);
    const MappedQuad mq = map_to_segment(rule, {-1, 0}, {1, 0});
    double ix4 = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
      ix4 += mq.weights[q] * std::pow(mq.points(q, 0), 4);
    }
    CHECK(ix4 == doctest::Approx(0.4).epsilon(1e-14));
  }

  SUBCASE("exactness sweep") {
    for (int d = 0; d <= 20; ++d) {
      const QuadRule rule = edge_quadrature(d);
      CHECK(rule.degree >= d);
      for (int p = 0; p <= rule.degree; ++p) {
        double val = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          val += rule.weights[q] * std::pow(rule.points(q, 0), p);
        }
        CHECK(std::abs(val - 1.0 / (p + 1)) <= 1e-13);
      }
    }
  }
}

TEST_SUITE_END();
