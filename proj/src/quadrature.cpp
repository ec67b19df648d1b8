#include "wgpe/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wgpe {

namespace {

struct RuleBuilder {
  std::vector<Vec2> pts;
  std::vector<double> wts;

  // Barycentric (l1,l2,l3) maps to reference coordinates (l2,l3).
  void centroid(double w)
  {
    pts.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    wts.push_back(w);
  }

  // Orbit of barycentric (a, a, 1-2a).
  void orbit3(double a, double w)
  {
    const double c = 1.0 - 2.0 * a;
    pts.emplace_back(a, c);
    wts.push_back(w);
    pts.emplace_back(c, a);
    wts.push_back(w);
    pts.emplace_back(a, a);
    wts.push_back(w);
  }

  // Orbit of barycentric (a, b, 1-a-b), all six permutations.
  void orbit6(double a, double b, double w)
  {
    const double c = 1.0 - a - b;
    const double xs[6] = {b, c, a, c, a, b};
    const double ys[6] = {c, b, c, a, b, a};
    for (int i = 0; i < 6; ++i) {
      pts.emplace_back(xs[i], ys[i]);
      wts.push_back(w);
    }
  }

  QuadRule finish(int degree) const
  {
    QuadRule rule;
    const int n = static_cast<int>(pts.size());
    rule.points.resize(n, 2);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
      rule.points.row(i) = pts[i].transpose();
      rule.weights[i] = wts[i];
    }
    rule.degree = degree;
    return rule;
  }
};

// Gauss nodes/weights for the Jacobi weight (1-t)^alpha (1+t)^beta on [-1,1],
// by eigen-decomposition of the symmetric tridiagonal recurrence matrix.
void gauss_jacobi(int n, double alpha, double beta, Eigen::VectorXd& nodes,
                  Eigen::VectorXd& weights)
{
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double apb = alpha + beta;
  for (int k = 0; k < n; ++k) {
    double a;
    if (k == 0) {
      a = (beta - alpha) / (apb + 2.0);
    } else {
      a = (beta * beta - alpha * alpha) /
          ((2.0 * k + apb) * (2.0 * k + apb + 2.0));
    }
    J(k, k) = a;
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (alpha + 1.0) * (beta + 1.0) /
           ((apb + 2.0) * (apb + 2.0) * (apb + 3.0));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + apb) /
           ((2.0 * k + apb) * (2.0 * k + apb) * (2.0 * k + apb + 1.0) *
            (2.0 * k + apb - 1.0));
    }
    const double b = std::sqrt(b2);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes = es.eigenvalues();

  // mu0 = integral of the weight over [-1,1]
  const double mu0 =
      std::pow(2.0, apb + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
      std::tgamma(apb + 2.0);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mu0 * v0 * v0;
  }
}

// Conical product rule: Gauss-Legendre in the collapsed direction times
// Gauss-Jacobi(1,0) in the other, exact to degree 2n-1 on the triangle.
QuadRule conical_rule(int degree)
{
  const int n = degree / 2 + 1;

  Eigen::VectorXd xg, wg, yj, wj;
  gauss_jacobi(n, 0.0, 0.0, xg, wg);   // Legendre
  gauss_jacobi(n, 1.0, 0.0, yj, wj);   // weight (1-t)

  QuadRule rule;
  rule.points.resize(n * n, 2);
  rule.weights.resize(n * n);
  int idx = 0;
  for (int j = 0; j < n; ++j) {
    const double y = 0.5 * (yj[j] + 1.0);
    const double vy = 0.25 * wj[j];
    for (int i = 0; i < n; ++i) {
      const double x = 0.5 * (xg[i] + 1.0);
      const double ux = 0.5 * wg[i];
      rule.points(idx, 0) = x * (1.0 - y);
      rule.points(idx, 1) = y;
      rule.weights[idx] = ux * vy;
      ++idx;
    }
  }
  rule.weights *= 0.5 / rule.weights.sum();
  rule.degree = 2 * n - 1;
  return rule;
}

}  // namespace

QuadRule tri_quadrature(int degree)
{
  if (degree < 1 || degree > 20) {
    throw std::invalid_argument("tri_quadrature: degree must be in [1, 20]");
  }

  RuleBuilder b;
  switch (degree) {
  case 1:
    b.centroid(0.5);
    return b.finish(1);
  case 2:
    b.orbit3(1.0 / 6.0, 1.0 / 6.0);
    return b.finish(2);
  case 3:
    b.centroid(-9.0 / 32.0);
    b.orbit3(0.2, 25.0 / 96.0);
    return b.finish(3);
  case 4:
    b.orbit3(0.44594849091596488631832925388305,
             0.5 * 0.22338158967801146569500700843312);
    b.orbit3(0.09157621350977074345957146340220,
             0.5 * 0.10995174365532186763832632490021);
    return b.finish(4);
  case 5:
    b.centroid(0.5 * 0.225);
    b.orbit3(0.47014206410511508977044120951345,
             0.5 * 0.13239415278850618073764938783315);
    b.orbit3(0.10128650732345633880098736191512,
             0.5 * 0.12593918054482715259568394550018);
    return b.finish(5);
  case 6:
    b.orbit3(0.24928674517091042129163855310702,
             0.5 * 0.11678627572637936602528961138558);
    b.orbit3(0.06308901449150222834033160287082,
             0.5 * 0.05084490637020681692093680910686);
    b.orbit6(0.31035245103378440541660773395655,
             0.63650249912139864723014259441205,
             0.5 * 0.08285107561837357519355345642044);
    return b.finish(6);
  case 7:
    b.centroid(0.5 * -0.149570044467670);
    b.orbit3(0.260345966079038, 0.5 * 0.175615257433204);
    b.orbit3(0.065130102902216, 0.5 * 0.053347235608839);
    b.orbit6(0.312865496004875, 0.638444188569809, 0.5 * 0.077113760890257);
    return b.finish(7);
  case 8:
    b.centroid(0.5 * 0.14431560767778716825109111048906);
    b.orbit3(0.17056930775176020662229350149146,
             0.5 * 0.10321737053471825028179155029212);
    b.orbit3(0.05054722831703097545842355059660,
             0.5 * 0.03245849762319808031092592834178);
    b.orbit3(0.45929258829272315602881551449417,
             0.5 * 0.09509163426728462479389610438858);
    b.orbit6(0.26311282963463811342178578628464,
             0.72849239295540428124100037917606,
             0.5 * 0.02723031417443499426484469007390);
    return b.finish(8);
  case 9:
    b.centroid(0.5 * 0.09713579628279609890744676309485);
    b.orbit3(0.48968251919873762778370692483619,
             0.5 * 0.03133470022713983234393199080984);
    b.orbit3(0.43708959149293663726993036443535,
             0.5 * 0.07782754100477543338465495857972);
    b.orbit3(0.18820353561903273024096128046733,
             0.5 * 0.07964773892720910288013526957424);
    b.orbit3(0.04472951339445297061024247196780,
             0.5 * 0.02557767565869810438673914467637);
    b.orbit6(0.22196298916076569567510252769319,
             0.74119859878449802069007987352342,
             0.5 * 0.04328353937728937728937728937729);
    return b.finish(9);
  default:
    return conical_rule(degree);
  }
}

QuadRule edge_quadrature(int degree)
{
  if (degree < 0) {
    throw std::invalid_argument("edge_quadrature: degree must be >= 0");
  }
  const int n = degree / 2 + 1;
  Eigen::VectorXd x, w;
  gauss_jacobi(n, 0.0, 0.0, x, w);

  QuadRule rule;
  rule.points.resize(n, 1);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points(i, 0) = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  rule.weights /= rule.weights.sum();
  rule.degree = 2 * n - 1;
  return rule;
}

MappedQuad map_to_triangle(const QuadRule& rule, const Vec2& p0, const Vec2& p1,
                           const Vec2& p2)
{
  const double two_area = std::abs((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                                   (p2.x() - p0.x()) * (p1.y() - p0.y()));
  MappedQuad mq;
  const int n = rule.size();
  mq.points.resize(n, 2);
  mq.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double xi = rule.points(i, 0);
    const double eta = rule.points(i, 1);
    mq.points.row(i) = (p0 + xi * (p1 - p0) + eta * (p2 - p0)).transpose();
    mq.weights[i] = rule.weights[i] * two_area;
  }
  return mq;
}

MappedQuad map_to_segment(const QuadRule& rule, const Vec2& a, const Vec2& b)
{
  const double len = (b - a).norm();
  MappedQuad mq;
  const int n = rule.size();
  mq.points.resize(n, 2);
  mq.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = rule.points(i, 0);
    mq.points.row(i) = (a + t * (b - a)).transpose();
    mq.weights[i] = rule.weights[i] * len;
  }
  return mq;
}

}  // namespace wgpe
