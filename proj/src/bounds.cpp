#include "wgpe/bounds.hpp"

#include <stdexcept>

namespace wgpe {

namespace {

void check_same_problem(const GroundState& a, const GroundState& b)
{
  if (a.beta != b.beta) {
    throw std::invalid_argument("bounds: states solved with different beta");
  }
}

}  // namespace

double lower_bound(const GroundState& wg_k1, const GroundState& p2)
{
  check_same_problem(wg_k1, p2);
  return wg_k1.lambda + 0.5 * wg_k1.beta * (p2.l4norm4 - wg_k1.l4norm4);
}

double upper_bound(const GroundState& p1, const GroundState& p2)
{
  check_same_problem(p1, p2);
  return p1.lambda + 0.5 * p1.beta * (p2.l4norm4 - p1.l4norm4);
}

std::pair<double, double> energy_bracket(const GroundState& wg,
                                         const GroundState& conforming)
{
  check_same_problem(wg, conforming);
  return {wg.energy, conforming.energy};
}

BoundReport bound_report(const GroundState& wg_k1, const GroundState& p1,
                         const GroundState& p2)
{
  BoundReport r;
  r.lambda_wg = wg_k1.lambda;
  r.lambda_p1 = p1.lambda;
  r.lambda_p2 = p2.lambda;
  r.l4_wg = wg_k1.l4norm4;
  r.l4_p1 = p1.l4norm4;
  r.l4_p2 = p2.l4norm4;
  r.energy_wg = wg_k1.energy;
  r.energy_p1 = p1.energy;
  r.energy_p2 = p2.energy;
  r.lower = lower_bound(wg_k1, p2);
  r.upper = upper_bound(p1, p2);
  r.gap = r.upper - r.lower;
  return r;
}

}  // namespace wgpe
