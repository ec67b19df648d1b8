// Two-sided eigenvalue post-processing: a lower bound from the WG (k=1)
// eigenvalue and an upper bound from the P1 eigenvalue, both corrected with
// the quartic norm of the P2 solution.

#ifndef WGPE_BOUNDS_HPP
#define WGPE_BOUNDS_HPP

#include "wgpe/eigensolve.hpp"

namespace wgpe {

struct BoundReport {
  double lambda_wg = 0.0;   ///< WG k=1 eigenvalue
  double lambda_p1 = 0.0;
  double lambda_p2 = 0.0;
  double l4_wg = 0.0;       ///< fourth powers of the L4 norms
  double l4_p1 = 0.0;
  double l4_p2 = 0.0;
  double energy_wg = 0.0;
  double energy_p1 = 0.0;
  double energy_p2 = 0.0;
  double lower = 0.0;       ///< post-processed lower bound
  double upper = 0.0;       ///< post-processed upper bound
  double gap = 0.0;         ///< upper - lower
};

/// lambda_low = lambda_wg + (beta/2)(||u_p2||_L4^4 - ||u_wg||_L4^4).
/// Throws std::invalid_argument if the states were solved with different beta.
double lower_bound(const GroundState& wg_k1, const GroundState& p2);

/// lambda_up = lambda_p1 + (beta/2)(||u_p2||_L4^4 - ||u_p1||_L4^4).
double upper_bound(const GroundState& p1, const GroundState& p2);

/// (E_low, E_high) = (WG discrete energy, conforming energy); the WG energy
/// approximates the true energy from below, the conforming one from above.
std::pair<double, double> energy_bracket(const GroundState& wg,
                                         const GroundState& conforming);

BoundReport bound_report(const GroundState& wg_k1, const GroundState& p1,
                         const GroundState& p2);

}  // namespace wgpe

#endif
