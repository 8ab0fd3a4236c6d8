#pragma once

#include "catshield/core.hpp"

namespace catshield {

// Transmittance window inside which an eta/v loss segment can keep the
// central negativity of an odd cat alive (for some pre-squeeze). The window
// is exact at v = v_max and conservative for smaller environment variances.
struct FeasibleRegion {
  double eta_min = 0.0;
  double eta_max = 1.0;
  double v_max = 0.0;

  bool empty() const { return !(eta_min < eta_max); }
};

// Wigner value of the odd cat at the phase-space origin after the channel.
// Negative iff the fringe still beats the lobes there. Odd parity only.
double central_negativity(const CatState& state, const ChannelParams& ch);

// f_x^2 f_p^2 - sigma_x sigma_p. Positive iff some cat amplitude gives a
// negative origin value; invariant under pure squeezing on either side.
double negativity_margin(const ChannelParams& ch);

// margin > 0 (the boundary counts as impossible)
bool negativity_possible(const ChannelParams& ch);

// Window of transmittances for an environment of symmetric variance v > 0:
// eta in (2v/(1+2v), 1).
FeasibleRegion feasible_region(double v);

// Largest environment variance tolerable at transmittance eta in (0, 1):
// v < eta / (2(1-eta)).
double feasible_v(double eta);

}  // namespace catshield
