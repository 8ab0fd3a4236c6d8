#pragma once

#include "catshield/core.hpp"

namespace catshield {

// Exponential factors shared by the quadratic Wigner overlaps:
//   m = exp(-2 f_x^2/v_x x0^2 - 2 f_p^2/v_p p0^2)      opposite-lobe cross
//   n = exp(-2 x0^2 - 2 p0^2)
//     + exp(-2 sigma_p/v_p x0^2 - 2 sigma_x/v_x p0^2)  fringe-fringe
//   l = exp(-[f_x^2/(2v_x) + f_p^2/(2v_p) + sigma_p/v_p] x0^2
//           -[f_x^2/(2v_x) + f_p^2/(2v_p) + sigma_x/v_x] p0^2)
//     * cos(x0 p0 (f_x^2/v_x - f_p^2/v_p))             lobe-fringe cross
// The cosine argument carries the difference of the axis ratios: the two
// lobe-fringe Gaussian integrals contribute opposite phases per axis, which
// also makes l reduce to exp(-x0^2-p0^2) for any pure squeeze.
struct HsFactors {
  double m = 0.0;
  double n = 0.0;
  double l = 0.0;
};

struct DistanceBreakdown {
  double purity_even = 0.0;
  double purity_odd = 0.0;
  double overlap = 0.0;
  double distance = 0.0;
  double m_factor = 0.0;
  double n_factor = 0.0;
  double l_factor = 0.0;
};

HsFactors hs_factors(double x0, double p0, const ChannelParams& ch);

// 2*pi*Integral W'^2 of the transformed cat. Equals 1 iff the output is pure
// (identity channel, or any pure squeeze).
double purity(const CatState& state, const ChannelParams& ch);

// 2*pi*Integral W'_even W'_odd between the two parities of the same
// amplitude. Requires (x0, p0) != (0, 0).
double overlap(double x0, double p0, const ChannelParams& ch);

// Squared Hilbert-Schmidt distance between the transformed even and odd
// cats, purity_even - 2*overlap + purity_odd, with the pieces it is built
// from. Bounded by (0, 2]; equals 2 exactly for the identity channel.
DistanceBreakdown hs_distance(double x0, double p0, const ChannelParams& ch);

}  // namespace catshield
