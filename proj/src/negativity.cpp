#include "catshield/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace catshield {

double central_negativity(const CatState& state, const ChannelParams& ch) {
  if (state.parity != Parity::Odd)
    throw std::invalid_argument(
        "central negativity is defined for odd-parity cat states");
  check_state(state);
  check_channel(ch);
  const double vx = ch.v_x();
  const double vp = ch.v_p();
  // Origin value of the transformed odd cat: attenuated lobes minus the
  // noise-damped fringe.
  const double lobes = std::exp(-ch.f_x * ch.f_x * state.x0 * state.x0 / vx -
                                ch.f_p * ch.f_p * state.p0 * state.p0 / vp);
  const double fringe = std::exp(-ch.sigma_x * state.p0 * state.p0 / vx -
                                 ch.sigma_p * state.x0 * state.x0 / vp);
  return (lobes - fringe) / (std::numbers::pi * std::sqrt(vx * vp) *
                             -std::expm1(-state.magnitude_sq()));
}

double negativity_margin(const ChannelParams& ch) {
  check_channel(ch);
  const double gain = ch.f_x * ch.f_x * ch.f_p * ch.f_p;
  const double noise = ch.sigma_x * ch.sigma_p;
  const double margin = gain - noise;
  // The condition is an open inequality, so a difference inside the rounding
  // band of the two products counts as the boundary (margin zero). Keeps
  // channels built from exact boundary parameters on the impossible side.
  const double band =
      16.0 * std::numeric_limits<double>::epsilon() * std::max(gain, noise);
  return std::abs(margin) <= band ? 0.0 : margin;
}

bool negativity_possible(const ChannelParams& ch) {
  return negativity_margin(ch) > 0.0;
}

FeasibleRegion feasible_region(double v) {
  if (!std::isfinite(v) || !(v > 0.0))
    throw std::invalid_argument("environment variance must be positive");
  return {2.0 * v / (1.0 + 2.0 * v), 1.0, v};
}

double feasible_v(double eta) {
  if (!std::isfinite(eta) || !(eta > 0.0) || !(eta < 1.0))
    throw std::invalid_argument("transmittance must lie in (0, 1)");
  return eta / (2.0 * (1.0 - eta));
}

}  // namespace catshield
