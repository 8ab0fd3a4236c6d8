#include "catshield/distance.hpp"

#include <cmath>

namespace catshield {

namespace {

void check_magnitude(double x0, double p0) {
  if (!std::isfinite(x0) || !std::isfinite(p0))
    throw std::invalid_argument("cat state displacement must be finite");
}

}  // namespace

HsFactors hs_factors(double x0, double p0, const ChannelParams& ch) {
  check_magnitude(x0, p0);
  check_channel(ch);
  const double vx = ch.v_x();
  const double vp = ch.v_p();
  const double rx = ch.f_x * ch.f_x / vx;
  const double rp = ch.f_p * ch.f_p / vp;
  const double x2 = x0 * x0;
  const double p2 = p0 * p0;
  const double m = std::exp(-2.0 * rx * x2 - 2.0 * rp * p2);
  const double n = std::exp(-2.0 * x2 - 2.0 * p2) +
                   std::exp(-2.0 * ch.sigma_x / vx * p2 -
                            2.0 * ch.sigma_p / vp * x2);
  const double half = 0.5 * (rx + rp);
  const double l = std::exp(-(half + ch.sigma_p / vp) * x2 -
                            (half + ch.sigma_x / vx) * p2) *
                   std::cos(x0 * p0 * (rx - rp));
  return {m, n, l};
}

double purity(const CatState& state, const ChannelParams& ch) {
  check_state(state);
  check_channel(ch);
  const HsFactors fac = hs_factors(state.x0, state.p0, ch);
  const double scale = 1.0 / std::sqrt(ch.v_x() * ch.v_p());
  const double mag = state.magnitude_sq();
  const double sign = (state.parity == Parity::Even) ? 1.0 : -1.0;
  const double norm = (state.parity == Parity::Even)
                          ? 1.0 + std::exp(-mag)
                          : -std::expm1(-mag);
  return scale * (1.0 + fac.m + fac.n + sign * 4.0 * fac.l) /
         (2.0 * norm * norm);
}

double overlap(double x0, double p0, const ChannelParams& ch) {
  check_magnitude(x0, p0);
  check_channel(ch);
  const double mag = x0 * x0 + p0 * p0;
  if (mag == 0.0)
    throw std::invalid_argument(
        "overlap needs a nonzero displacement (the odd cat is undefined "
        "at zero)");
  const HsFactors fac = hs_factors(x0, p0, ch);
  const double scale = 1.0 / std::sqrt(ch.v_x() * ch.v_p());
  return scale * (1.0 + fac.m - fac.n) / (2.0 * -std::expm1(-2.0 * mag));
}

DistanceBreakdown hs_distance(double x0, double p0, const ChannelParams& ch) {
  check_magnitude(x0, p0);
  if (x0 == 0.0 && p0 == 0.0)
    throw std::invalid_argument(
        "distance needs a nonzero displacement (the odd cat is undefined "
        "at zero)");
  const HsFactors fac = hs_factors(x0, p0, ch);
  const double pe = purity({x0, p0, Parity::Even}, ch);
  const double po = purity({x0, p0, Parity::Odd}, ch);
  const double o = overlap(x0, p0, ch);
  return {pe, po, o, pe - 2.0 * o + po, fac.m, fac.n, fac.l};
}

}  // namespace catshield
