#include "catshield/channel.hpp"

#include <cmath>

namespace catshield {

void check_stage(const LossyStage& stage) {
  if (!std::isfinite(stage.eta) || !(stage.eta > 0.0) || !(stage.eta <= 1.0))
    throw std::invalid_argument("stage transmittance must lie in (0, 1]");
  if (!std::isfinite(stage.v) || !(stage.v >= 0.5))
    throw std::invalid_argument(
        "environment variance must be at least the vacuum value 0.5");
  if (!std::isfinite(stage.gamma) || !std::isfinite(stage.gamma_t))
    throw std::invalid_argument("squeezing rates must be finite");
}

ChannelParams lossy_channel(const LossyStage& stage) {
  check_stage(stage);
  const double root_eta = std::sqrt(stage.eta);
  const double env = 2.0 * (1.0 - stage.eta) * stage.v;
  return {
      root_eta * std::exp(-stage.gamma),
      root_eta * std::exp(stage.gamma),
      env * std::exp(-2.0 * stage.gamma_t),
      env * std::exp(2.0 * stage.gamma_t),
  };
}

ChannelParams squeeze_channel(double rate) {
  if (!std::isfinite(rate))
    throw std::invalid_argument("squeezing rate must be finite");
  return {std::exp(-rate), std::exp(rate), 0.0, 0.0};
}

ChannelParams concatenate(const ChannelParams& first,
                          const ChannelParams& second) {
  check_channel(first);
  check_channel(second);
  return {
      second.f_x * first.f_x,
      second.f_p * first.f_p,
      second.f_x * second.f_x * first.sigma_x + second.sigma_x,
      second.f_p * second.f_p * first.sigma_p + second.sigma_p,
  };
}

ChannelParams composite_channel(const CompositeSpec& spec) {
  if (spec.stages.empty())
    throw std::invalid_argument("composite spec needs at least one stage");
  ChannelParams params = lossy_channel(spec.stages.front());
  for (std::size_t k = 1; k < spec.stages.size(); ++k)
    params = concatenate(params, lossy_channel(spec.stages[k]));
  return params;
}

EffectiveChannel effective_single(const CompositeSpec& spec,
                                  double mid_squeeze) {
  if (spec.stages.size() != 2)
    throw std::invalid_argument(
        "effective reduction is defined for exactly two stages");
  const LossyStage& s1 = spec.stages[0];
  const LossyStage& s2 = spec.stages[1];
  check_stage(s1);
  check_stage(s2);
  // The reduction holds when the mid squeeze re-aligns stage 2 with the
  // asymmetry frame of stage 1's environment.
  const double matched = s2.gamma_t - s1.gamma_t;
  if (!std::isfinite(mid_squeeze) || std::abs(mid_squeeze - matched) > 1e-9)
    throw std::invalid_argument(
        "mid squeeze must equal the environment asymmetry difference");
  const double eta_e = s1.eta * s2.eta;
  if (!(eta_e < 1.0))
    throw std::invalid_argument(
        "effective reduction requires some loss (eta1*eta2 < 1)");
  const double v_e =
      ((1.0 - s2.eta) * s2.v + (1.0 - s1.eta) * s2.eta * s1.v) / (1.0 - eta_e);
  return {eta_e, v_e};
}

ClassicalityReport classicality_check(double v, double gamma_t) {
  if (!std::isfinite(v) || !(v >= 0.5))
    throw std::invalid_argument(
        "environment variance must be at least the vacuum value 0.5");
  if (!std::isfinite(gamma_t))
    throw std::invalid_argument("squeezing rate must be finite");
  // Classical while the squeezed quadrature stays at or above vacuum.
  const bool classical = std::exp(-2.0 * std::abs(gamma_t)) * 2.0 * v >= 1.0;
  return {classical, 0.5 * std::log(2.0 * v)};
}

}  // namespace catshield
