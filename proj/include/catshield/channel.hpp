#pragma once

#include <vector>

#include "catshield/core.hpp"

namespace catshield {

// One transmission segment: a pre-squeeze of rate gamma on the signal,
// then a beam splitter of transmittance eta that mixes in an environment
// of symmetric variance v (0.5 = vacuum) squeezed by rate gamma_t.
struct LossyStage {
  double eta = 1.0;
  double gamma = 0.0;
  double v = 0.5;
  double gamma_t = 0.0;
};

// Ordered sequence of stages; stages[0] acts first.
struct CompositeSpec {
  std::vector<LossyStage> stages;
};

struct ClassicalityReport {
  bool classical = true;
  // largest |gamma_t| keeping both environment quadratures at or above vacuum
  double gamma_t_max = 0.0;
};

struct EffectiveChannel {
  double eta_e = 1.0;
  double v_e = 0.5;
};

// eta in (0, 1], v >= 0.5, rates finite; throws std::invalid_argument.
void check_stage(const LossyStage& stage);

// Kernel coefficients of a single stage.
ChannelParams lossy_channel(const LossyStage& stage);

// Noiseless squeeze by rate (nats): gains (e^-rate, e^+rate), no added noise.
ChannelParams squeeze_channel(double rate);

// Kernel of `first` followed by `second`. Per axis: f = f2*f1 and
// sigma = f2^2*sigma1 + sigma2. Associative; identity_channel is neutral.
ChannelParams concatenate(const ChannelParams& first,
                          const ChannelParams& second);

// Fold of the stages in order. Requires at least one stage.
ChannelParams composite_channel(const CompositeSpec& spec);

// Reduction of a two-stage composite to a single equivalent loss segment:
// eta_e = eta1*eta2 and v_e is the transmittance-weighted environment mix.
// Valid when the mid squeeze equals gamma_t2 - gamma_t1 (the rate that
// matches stage 2's frame to stage 1's environment); mid_squeeze is checked
// against that value. Requires eta1*eta2 < 1.
EffectiveChannel effective_single(const CompositeSpec& spec,
                                  double mid_squeeze);

// A squeezed thermal environment stays classical (has a non-negative
// Glauber P function) while e^{-2|gamma_t|} * 2v >= 1.
ClassicalityReport classicality_check(double v, double gamma_t);

}  // namespace catshield
