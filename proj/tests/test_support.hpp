#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "catshield/channel.hpp"
#include "catshield/core.hpp"

namespace testsupport {

// Deterministic draws; every suite seeds its own engine so test order never
// changes the data.
class Draws {
 public:
  explicit Draws(unsigned seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  bool coin() { return std::uniform_int_distribution<int>(0, 1)(engine_) == 1; }

  // displacement drawn uniformly in angle with x0^2 + p0^2 in [lo, hi]
  catshield::CatState state(double lo_sep_sq, double hi_sep_sq,
                            catshield::Parity parity) {
    const double sep = std::sqrt(uniform(lo_sep_sq, hi_sep_sq));
    const double angle = uniform(0.0, 2.0 * std::numbers::pi);
    return {sep * std::cos(angle), sep * std::sin(angle), parity};
  }

  catshield::CatState odd_state(double lo_sep_sq = 0.5,
                                double hi_sep_sq = 50.0) {
    return state(lo_sep_sq, hi_sep_sq, catshield::Parity::Odd);
  }

  catshield::CatState any_state(double lo_sep_sq = 0.5,
                                double hi_sep_sq = 50.0) {
    return state(lo_sep_sq, hi_sep_sq,
                 coin() ? catshield::Parity::Odd : catshield::Parity::Even);
  }

  // wide ranges for closed-form identities that involve no quadrature
  catshield::LossyStage stage_wide() {
    return {uniform(0.05, 1.0), uniform(-1.5, 1.5), uniform(0.5, 5.0),
            uniform(-1.0, 1.0)};
  }

  // ranges tame enough for the default quadrature resolution
  catshield::LossyStage stage_mild() {
    return {uniform(0.2, 0.98), uniform(-0.3, 0.3), uniform(0.5, 2.0),
            uniform(-0.25, 0.25)};
  }

  // raw kernel coefficients, not necessarily reachable by a lossy stage
  catshield::ChannelParams channel_raw() {
    return {uniform(0.2, 1.5), uniform(0.2, 1.5), uniform(0.0, 3.0),
            uniform(0.0, 3.0)};
  }

 private:
  std::mt19937 engine_;
};

}  // namespace testsupport
