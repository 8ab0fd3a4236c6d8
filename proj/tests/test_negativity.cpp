#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "catshield/channel.hpp"
#include "catshield/negativity.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace catshield;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Axis-aligned cat guaranteed to expose negativity whenever the margin is
// positive: one of the two axis combinations must be positive then.
CatState witness_state(const ChannelParams& ch) {
  const double along_x =
      ch.f_x * ch.f_x / ch.v_x() - ch.sigma_p / ch.v_p();
  if (along_x > 0.0) return {3.0, 0.0, Parity::Odd};
  return {0.0, 3.0, Parity::Odd};
}

}  // namespace

TEST_CASE("identity channel keeps the odd-cat origin at its floor") {
  testsupport::Draws rng(101);
  for (int i = 0; i < 40; ++i) {
    const CatState state = rng.odd_state();
    CHECK(central_negativity(state, identity_channel()) ==
          Approx(-1.0 / kPi).epsilon(1e-13));
  }
}

TEST_CASE("central negativity matches a frozen lossy value") {
  const ChannelParams ch = lossy_channel({0.8, 0.0, 0.5, 0.0});
  const double cn = central_negativity({3.0, 0.0, Parity::Odd}, ch);
  CHECK(cn == Approx(-0.052385089486060).epsilon(1e-12));
}

TEST_CASE("central negativity agrees with the transformed Wigner origin") {
  testsupport::Draws rng(103);
  for (int i = 0; i < 60; ++i) {
    const CatState state = rng.odd_state();
    const ChannelParams ch = lossy_channel(rng.stage_wide());
    CHECK(central_negativity(state, ch) ==
          Approx(wigner_transformed(state, ch, {0.0, 0.0})).epsilon(1e-12));
  }
}

TEST_CASE("even states are rejected by the origin witness") {
  CHECK_THROWS_AS(central_negativity({3.0, 0.0, Parity::Even},
                                     identity_channel()),
                  std::invalid_argument);
}

TEST_CASE("half loss of a vacuum environment erases the origin witness") {
  const ChannelParams ch = lossy_channel({0.5, 0.0, 0.5, 0.0});
  // lobes and fringe agree exactly there; only rounding noise survives
  CHECK(std::abs(central_negativity({3.0, 0.0, Parity::Odd}, ch)) < 1e-15);
  CHECK(negativity_margin(ch) == 0.0);
  CHECK_FALSE(negativity_possible(ch));
}

TEST_CASE("margin sign decides negativity over random kernels") {
  testsupport::Draws rng(107);
  for (int i = 0; i < 1000; ++i) {
    const ChannelParams ch =
        (i % 2 == 0) ? rng.channel_raw() : lossy_channel(rng.stage_wide());
    const double margin = negativity_margin(ch);
    if (margin > 0.0) {
      CHECK(central_negativity(witness_state(ch), ch) < 0.0);
    } else {
      for (int k = 0; k < 10; ++k)
        CHECK(central_negativity(rng.odd_state(), ch) >= -1e-15);
    }
  }
}

TEST_CASE("margin is invariant under squeezing on either side") {
  testsupport::Draws rng(109);
  for (int i = 0; i < 60; ++i) {
    const ChannelParams ch = lossy_channel(rng.stage_wide());
    const double before = negativity_margin(ch);
    const ChannelParams pre = concatenate(squeeze_channel(rng.uniform(-1, 1)), ch);
    const ChannelParams post = concatenate(ch, squeeze_channel(rng.uniform(-1, 1)));
    CHECK(negativity_margin(pre) == Approx(before).epsilon(1e-12));
    CHECK(negativity_margin(post) == Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("stage margin depends only on transmittance and variance") {
  testsupport::Draws rng(113);
  for (int i = 0; i < 60; ++i) {
    const LossyStage stage = rng.stage_wide();
    const double expected =
        stage.eta * stage.eta -
        4.0 * (1.0 - stage.eta) * (1.0 - stage.eta) * stage.v * stage.v;
    CHECK(negativity_margin(lossy_channel(stage)) ==
          Approx(expected).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("no phase-space negativity survives once the margin is gone") {
  testsupport::Draws rng(127);
  int scanned = 0;
  while (scanned < 20) {
    const ChannelParams ch = rng.channel_raw();
    if (negativity_margin(ch) > 0.0) continue;
    ++scanned;
    const CatState odd = rng.odd_state();
    const CatState even{odd.x0, odd.p0, Parity::Even};
    const double reach =
        std::max(std::abs(ch.f_x * odd.x0), std::abs(ch.f_p * odd.p0)) + 3.0;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j) {
        const PhasePoint pt{reach * i / 10.0, reach * j / 10.0};
        CHECK(wigner_transformed(odd, ch, pt) >= -1e-12);
        CHECK(wigner_transformed(even, ch, pt) >= -1e-12);
      }
  }
}

TEST_CASE("feasible region formulas and their inverse agree") {
  const FeasibleRegion at_one = feasible_region(1.0);
  CHECK(at_one.eta_min == 2.0 / 3.0);
  CHECK(at_one.eta_max == 1.0);
  CHECK_FALSE(at_one.empty());
  CHECK(feasible_v(2.0 / 3.0) == Approx(1.0).epsilon(1e-14));
  testsupport::Draws rng(131);
  for (int i = 0; i < 60; ++i) {
    const double v = rng.uniform(0.05, 5.0);
    const FeasibleRegion region = feasible_region(v);
    CHECK(feasible_v(region.eta_min) == Approx(v).epsilon(1e-12));
    CHECK(region.v_max == v);
  }
  CHECK_THROWS_AS(feasible_region(0.0), std::invalid_argument);
  CHECK_THROWS_AS(feasible_v(1.0), std::invalid_argument);
  CHECK_THROWS_AS(feasible_v(0.0), std::invalid_argument);
}

TEST_CASE("feasibility boundary is consistent with the kernel condition") {
  testsupport::Draws rng(137);
  for (int i = 0; i < 60; ++i) {
    const double v = rng.uniform(0.5, 5.0);
    const double edge = feasible_region(v).eta_min;
    const ChannelParams inside =
        lossy_channel({edge * (1.0 + 1e-9), 0.0, v, 0.0});
    const ChannelParams outside =
        lossy_channel({edge * (1.0 - 1e-9), 0.0, v, 0.0});
    CHECK(negativity_possible(inside));
    CHECK_FALSE(negativity_possible(outside));
    // squeezing rates do not move the boundary
    const ChannelParams squeezed = lossy_channel(
        {edge * (1.0 + 1e-9), rng.uniform(-1, 1), v, rng.uniform(-1, 1)});
    CHECK(negativity_possible(squeezed));
  }
}
