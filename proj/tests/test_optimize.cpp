#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>
#include <numbers>

#include "catshield/channel.hpp"
#include "catshield/distance.hpp"
#include "catshield/negativity.hpp"
#include "catshield/optimize.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace catshield;
using doctest::Approx;

namespace {

double cn_at(const CatState& state, const LossyStage& base, double gamma) {
  LossyStage stage = base;
  stage.gamma = gamma;
  return central_negativity(state, lossy_channel(stage));
}

double hs_at(double x0, double p0, const LossyStage& base, double gamma) {
  LossyStage stage = base;
  stage.gamma = gamma;
  return hs_distance(x0, p0, lossy_channel(stage)).distance;
}

double grid_argmax(const std::function<double(double)>& f, double lo,
                   double hi, double step) {
  double best_x = lo;
  double best = f(lo);
  for (double x = lo + step; x <= hi + 0.5 * step; x += step) {
    const double y = f(x);
    if (y > best) {
      best = y;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("scalar maximizer validates its bracket and tolerance") {
  const auto f = [](double x) { return -x * x; };
  CHECK_THROWS_AS(scalar_maximize(f, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(scalar_maximize(f, -1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("scalar maximizer nails smooth peaks") {
  const auto quad = [](double x) { return -(x - 1.3) * (x - 1.3); };
  const ScalarMaxResult peak = scalar_maximize(quad, kBracketLo, kBracketHi);
  CHECK(peak.converged);
  CHECK(peak.argmax == Approx(1.3).scale(1.0).epsilon(1e-7));
  CHECK(peak.max == Approx(0.0).scale(1.0).epsilon(1e-12));

  const auto bumps = [](double x) {
    return std::exp(-(x + 2.0) * (x + 2.0)) +
           2.0 * std::exp(-(x - 2.0) * (x - 2.0));
  };
  const ScalarMaxResult global = scalar_maximize(bumps, kBracketLo, kBracketHi);
  CHECK(global.argmax == Approx(2.0).scale(1.0).epsilon(1e-6));

  const auto edge = [](double x) { return x; };
  const ScalarMaxResult boundary = scalar_maximize(edge, -1.0, 1.0);
  CHECK(boundary.argmax == Approx(1.0).scale(1.0).epsilon(1e-6));
  CHECK(boundary.max == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("lossless channels report a flat objective") {
  const CatState state{3.0, 0.0, Parity::Odd};
  const OptimizationResult res = optimize_presqueeze_cn(state, 1.0, 1.0, 0.0);
  CHECK(res.status == OptStatus::FlatObjective);
  CHECK(res.converged);
  CHECK(res.gamma_opt == 0.0);
  CHECK_FALSE(res.gamma_mid_opt.has_value());
  CHECK(res.objective == Approx(-1.0 / std::numbers::pi).epsilon(1e-13));

  const OptimizationResult hs = optimize_presqueeze_hs(3.0, 0.0, 1.0, 0.7);
  CHECK(hs.status == OptStatus::FlatObjective);
  CHECK(hs.objective == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("channels outside the feasible window come back infeasible") {
  const CatState state{3.0, 0.0, Parity::Odd};
  const OptimizationResult res = optimize_presqueeze_cn(state, 0.5, 1.0, 0.0);
  CHECK(res.status == OptStatus::Infeasible);
  CHECK_FALSE(res.converged);
  CHECK(res.gamma_opt == 0.0);
  const LossyStage base{0.5, 0.0, 1.0, 0.0};
  CHECK(res.objective == cn_at(state, base, 0.0));
  CHECK(res.objective >= 0.0);
}

TEST_CASE("squeezing never hurts either objective") {
  testsupport::Draws rng(401);
  for (int i = 0; i < 30; ++i) {
    const CatState state = rng.odd_state(1.0, 32.0);
    LossyStage stage = rng.stage_mild();
    stage.gamma = 0.0;
    const OptimizationResult cn =
        optimize_presqueeze_cn(state, stage.eta, stage.v, stage.gamma_t);
    if (cn.status != OptStatus::Infeasible)
      CHECK(cn.objective <= cn_at(state, stage, 0.0) + 1e-14);
    const OptimizationResult hs =
        optimize_presqueeze_hs(state.x0, state.p0, stage.eta, stage.v);
    LossyStage symmetric = stage;
    symmetric.gamma_t = 0.0;
    CHECK(hs.objective >= hs_at(state.x0, state.p0, symmetric, 0.0) - 1e-14);
  }
}

TEST_CASE("reported optima sit on the grid-scan maxima") {
  const CatState state{3.0, 0.0, Parity::Odd};
  const struct {
    double eta, v, gamma_t;
  } cases[] = {
      {0.8, 0.5, 0.0},  {0.9, 1.0, 0.0},  {0.75, 0.5, 0.2},
      {0.95, 1.5, -0.3}, {0.85, 0.75, 0.1},
  };
  for (const auto& c : cases) {
    const LossyStage base{c.eta, 0.0, c.v, c.gamma_t};
    const OptimizationResult res =
        optimize_presqueeze_cn(state, c.eta, c.v, c.gamma_t);
    REQUIRE(res.status == OptStatus::Converged);
    const double brute = grid_argmax(
        [&](double g) { return -cn_at(state, base, g); }, kBracketLo,
        kBracketHi, 1e-3);
    CHECK(res.gamma_opt == Approx(brute).scale(1.0).epsilon(2e-3));
    CHECK(res.objective <= cn_at(state, base, brute) + 1e-12);
  }
  for (const auto& c : cases) {
    const LossyStage base{c.eta, 0.0, c.v, 0.0};
    const OptimizationResult res =
        optimize_presqueeze_hs(state.x0, state.p0, c.eta, c.v);
    REQUIRE(res.status == OptStatus::Converged);
    const double brute = grid_argmax(
        [&](double g) { return hs_at(state.x0, state.p0, base, g); },
        kBracketLo, kBracketHi, 1e-3);
    CHECK(res.gamma_opt == Approx(brute).scale(1.0).epsilon(2e-3));
    CHECK(res.objective >= hs_at(state.x0, state.p0, base, brute) - 1e-12);
  }
}

TEST_CASE("environment asymmetry shifts the optimal rate, not the value") {
  const CatState state{3.0, 0.0, Parity::Odd};
  const OptimizationResult base = optimize_presqueeze_cn(state, 0.8, 1.0, 0.0);
  for (const double db : {-1.0, 1.0}) {
    const double gt = db_to_nats(db);
    const OptimizationResult shifted =
        optimize_presqueeze_cn(state, 0.8, 1.0, gt);
    CHECK(shifted.gamma_opt - base.gamma_opt ==
          Approx(gt).scale(1.0).epsilon(1e-4));
    CHECK(shifted.objective == Approx(base.objective).epsilon(1e-8));
  }
}

TEST_CASE("two-stage optimization matches the effective single stage") {
  const CatState state{3.0, 0.0, Parity::Odd};
  const double gt1 = db_to_nats(-1.0);
  const double gt2 = db_to_nats(1.0);
  const CompositeSpec spec{{{0.9, 0.0, 1.0, gt1}, {0.9, 0.0, 2.0, gt2}}};
  const OptimizationResult joint = optimize_composite(state, spec);
  REQUIRE(joint.status == OptStatus::Converged);
  REQUIRE(joint.gamma_mid_opt.has_value());
  CHECK(*joint.gamma_mid_opt == Approx(gt2 - gt1).scale(1.0).epsilon(1e-4));
  const EffectiveChannel eff = effective_single(spec, gt2 - gt1);
  const OptimizationResult reduced =
      optimize_presqueeze_cn(state, eff.eta_e, eff.v_e, 0.0);
  CHECK(joint.objective == Approx(reduced.objective).epsilon(1e-8));
}

TEST_CASE("two-stage optimization handles the degenerate shapes") {
  const CatState state{3.0, 0.0, Parity::Odd};
  const CompositeSpec lossless{{{1.0, 0.0, 0.5, 0.0}, {1.0, 0.0, 0.5, 0.0}}};
  const OptimizationResult flat = optimize_composite(state, lossless);
  CHECK(flat.status == OptStatus::FlatObjective);
  REQUIRE(flat.gamma_mid_opt.has_value());
  CHECK(*flat.gamma_mid_opt == 0.0);

  const CompositeSpec hopeless{{{0.6, 0.0, 1.0, 0.0}, {0.6, 0.0, 1.0, 0.0}}};
  const OptimizationResult inf = optimize_composite(state, hopeless);
  CHECK(inf.status == OptStatus::Infeasible);
  CHECK_FALSE(inf.converged);

  CHECK_THROWS_AS(optimize_composite(state, {{{0.9, 0.0, 0.5, 0.0}}}),
                  std::invalid_argument);
}

TEST_CASE("two-stage optimum never loses to the unsqueezed chain") {
  testsupport::Draws rng(409);
  for (int i = 0; i < 10; ++i) {
    const CatState state = rng.odd_state(1.0, 25.0);
    CompositeSpec spec{{rng.stage_mild(), rng.stage_mild()}};
    spec.stages[0].gamma = 0.0;
    spec.stages[1].gamma = 0.0;
    const OptimizationResult joint = optimize_composite(state, spec);
    if (joint.status == OptStatus::Infeasible) continue;
    CHECK(joint.objective <=
          central_negativity(state, composite_channel(spec)) + 1e-14);
  }
}

TEST_CASE("optimal distance grows with transmittance up to the lossless cap") {
  double previous = -1.0;
  for (int i = 1; i <= 10; ++i) {
    const double eta = 0.1 * i;
    const OptimizationResult res = optimize_presqueeze_hs(3.0, 0.0, eta, 0.5);
    CHECK(res.objective >= previous - 1e-10);
    previous = res.objective;
  }
  CHECK(optimize_presqueeze_hs(3.0, 0.0, 1.0, 0.5).objective ==
        Approx(2.0).epsilon(1e-12));
}

TEST_CASE("optimizers reject invalid inputs") {
  CHECK_THROWS_AS(optimize_presqueeze_cn({3.0, 0.0, Parity::Even}, 0.9, 1.0,
                                         0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_presqueeze_cn({3.0, 0.0, Parity::Odd}, 1.2, 1.0,
                                         0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(optimize_presqueeze_hs(3.0, 0.0, 0.9, 0.4),
                  std::invalid_argument);
}
