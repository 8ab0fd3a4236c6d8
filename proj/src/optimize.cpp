#include "catshield/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "catshield/distance.hpp"
#include "catshield/negativity.hpp"

namespace catshield {

namespace {

constexpr int kScanPoints = 61;
constexpr int kBrentMaxIter = 200;
constexpr int kMaxRounds = 50;
constexpr double kRoundTol = 1e-6;

struct BrentResult {
  double xmin = 0.0;
  double fmin = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Golden-section/parabolic minimization on [a, b] starting from x0.
BrentResult brent_minimize(const std::function<double(double)>& f, double a,
                           double b, double x0, double tol) {
  constexpr double cgold = 0.3819660112501051;
  double x = x0, w = x0, v = x0;
  double fx = f(x), fw = fx, fv = fx;
  int evaluations = 1;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < kBrentMaxIter; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = tol * std::abs(x) + 1e-12;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a))
      return {x, fx, evaluations, true};
    if (std::abs(e) > tol1) {
      // trial parabola through (x, w, v)
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) ||
          p >= q * (b - x)) {
        e = (x >= xm) ? a - x : b - x;
        d = cgold * e;
      } else {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
      }
    } else {
      e = (x >= xm) ? a - x : b - x;
      d = cgold * e;
    }
    const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = f(u);
    ++evaluations;
    if (fu <= fx) {
      if (u >= x)
        a = x;
      else
        b = x;
      v = w;
      w = x;
      x = u;
      fv = fw;
      fw = fx;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        w = u;
        fv = fw;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, evaluations, false};
}

}  // namespace

ScalarMaxResult scalar_maximize(const std::function<double(double)>& f,
                                double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw std::invalid_argument("bracket must be finite with lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  // Coarse scan locates the global candidate before local refinement.
  std::vector<double> grid(kScanPoints), values(kScanPoints);
  const double step = (hi - lo) / (kScanPoints - 1);
  int best = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    grid[i] = lo + step * i;
    values[i] = f(grid[i]);
    if (values[i] > values[best]) best = i;
  }

  const double left = grid[std::max(best - 1, 0)];
  const double right = grid[std::min(best + 1, kScanPoints - 1)];
  const double start = (best == 0 || best == kScanPoints - 1)
                           ? left + 0.3819660112501051 * (right - left)
                           : grid[best];
  const auto neg = [&f](double t) { return -f(t); };
  const BrentResult refined = brent_minimize(neg, left, right, start, tol);

  ScalarMaxResult result;
  result.evaluations = kScanPoints + refined.evaluations;
  result.converged = refined.converged;
  if (-refined.fmin >= values[best]) {
    result.argmax = refined.xmin;
    result.max = -refined.fmin;
  } else {
    result.argmax = grid[best];
    result.max = values[best];
  }
  return result;
}

namespace {

// Shared single-rate drill: feasibility and flatness are decided by the
// caller, this runs the bracketed maximization and keeps gamma = 0 whenever
// it is no worse, so optimization never loses to the unprotected state.
OptimizationResult maximize_rate(const std::function<double(double)>& objective,
                                 bool negate_report) {
  OptimizationResult res;
  res.bracket_lo = kBracketLo;
  res.bracket_hi = kBracketHi;
  const ScalarMaxResult sm =
      scalar_maximize(objective, kBracketLo, kBracketHi, kArgTol);
  const double at_zero = objective(0.0);
  res.evaluations = sm.evaluations + 1;
  if (at_zero >= sm.max) {
    res.gamma_opt = 0.0;
    res.objective = negate_report ? -at_zero : at_zero;
  } else {
    res.gamma_opt = sm.argmax;
    res.objective = negate_report ? -sm.max : sm.max;
  }
  res.converged = sm.converged;
  res.status = sm.converged ? OptStatus::Converged : OptStatus::EvalLimit;
  return res;
}

}  // namespace

OptimizationResult optimize_presqueeze_cn(const CatState& state, double eta,
                                          double v, double gamma_t) {
  LossyStage base{eta, 0.0, v, gamma_t};
  check_stage(base);
  const auto cn_at = [&](double g) {
    LossyStage s = base;
    s.gamma = g;
    return central_negativity(state, lossy_channel(s));
  };

  OptimizationResult res;
  res.bracket_lo = kBracketLo;
  res.bracket_hi = kBracketHi;
  if (eta == 1.0) {
    // lossless channel: the origin value is squeeze-invariant
    res.objective = cn_at(0.0);
    res.evaluations = 1;
    res.converged = true;
    res.status = OptStatus::FlatObjective;
    return res;
  }
  if (!negativity_possible(lossy_channel(base))) {
    // no squeezing rate can recover negativity; report the unprotected value
    res.objective = cn_at(0.0);
    res.evaluations = 1;
    res.status = OptStatus::Infeasible;
    return res;
  }
  return maximize_rate([&](double g) { return -cn_at(g); }, true);
}

OptimizationResult optimize_presqueeze_hs(double x0, double p0, double eta,
                                          double v) {
  LossyStage base{eta, 0.0, v, 0.0};
  check_stage(base);
  const auto dist_at = [&](double g) {
    LossyStage s = base;
    s.gamma = g;
    return hs_distance(x0, p0, lossy_channel(s)).distance;
  };

  OptimizationResult res;
  res.bracket_lo = kBracketLo;
  res.bracket_hi = kBracketHi;
  if (eta == 1.0) {
    res.objective = dist_at(0.0);
    res.evaluations = 1;
    res.converged = true;
    res.status = OptStatus::FlatObjective;
    return res;
  }
  return maximize_rate(dist_at, false);
}

OptimizationResult optimize_composite(const CatState& state,
                                      const CompositeSpec& spec) {
  if (spec.stages.size() != 2)
    throw std::invalid_argument(
        "composite optimization is defined for exactly two stages");
  check_stage(spec.stages[0]);
  check_stage(spec.stages[1]);

  const auto cn_at = [&](double g, double gm) {
    CompositeSpec trial = spec;
    trial.stages[0].gamma = g;
    trial.stages[1].gamma = gm;
    return central_negativity(state, composite_channel(trial));
  };

  OptimizationResult res;
  res.bracket_lo = kBracketLo;
  res.bracket_hi = kBracketHi;
  const double eta_e = spec.stages[0].eta * spec.stages[1].eta;
  if (eta_e == 1.0) {
    res.gamma_mid_opt = 0.0;
    res.objective = cn_at(0.0, 0.0);
    res.evaluations = 1;
    res.converged = true;
    res.status = OptStatus::FlatObjective;
    return res;
  }

  // Feasibility of the equivalent single segment decides feasibility of the
  // whole composite: the mid squeeze can always re-align the stages.
  const double mid_matched = spec.stages[1].gamma_t - spec.stages[0].gamma_t;
  const EffectiveChannel eff = effective_single(spec, mid_matched);
  if (!negativity_possible(lossy_channel({eff.eta_e, 0.0, eff.v_e, 0.0}))) {
    res.gamma_opt = spec.stages[0].gamma;
    res.gamma_mid_opt = spec.stages[1].gamma;
    res.objective = cn_at(spec.stages[0].gamma, spec.stages[1].gamma);
    res.evaluations = 1;
    res.status = OptStatus::Infeasible;
    return res;
  }

  double g = spec.stages[0].gamma;
  double gm = spec.stages[1].gamma;
  double best = -cn_at(g, gm);
  int evaluations = 1;
  // never report worse than the fully unsqueezed configuration
  const double at_zero = -cn_at(0.0, 0.0);
  ++evaluations;
  if (at_zero > best) {
    g = 0.0;
    gm = 0.0;
    best = at_zero;
  }

  bool settled = false;
  for (int round = 0; round < kMaxRounds && !settled; ++round) {
    double move_g = 0.0;
    double move_m = 0.0;
    const ScalarMaxResult rg = scalar_maximize(
        [&](double t) { return -cn_at(t, gm); }, kBracketLo, kBracketHi,
        kArgTol);
    evaluations += rg.evaluations;
    if (rg.max >= best) {
      move_g = std::abs(rg.argmax - g);
      g = rg.argmax;
      best = rg.max;
    }
    const ScalarMaxResult rm = scalar_maximize(
        [&](double t) { return -cn_at(g, t); }, kBracketLo, kBracketHi,
        kArgTol);
    evaluations += rm.evaluations;
    if (rm.max >= best) {
      move_m = std::abs(rm.argmax - gm);
      gm = rm.argmax;
      best = rm.max;
    }
    settled = move_g < kRoundTol && move_m < kRoundTol;
  }

  res.gamma_opt = g;
  res.gamma_mid_opt = gm;
  res.objective = -best;
  res.evaluations = evaluations;
  res.converged = settled;
  res.status = settled ? OptStatus::Converged : OptStatus::EvalLimit;
  return res;
}

}  // namespace catshield
