#pragma once

#include <functional>
#include <optional>

#include "catshield/channel.hpp"

namespace catshield {

enum class OptStatus {
  Converged,      // local maximum found within tolerance
  FlatObjective,  // objective constant over the bracket (e.g. eta = 1)
  Infeasible,     // no squeezing rate can reach the objective's target
  EvalLimit,      // refinement hit the evaluation budget
};

struct OptimizationResult {
  double gamma_opt = 0.0;
  std::optional<double> gamma_mid_opt;  // two-stage optimizations only
  double objective = 0.0;
  int evaluations = 0;
  bool converged = false;
  OptStatus status = OptStatus::Converged;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct ScalarMaxResult {
  double argmax = 0.0;
  double max = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Search bracket for squeezing rates, in nats. Optimal rates for physical
// channels sit well inside +-1.5 nats.
inline constexpr double kBracketLo = -3.0;
inline constexpr double kBracketHi = 3.0;
inline constexpr double kArgTol = 1e-8;

// Maximum of f over [lo, hi]: coarse 61-point scan picks the best local
// candidate, golden-section/parabolic refinement finishes it. The scan
// guards against secondary maxima; converged = false only if refinement
// exhausts its budget.
ScalarMaxResult scalar_maximize(const std::function<double(double)>& f,
                                double lo, double hi, double tol = kArgTol);

// Pre-squeeze rate maximizing |central negativity| of the odd cat through
// lossy_channel({eta, gamma, v, gamma_t}). Outside the feasible window the
// result is flagged Infeasible and reports the unprotected value at gamma=0.
OptimizationResult optimize_presqueeze_cn(const CatState& state, double eta,
                                          double v, double gamma_t);

// Joint (pre, mid) squeeze rates for a two-stage composite, by coordinate
// descent over the two rates. gamma_mid_opt lands on the environment
// asymmetry difference of the stages.
OptimizationResult optimize_composite(const CatState& state,
                                      const CompositeSpec& spec);

// Pre-squeeze rate maximizing the even/odd Hilbert-Schmidt distance through
// a symmetric-environment stage. Defined for every channel, so the only
// degenerate case is the flat objective at eta = 1.
OptimizationResult optimize_presqueeze_hs(double x0, double p0, double eta,
                                          double v);

}  // namespace catshield
