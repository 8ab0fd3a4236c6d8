#include "catshield/catshield.h"

#include <cmath>
#include <numbers>
#include <string>

#include "catshield/channel.hpp"
#include "catshield/core.hpp"
#include "catshield/distance.hpp"
#include "catshield/negativity.hpp"
#include "catshield/optimize.hpp"
#include "catshield/oracle.hpp"

struct cs_composite {
  catshield::CompositeSpec spec;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
cs_status wrap(Fn&& fn) noexcept {
  try {
    fn();
    return CS_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CS_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CS_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return CS_ERROR_INTERNAL;
  }
}

cs_status null_argument() {
  g_last_error = "null pointer argument";
  return CS_ERROR_NULL_ARGUMENT;
}

catshield::CatState to_state(const cs_cat_state& s) {
  if (s.parity != CS_PARITY_EVEN && s.parity != CS_PARITY_ODD)
    throw std::invalid_argument("parity must be CS_PARITY_EVEN or CS_PARITY_ODD");
  return {s.x0, s.p0,
          s.parity == CS_PARITY_EVEN ? catshield::Parity::Even
                                     : catshield::Parity::Odd};
}

catshield::ChannelParams to_channel(const cs_channel_params& ch) {
  return {ch.f_x, ch.f_p, ch.sigma_x, ch.sigma_p};
}

cs_channel_params from_channel(const catshield::ChannelParams& ch) {
  return {ch.f_x, ch.f_p, ch.sigma_x, ch.sigma_p};
}

catshield::LossyStage to_stage(const cs_lossy_stage& s) {
  return {s.eta, s.gamma, s.v, s.gamma_t};
}

cs_optimization_result from_result(const catshield::OptimizationResult& r) {
  cs_optimization_result out;
  out.gamma_opt = r.gamma_opt;
  out.gamma_mid_opt = r.gamma_mid_opt.value_or(0.0);
  out.has_gamma_mid = r.gamma_mid_opt.has_value() ? 1 : 0;
  out.objective = r.objective;
  out.evaluations = r.evaluations;
  out.converged = r.converged ? 1 : 0;
  switch (r.status) {
    case catshield::OptStatus::Converged:
      out.status = CS_OPT_CONVERGED;
      break;
    case catshield::OptStatus::FlatObjective:
      out.status = CS_OPT_FLAT;
      break;
    case catshield::OptStatus::Infeasible:
      out.status = CS_OPT_INFEASIBLE;
      break;
    case catshield::OptStatus::EvalLimit:
      out.status = CS_OPT_EVAL_LIMIT;
      break;
  }
  out.bracket_lo = r.bracket_lo;
  out.bracket_hi = r.bracket_hi;
  return out;
}

catshield::oracle::QuadratureSpec numeric_spec(const catshield::CatState& state,
                                               const catshield::ChannelParams& ch,
                                               int points_per_axis) {
  auto spec = catshield::oracle::default_spec(state, ch);
  if (points_per_axis != 0) spec.points_per_axis = points_per_axis;
  catshield::oracle::check_spec(spec);
  return spec;
}

}  // namespace

extern "C" {

const char* cs_status_message(cs_status status) {
  switch (status) {
    case CS_OK:
      return "ok";
    case CS_ERROR_NULL_ARGUMENT:
      return "null pointer argument";
    case CS_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case CS_ERROR_STAGE_COUNT:
      return "wrong number of composite stages";
    case CS_ERROR_INTERNAL:
      return "internal error";
  }
  return "unrecognized status";
}

const char* cs_last_error(void) { return g_last_error.c_str(); }

const char* cs_version(void) { return "0.1.0"; }

double cs_db_to_nats(double db) { return db * std::numbers::ln10 / 20.0; }

double cs_nats_to_db(double nats) { return nats * 20.0 / std::numbers::ln10; }

cs_status cs_wigner_ideal(const cs_cat_state* state, double x, double p,
                          double* out) {
  if (!state || !out) return null_argument();
  return wrap([&] { *out = catshield::wigner_ideal(to_state(*state), {x, p}); });
}

cs_status cs_wigner_transformed(const cs_cat_state* state,
                                const cs_channel_params* ch, double x, double p,
                                double* out) {
  if (!state || !ch || !out) return null_argument();
  return wrap([&] {
    *out = catshield::wigner_transformed(to_state(*state), to_channel(*ch),
                                         {x, p});
  });
}

cs_status cs_identity_channel(cs_channel_params* out) {
  if (!out) return null_argument();
  *out = from_channel(catshield::identity_channel());
  return CS_OK;
}

cs_status cs_lossy_channel(const cs_lossy_stage* stage,
                           cs_channel_params* out) {
  if (!stage || !out) return null_argument();
  return wrap(
      [&] { *out = from_channel(catshield::lossy_channel(to_stage(*stage))); });
}

cs_status cs_squeeze_channel(double rate, cs_channel_params* out) {
  if (!out) return null_argument();
  return wrap([&] { *out = from_channel(catshield::squeeze_channel(rate)); });
}

cs_status cs_concatenate(const cs_channel_params* first,
                         const cs_channel_params* second,
                         cs_channel_params* out) {
  if (!first || !second || !out) return null_argument();
  return wrap([&] {
    *out = from_channel(
        catshield::concatenate(to_channel(*first), to_channel(*second)));
  });
}

cs_status cs_classicality_check(double v, double gamma_t, int* classical,
                                double* gamma_t_max) {
  if (!classical || !gamma_t_max) return null_argument();
  return wrap([&] {
    const auto report = catshield::classicality_check(v, gamma_t);
    *classical = report.classical ? 1 : 0;
    *gamma_t_max = report.gamma_t_max;
  });
}

cs_composite* cs_composite_create(void) {
  try {
    return new cs_composite();
  } catch (...) {
    return nullptr;
  }
}

void cs_composite_free(cs_composite* spec) { delete spec; }

cs_status cs_composite_add_stage(cs_composite* spec,
                                 const cs_lossy_stage* stage) {
  if (!spec || !stage) return null_argument();
  return wrap([&] {
    catshield::LossyStage s = to_stage(*stage);
    catshield::check_stage(s);
    spec->spec.stages.push_back(s);
  });
}

int cs_composite_stage_count(const cs_composite* spec) {
  return spec ? static_cast<int>(spec->spec.stages.size()) : -1;
}

cs_status cs_composite_channel(const cs_composite* spec,
                               cs_channel_params* out) {
  if (!spec || !out) return null_argument();
  if (spec->spec.stages.empty()) {
    g_last_error = "composite spec needs at least one stage";
    return CS_ERROR_STAGE_COUNT;
  }
  return wrap(
      [&] { *out = from_channel(catshield::composite_channel(spec->spec)); });
}

cs_status cs_effective_single(const cs_composite* spec, double mid_squeeze,
                              double* eta_e, double* v_e) {
  if (!spec || !eta_e || !v_e) return null_argument();
  if (spec->spec.stages.size() != 2) {
    g_last_error = "effective reduction is defined for exactly two stages";
    return CS_ERROR_STAGE_COUNT;
  }
  return wrap([&] {
    const auto eff = catshield::effective_single(spec->spec, mid_squeeze);
    *eta_e = eff.eta_e;
    *v_e = eff.v_e;
  });
}

cs_status cs_central_negativity(const cs_cat_state* state,
                                const cs_channel_params* ch, double* out) {
  if (!state || !ch || !out) return null_argument();
  return wrap([&] {
    *out = catshield::central_negativity(to_state(*state), to_channel(*ch));
  });
}

cs_status cs_negativity_margin(const cs_channel_params* ch, double* out) {
  if (!ch || !out) return null_argument();
  return wrap([&] { *out = catshield::negativity_margin(to_channel(*ch)); });
}

cs_status cs_negativity_possible(const cs_channel_params* ch, int* out) {
  if (!ch || !out) return null_argument();
  return wrap(
      [&] { *out = catshield::negativity_possible(to_channel(*ch)) ? 1 : 0; });
}

cs_status cs_feasible_window(double v, cs_feasible_region* out) {
  if (!out) return null_argument();
  return wrap([&] {
    const auto region = catshield::feasible_region(v);
    out->eta_min = region.eta_min;
    out->eta_max = region.eta_max;
    out->v_max = region.v_max;
  });
}

cs_status cs_feasible_v(double eta, double* v_max) {
  if (!v_max) return null_argument();
  return wrap([&] { *v_max = catshield::feasible_v(eta); });
}

cs_status cs_purity(const cs_cat_state* state, const cs_channel_params* ch,
                    double* out) {
  if (!state || !ch || !out) return null_argument();
  return wrap(
      [&] { *out = catshield::purity(to_state(*state), to_channel(*ch)); });
}

cs_status cs_overlap(double x0, double p0, const cs_channel_params* ch,
                     double* out) {
  if (!ch || !out) return null_argument();
  return wrap([&] { *out = catshield::overlap(x0, p0, to_channel(*ch)); });
}

cs_status cs_hs_distance(double x0, double p0, const cs_channel_params* ch,
                         cs_distance_breakdown* out) {
  if (!ch || !out) return null_argument();
  return wrap([&] {
    const auto d = catshield::hs_distance(x0, p0, to_channel(*ch));
    out->purity_even = d.purity_even;
    out->purity_odd = d.purity_odd;
    out->overlap = d.overlap;
    out->distance = d.distance;
    out->m_factor = d.m_factor;
    out->n_factor = d.n_factor;
    out->l_factor = d.l_factor;
  });
}

cs_status cs_optimize_presqueeze_cn(const cs_cat_state* state, double eta,
                                    double v, double gamma_t,
                                    cs_optimization_result* out) {
  if (!state || !out) return null_argument();
  return wrap([&] {
    *out = from_result(
        catshield::optimize_presqueeze_cn(to_state(*state), eta, v, gamma_t));
  });
}

cs_status cs_optimize_presqueeze_hs(double x0, double p0, double eta, double v,
                                    cs_optimization_result* out) {
  if (!out) return null_argument();
  return wrap([&] {
    *out = from_result(catshield::optimize_presqueeze_hs(x0, p0, eta, v));
  });
}

cs_status cs_optimize_composite(const cs_cat_state* state,
                                const cs_composite* spec,
                                cs_optimization_result* out) {
  if (!state || !spec || !out) return null_argument();
  if (spec->spec.stages.size() != 2) {
    g_last_error = "composite optimization is defined for exactly two stages";
    return CS_ERROR_STAGE_COUNT;
  }
  return wrap([&] {
    *out = from_result(
        catshield::optimize_composite(to_state(*state), spec->spec));
  });
}

cs_status cs_wigner_numeric(const cs_cat_state* state,
                            const cs_channel_params* ch, double x, double p,
                            int points_per_axis, double* out) {
  if (!state || !ch || !out) return null_argument();
  return wrap([&] {
    const auto s = to_state(*state);
    const auto c = to_channel(*ch);
    *out = catshield::oracle::wigner_numeric(s, c, {x, p},
                                             numeric_spec(s, c, points_per_axis));
  });
}

cs_status cs_hs_distance_numeric(double x0, double p0,
                                 const cs_channel_params* ch,
                                 int points_per_axis, double* out) {
  if (!ch || !out) return null_argument();
  return wrap([&] {
    const catshield::CatState probe{x0, p0, catshield::Parity::Odd};
    const auto c = to_channel(*ch);
    *out = catshield::oracle::distance_numeric(
        x0, p0, c, numeric_spec(probe, c, points_per_axis));
  });
}

}  // extern "C"
