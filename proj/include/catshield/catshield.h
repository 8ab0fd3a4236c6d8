#ifndef CATSHIELD_CATSHIELD_H
#define CATSHIELD_CATSHIELD_H

/*
 * C interface to the catshield library.
 *
 * Conventions: quadratures obey [x, p] = i (vacuum Wigner function
 * exp(-x^2 - p^2)/pi, vacuum variance 0.5); squeezing rates are in nats,
 * positive rate shrinks x; dB values refer to the variance ratio,
 * db = 10 log10 e^{2r}.
 *
 * Every fallible call returns cs_status and writes results through out
 * pointers. On failure the outputs are untouched and cs_last_error() holds
 * a human-readable detail string (thread local).
 */

#if defined(_WIN32)
#if defined(CATSHIELD_BUILD)
#define CATSHIELD_API __declspec(dllexport)
#else
#define CATSHIELD_API __declspec(dllimport)
#endif
#else
#define CATSHIELD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
  CS_OK = 0,
  CS_ERROR_NULL_ARGUMENT = 1,
  CS_ERROR_INVALID_ARGUMENT = 2,
  CS_ERROR_STAGE_COUNT = 3,
  CS_ERROR_INTERNAL = 4
} cs_status;

CATSHIELD_API const char* cs_status_message(cs_status status);
CATSHIELD_API const char* cs_last_error(void);
CATSHIELD_API const char* cs_version(void);

typedef enum cs_parity { CS_PARITY_EVEN = 0, CS_PARITY_ODD = 1 } cs_parity;

typedef struct cs_cat_state {
  double x0;
  double p0;
  cs_parity parity;
} cs_cat_state;

typedef struct cs_channel_params {
  double f_x;
  double f_p;
  double sigma_x;
  double sigma_p;
} cs_channel_params;

typedef struct cs_lossy_stage {
  double eta;     /* transmittance, (0, 1] */
  double gamma;   /* pre-squeeze rate, nats */
  double v;       /* environment variance, >= 0.5 (vacuum) */
  double gamma_t; /* environment squeeze rate, nats */
} cs_lossy_stage;

typedef struct cs_feasible_region {
  double eta_min;
  double eta_max;
  double v_max;
} cs_feasible_region;

typedef struct cs_distance_breakdown {
  double purity_even;
  double purity_odd;
  double overlap;
  double distance;
  double m_factor;
  double n_factor;
  double l_factor;
} cs_distance_breakdown;

typedef enum cs_opt_status {
  CS_OPT_CONVERGED = 0,
  CS_OPT_FLAT = 1,
  CS_OPT_INFEASIBLE = 2,
  CS_OPT_EVAL_LIMIT = 3
} cs_opt_status;

typedef struct cs_optimization_result {
  double gamma_opt;
  double gamma_mid_opt; /* meaningful iff has_gamma_mid */
  int has_gamma_mid;
  double objective;
  int evaluations;
  int converged;
  cs_opt_status status;
  double bracket_lo;
  double bracket_hi;
} cs_optimization_result;

/* --- unit conversions (pure, never fail on finite input) --- */

CATSHIELD_API double cs_db_to_nats(double db);
CATSHIELD_API double cs_nats_to_db(double nats);

/* --- Wigner functions --- */

CATSHIELD_API cs_status cs_wigner_ideal(const cs_cat_state* state, double x,
                                        double p, double* out);
CATSHIELD_API cs_status cs_wigner_transformed(const cs_cat_state* state,
                                              const cs_channel_params* ch,
                                              double x, double p, double* out);

/* --- channels --- */

CATSHIELD_API cs_status cs_identity_channel(cs_channel_params* out);
CATSHIELD_API cs_status cs_lossy_channel(const cs_lossy_stage* stage,
                                         cs_channel_params* out);
CATSHIELD_API cs_status cs_squeeze_channel(double rate,
                                           cs_channel_params* out);
CATSHIELD_API cs_status cs_concatenate(const cs_channel_params* first,
                                       const cs_channel_params* second,
                                       cs_channel_params* out);
CATSHIELD_API cs_status cs_classicality_check(double v, double gamma_t,
                                              int* classical,
                                              double* gamma_t_max);

/* Composite channels are built stage by stage behind an opaque handle.
 * cs_composite_free accepts NULL. */
typedef struct cs_composite cs_composite;

CATSHIELD_API cs_composite* cs_composite_create(void);
CATSHIELD_API void cs_composite_free(cs_composite* spec);
CATSHIELD_API cs_status cs_composite_add_stage(cs_composite* spec,
                                               const cs_lossy_stage* stage);
CATSHIELD_API int cs_composite_stage_count(const cs_composite* spec);
CATSHIELD_API cs_status cs_composite_channel(const cs_composite* spec,
                                             cs_channel_params* out);
CATSHIELD_API cs_status cs_effective_single(const cs_composite* spec,
                                            double mid_squeeze, double* eta_e,
                                            double* v_e);

/* --- central negativity --- */

CATSHIELD_API cs_status cs_central_negativity(const cs_cat_state* state,
                                              const cs_channel_params* ch,
                                              double* out);
CATSHIELD_API cs_status cs_negativity_margin(const cs_channel_params* ch,
                                             double* out);
CATSHIELD_API cs_status cs_negativity_possible(const cs_channel_params* ch,
                                               int* out);
CATSHIELD_API cs_status cs_feasible_window(double v,
                                           cs_feasible_region* out);
CATSHIELD_API cs_status cs_feasible_v(double eta, double* v_max);

/* --- Hilbert-Schmidt distance --- */

CATSHIELD_API cs_status cs_purity(const cs_cat_state* state,
                                  const cs_channel_params* ch, double* out);
CATSHIELD_API cs_status cs_overlap(double x0, double p0,
                                   const cs_channel_params* ch, double* out);
CATSHIELD_API cs_status cs_hs_distance(double x0, double p0,
                                       const cs_channel_params* ch,
                                       cs_distance_breakdown* out);

/* --- squeezing-rate optimization --- */

CATSHIELD_API cs_status cs_optimize_presqueeze_cn(const cs_cat_state* state,
                                                  double eta, double v,
                                                  double gamma_t,
                                                  cs_optimization_result* out);
CATSHIELD_API cs_status cs_optimize_presqueeze_hs(double x0, double p0,
                                                  double eta, double v,
                                                  cs_optimization_result* out);
CATSHIELD_API cs_status cs_optimize_composite(const cs_cat_state* state,
                                              const cs_composite* spec,
                                              cs_optimization_result* out);

/* --- quadrature reference values --- *
 * Independent numerical integrations, for cross-checking the closed forms.
 * points_per_axis >= 64; pass 0 for the default (256). */

CATSHIELD_API cs_status cs_wigner_numeric(const cs_cat_state* state,
                                          const cs_channel_params* ch,
                                          double x, double p,
                                          int points_per_axis, double* out);
CATSHIELD_API cs_status cs_hs_distance_numeric(double x0, double p0,
                                               const cs_channel_params* ch,
                                               int points_per_axis,
                                               double* out);

#ifdef __cplusplus
}
#endif

#endif /* CATSHIELD_CATSHIELD_H */
