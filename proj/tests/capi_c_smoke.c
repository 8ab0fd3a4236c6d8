/* Exercises the public header as plain C. Returns 0 on success, a small
 * positive step number on the first failure. */

#include <math.h>
#include <stddef.h>

#include "catshield/catshield.h"

int capi_c_smoke(void) {
  const double pi = 3.14159265358979323846;
  cs_cat_state state = {3.0, 0.0, CS_PARITY_ODD};
  double w = 0.0;
  cs_channel_params ch;
  double cn = 0.0;
  cs_composite* spec = NULL;
  cs_lossy_stage stage = {0.9, 0.0, 0.5, 0.0};
  cs_optimization_result res;

  if (cs_wigner_ideal(&state, 0.0, 0.0, &w) != CS_OK) return 1;
  if (fabs(w + 1.0 / pi) > 1e-12) return 2;
  if (cs_identity_channel(&ch) != CS_OK) return 3;
  if (cs_central_negativity(&state, &ch, &cn) != CS_OK) return 4;
  if (fabs(cn - w) > 1e-15) return 5;
  if (cs_wigner_ideal(NULL, 0.0, 0.0, &w) != CS_ERROR_NULL_ARGUMENT) return 6;
  if (cs_last_error() == NULL) return 7;

  spec = cs_composite_create();
  if (spec == NULL) return 8;
  if (cs_composite_add_stage(spec, &stage) != CS_OK) {
    cs_composite_free(spec);
    return 9;
  }
  if (cs_composite_stage_count(spec) != 1) {
    cs_composite_free(spec);
    return 10;
  }
  cs_composite_free(spec);
  cs_composite_free(NULL);

  if (cs_optimize_presqueeze_cn(&state, 0.8, 0.5, 0.0, &res) != CS_OK)
    return 11;
  if (res.status != CS_OPT_CONVERGED || !res.converged) return 12;
  if (fabs(cs_nats_to_db(cs_db_to_nats(3.0)) - 3.0) > 1e-12) return 13;
  return 0;
}
