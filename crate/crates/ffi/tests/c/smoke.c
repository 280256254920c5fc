#include <math.h>
#include <stdio.h>

#include "pfva.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "check failed line %d: %s\n", __LINE__, #cond); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  PfvaReductions g;
  CHECK(pfva_reductions_from_rho(3.0, &g) == PFVA_STATUS_OK);
  CHECK(g.r_v + g.r_f == 1.0);
  CHECK(fabs(g.r_v - 0.25) < 1e-15);

  CHECK(pfva_reductions_from_rho(-1.0, &g) == PFVA_STATUS_SINGULAR_RATIO);
  CHECK(pfva_last_error() != NULL);

  double mu = 0.0;
  CHECK(pfva_coupling_mu(1.0, 1.0, &mu) == PFVA_STATUS_OK);
  CHECK(fabs(mu - 0.25) < 1e-15);

  PfvaConfig *cfg = NULL;
  CHECK(pfva_config_default(&cfg) == PFVA_STATUS_OK);
  CHECK(pfva_config_set_policy(cfg, "min_norm") == PFVA_STATUS_OK);

  PfvaRun *run = NULL;
  CHECK(pfva_simulate(cfg, 5.0, &run) == PFVA_STATUS_OK);
  CHECK(pfva_run_len(run) == 1171);
  PfvaRecord rec;
  CHECK(pfva_run_record(run, 1170, &rec) == PFVA_STATUS_OK);
  CHECK(fabs(rec.t - 1.17) < 1e-12);
  CHECK(pfva_run_record(run, 1171, &rec) == PFVA_STATUS_INDEX_OUT_OF_RANGE);
  pfva_run_free(run);

  double rhos[2] = {5.0, 15.0};
  PfvaSweep *sweep = NULL;
  CHECK(pfva_sweep(cfg, rhos, 2, &sweep) == PFVA_STATUS_OK);
  CHECK(pfva_sweep_len(sweep) == 2);
  PfvaSweepRow row;
  CHECK(pfva_sweep_row(sweep, 1, &row) == PFVA_STATUS_OK);
  CHECK(row.rho == 15.0);
  pfva_sweep_free(sweep);
  pfva_config_free(cfg);

  printf("ok\n");
  return 0;
}
