/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef PFVA_H
#define PFVA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PfvaStatus {
  PFVA_STATUS_OK = 0,
  PFVA_STATUS_NULL_POINTER = 1,
  PFVA_STATUS_SINGULAR_RATIO = 2,
  PFVA_STATUS_INVALID_ARGUMENT = 3,
  PFVA_STATUS_OUT_OF_STROKE = 4,
  PFVA_STATUS_DEAD_CENTER = 5,
  PFVA_STATUS_CONFIG = 6,
  PFVA_STATUS_IO = 7,
  PFVA_STATUS_INDEX_OUT_OF_RANGE = 8,
  PFVA_STATUS_PANIC = 9,
} PfvaStatus;

// Opaque experiment configuration.
typedef struct PfvaConfig PfvaConfig;

// Opaque simulation run.
typedef struct PfvaRun PfvaRun;

// Opaque sweep summary.
typedef struct PfvaSweep PfvaSweep;

typedef struct PfvaReductions {
  double r_v;
  double r_f;
  double rho;
  // 1 when ρ is within 1e-9 of 1, where both inputs reduce equally.
  int32_t unit_ratio_warning;
} PfvaReductions;

// Row-major 2x2 input-space inertia, kg·m².
typedef struct PfvaMatrix2 {
  double a_vv;
  double a_vf;
  double a_fv;
  double a_ff;
} PfvaMatrix2;

// One sample of a simulation run; same columns as the run CSV.
typedef struct PfvaRecord {
  double t;
  double x;
  double x_dot;
  double x_ddot;
  double theta;
  double theta_dot;
  double theta_ddot;
  double i_joint;
  double mu;
  double phi_v_ddot;
  double phi_f_ddot;
  double tau_v_inertial;
  double tau_f_inertial;
  double coupling_on_v;
  double coupling_on_f;
} PfvaRecord;

typedef struct PfvaSweepRow {
  double rho;
  double peak_abs_coupling_torque;
  double peak_mu;
  double mean_mu;
  double peak_abs_tau_v_inertial;
  double peak_abs_tau_f_inertial;
} PfvaSweepRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL after a
// successful call. Valid until the next `pfva_*` call on the same thread.
const char *pfva_last_error(void);

// Static name of a status code, e.g. `"singular_ratio"`.
const char *pfva_status_name(enum PfvaStatus status);

// # Safety
// `out` must be NULL or point to writable memory for one `PfvaReductions`.
enum PfvaStatus pfva_reductions_from_rho(double rho, struct PfvaReductions *out);

// Output speed for the given input speeds.
//
// # Safety
// `out` must be NULL or point to a writable `double`.
enum PfvaStatus pfva_output_velocity(double omega_v, double omega_f, double rho, double *out);

// Input torques that balance an output torque.
//
// # Safety
// `tau_v` and `tau_f` must be NULL or point to writable `double`s.
enum PfvaStatus pfva_input_torques(double tau_o, double rho, double *tau_v, double *tau_f);

// # Safety
// `out` must be NULL or point to a writable `double`.
enum PfvaStatus pfva_coupling_mu(double rho, double i_joint, double *out);

// # Safety
// `out` must be NULL or point to a writable `double`.
enum PfvaStatus pfva_coupling_sensitivity(double rho, double i_joint, double *out);

// # Safety
// `out` must be NULL or point to a writable `PfvaMatrix2`.
enum PfvaStatus pfva_reflected_inertia(double rho,
                                       double i_joint,
                                       double i_mv,
                                       double i_mf,
                                       struct PfvaMatrix2 *out);

// Reflected inertia as ρ grows without bound.
//
// # Safety
// `out` must be NULL or point to a writable `PfvaMatrix2`.
enum PfvaStatus pfva_limit_reflected_inertia(double i_joint,
                                             double i_mv,
                                             double i_mf,
                                             struct PfvaMatrix2 *out);

// Built-in default configuration.
//
// # Safety
// `out` must be NULL or point to a writable handle slot.
enum PfvaStatus pfva_config_default(struct PfvaConfig **out);

// Parse `key = value` configuration text.
//
// # Safety
// `text` must be NULL or a NUL-terminated string; `out` as for
// [`pfva_config_default`].
enum PfvaStatus pfva_config_parse(const char *text, struct PfvaConfig **out);

// # Safety
// `path` must be NULL or a NUL-terminated string; `out` as for
// [`pfva_config_default`].
enum PfvaStatus pfva_config_load(const char *path, struct PfvaConfig **out);

// Set the allocation policy by name (`velocity_only`, `force_only`,
// `min_norm`).
//
// # Safety
// `cfg` must be NULL or a live handle; `policy` NULL or NUL-terminated.
enum PfvaStatus pfva_config_set_policy(struct PfvaConfig *cfg, const char *policy);

// # Safety
// `cfg` must be NULL or a handle from a `pfva_config_*` constructor that has
// not been freed.
void pfva_config_free(struct PfvaConfig *cfg);

// One run at `rho` under `cfg`.
//
// # Safety
// `cfg` must be NULL or a live handle; `out` NULL or a writable handle slot.
enum PfvaStatus pfva_simulate(const struct PfvaConfig *cfg, double rho, struct PfvaRun **out);

// Number of samples in a run; 0 for NULL.
//
// # Safety
// `run` must be NULL or a live handle.
size_t pfva_run_len(const struct PfvaRun *run);

// # Safety
// `run` must be NULL or a live handle; `out` NULL or writable.
enum PfvaStatus pfva_run_record(const struct PfvaRun *run, size_t index, struct PfvaRecord *out);

// Write the run as CSV, creating parent directories.
//
// # Safety
// `run` must be NULL or a live handle; `path` NULL or NUL-terminated.
enum PfvaStatus pfva_run_write_csv(const struct PfvaRun *run, const char *path);

// # Safety
// `run` must be NULL or a handle from [`pfva_simulate`] that has not been
// freed.
void pfva_run_free(struct PfvaRun *run);

// Summaries for `n` values of ρ, in the given order. With `rhos` NULL and
// `n` 0 the configured sweep is used.
//
// # Safety
// `cfg` must be NULL or a live handle; `rhos` NULL or `n` readable doubles;
// `out` NULL or a writable handle slot.
enum PfvaStatus pfva_sweep(const struct PfvaConfig *cfg,
                           const double *rhos,
                           size_t n,
                           struct PfvaSweep **out);

// Number of rows in a sweep; 0 for NULL.
//
// # Safety
// `sweep` must be NULL or a live handle.
size_t pfva_sweep_len(const struct PfvaSweep *sweep);

// # Safety
// `sweep` must be NULL or a live handle; `out` NULL or writable.
enum PfvaStatus pfva_sweep_row(const struct PfvaSweep *sweep,
                               size_t index,
                               struct PfvaSweepRow *out);

// # Safety
// `sweep` must be NULL or a live handle; `path` NULL or NUL-terminated.
enum PfvaStatus pfva_sweep_write_csv(const struct PfvaSweep *sweep, const char *path);

// # Safety
// `sweep` must be NULL or a handle from [`pfva_sweep`] that has not been
// freed.
void pfva_sweep_free(struct PfvaSweep *sweep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFVA_H */
