#ifndef SMS_H
#define SMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SmsStatus {
  SMS_STATUS_OK = 0,
  SMS_STATUS_NULL_POINTER = 1,
  SMS_STATUS_INVALID_ARGUMENT = 2,
  SMS_STATUS_CONFIG_ERROR = 3,
  SMS_STATUS_DIMENSION_ERROR = 4,
  SMS_STATUS_RUNTIME_ERROR = 5,
  SMS_STATUS_PANIC = 6,
} SmsStatus;

// Opaque objective handle.
typedef struct SmsObjective SmsObjective;

// Opaque run result handle.
typedef struct SmsRunResult SmsRunResult;

// Objective function supplied by the caller. Receives `n` coordinates and
// the `user_data` pointer given at construction.
typedef double (*SmsObjectiveFn)(const double *x, size_t n, void *user_data);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates an objective for benchmark `id` (`"f1"` .. `"f24"`).
//
// # Safety
// `id` must be a NUL-terminated string and `out` a valid pointer.
enum SmsStatus sms_objective_from_benchmark(const char *id,
                                            size_t n,
                                            uint64_t instance_seed,
                                            struct SmsObjective **out);

// Wraps a caller-supplied function over the box `[low, high]^n`.
//
// # Safety
// `low` and `high` must point to `n` doubles; `f` must stay callable with
// `user_data` for the lifetime of the handle.
enum SmsStatus sms_objective_from_callback(SmsObjectiveFn f,
                                           void *user_data,
                                           size_t n,
                                           const double *low,
                                           const double *high,
                                           struct SmsObjective **out);

// Releases an objective. Null is ignored.
//
// # Safety
// `obj` must come from an `sms_objective_*` constructor and not be used afterwards.
void sms_objective_free(struct SmsObjective *obj);

// # Safety
// `obj` and `out` must be valid pointers.
enum SmsStatus sms_objective_dim(const struct SmsObjective *obj, size_t *out);

// Copies the box into `low` and `high`, each of length `len == dim`.
//
// # Safety
// `low` and `high` must point to `len` writable doubles.
enum SmsStatus sms_objective_bounds(const struct SmsObjective *obj,
                                    double *low,
                                    double *high,
                                    size_t len);

// Evaluates the objective once and counts the evaluation.
//
// # Safety
// `x` must point to `len` doubles and `out` must be valid.
enum SmsStatus sms_objective_evaluate(struct SmsObjective *obj,
                                      const double *x,
                                      size_t len,
                                      double *out);

// Evaluations performed through this handle, including optimizer runs.
//
// # Safety
// `obj` and `out` must be valid pointers.
enum SmsStatus sms_objective_eval_count(const struct SmsObjective *obj, uint64_t *out);

// Runs SMS with the default state schedule.
//
// # Safety
// `obj` and `out` must be valid pointers.
enum SmsStatus sms_run_sms(struct SmsObjective *obj,
                           size_t population,
                           size_t generations,
                           uint64_t seed,
                           struct SmsRunResult **out);

// Runs global-best PSO (c1 = c2 = 2, inertia 0.9 to 0.2).
//
// # Safety
// `obj` and `out` must be valid pointers.
enum SmsStatus sms_run_pso(struct SmsObjective *obj,
                           size_t population,
                           size_t generations,
                           uint64_t seed,
                           struct SmsRunResult **out);

// Runs DE/rand/1/bin with crossover rate `cr` and scale `f`.
//
// # Safety
// `obj` and `out` must be valid pointers.
enum SmsStatus sms_run_de(struct SmsObjective *obj,
                          size_t population,
                          size_t generations,
                          double cr,
                          double f,
                          uint64_t seed,
                          struct SmsRunResult **out);

// Releases a run result. Null is ignored.
//
// # Safety
// `res` must come from an `sms_run_*` call and not be used afterwards.
void sms_result_free(struct SmsRunResult *res);

// # Safety
// `res` and `out` must be valid pointers.
enum SmsStatus sms_result_best_value(const struct SmsRunResult *res, double *out);

// Copies the best position; `len` must equal the objective dimension.
//
// # Safety
// `out` must point to `len` writable doubles.
enum SmsStatus sms_result_best_position(const struct SmsRunResult *res, double *out, size_t len);

// # Safety
// `res` and `out` must be valid pointers.
enum SmsStatus sms_result_trace_len(const struct SmsRunResult *res, size_t *out);

// Copies the best-so-far trace; `len` must equal the trace length.
//
// # Safety
// `out` must point to `len` writable doubles.
enum SmsStatus sms_result_trace(const struct SmsRunResult *res, double *out, size_t len);

// # Safety
// `res` and `out` must be valid pointers.
enum SmsStatus sms_result_evaluations(const struct SmsRunResult *res, uint64_t *out);

// Two-sided Wilcoxon rank-sum test. `exact` receives 1 when the exact
// distribution was used and 0 for the normal approximation; it may be null.
//
// # Safety
// `a` and `b` must point to `na` and `nb` doubles; outputs must be valid.
enum SmsStatus sms_wilcoxon_rank_sum(const double *a,
                                     size_t na,
                                     const double *b,
                                     size_t nb,
                                     double *rank_sum,
                                     double *p_two_sided,
                                     int32_t *exact);

// Message of the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *sms_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *sms_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMS_H */
