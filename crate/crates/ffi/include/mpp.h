#ifndef MPP_H
#define MPP_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MppObjective {
  MPP_OBJECTIVE_MAKESPAN = 0,
  MPP_OBJECTIVE_MAX_DISTANCE = 1,
  MPP_OBJECTIVE_TOTAL_TIME = 2,
  MPP_OBJECTIVE_TOTAL_DISTANCE = 3,
} MppObjective;

/**
 * Result code of every fallible call.
 */
typedef enum MppStatus {
  MPP_STATUS_OK = 0,
  /**
   * A null pointer, non-UTF-8 string or out-of-range argument.
   */
  MPP_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed or inconsistent instance or plan.
   */
  MPP_STATUS_INVALID_INPUT = 2,
  MPP_STATUS_INFEASIBLE = 3,
  MPP_STATUS_TIMEOUT = 4,
  MPP_STATUS_EXTERNAL_SOLVER = 5,
  /**
   * Unexpected failure, including a caught panic.
   */
  MPP_STATUS_INTERNAL = 6,
} MppStatus;

/**
 * Opaque problem instance.
 */
typedef struct MppInstance MppInstance;

/**
 * Opaque plan.
 */
typedef struct MppPlan MppPlan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mpp_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *mpp_version(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void mpp_string_free(char *s);

/**
 * Parses an instance from its text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum MppStatus mpp_instance_parse(const char *text, struct MppInstance **out);

/**
 * Random instance on a `rows x cols` grid with `obstacle_percent` of the
 * cells removed.
 *
 * # Safety
 * `out` must be writable.
 */
enum MppStatus mpp_instance_generate_grid(size_t rows,
                                          size_t cols,
                                          double obstacle_percent,
                                          size_t robots,
                                          uint64_t seed,
                                          struct MppInstance **out);

/**
 * Text form of an instance; release with [`mpp_string_free`]. Null on a
 * null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
char *mpp_instance_to_text(const struct MppInstance *inst);

/**
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t mpp_instance_robot_count(const struct MppInstance *inst);

/**
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t mpp_instance_vertex_count(const struct MppInstance *inst);

/**
 * # Safety
 * `inst` must be null or a handle not yet freed.
 */
void mpp_instance_free(struct MppInstance *inst);

/**
 * Solves `inst` for `objective` with the embedded solver. `split` is the
 * number of time stages (1 for an exact solve); `time_limit_seconds <= 0`
 * means no limit. On success `*out_plan` receives a new plan and
 * `*out_value` (if not null) the achieved objective value.
 *
 * # Safety
 * `inst` must be a live handle, `out_plan` writable, `out_value` null or
 * writable.
 */
enum MppStatus mpp_solve(const struct MppInstance *inst,
                         enum MppObjective objective,
                         size_t split,
                         double time_limit_seconds,
                         struct MppPlan **out_plan,
                         size_t *out_value);

/**
 * Parses a plan from its text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum MppStatus mpp_plan_parse(const char *text, struct MppPlan **out);

/**
 * Text form of a plan; release with [`mpp_string_free`]. Null on a null
 * handle.
 *
 * # Safety
 * `plan` must be null or a live handle.
 */
char *mpp_plan_to_text(const struct MppPlan *plan);

/**
 * Number of steps `T`; a plan has `T + 1` configurations.
 *
 * # Safety
 * `plan` must be null or a live handle.
 */
size_t mpp_plan_horizon(const struct MppPlan *plan);

/**
 * # Safety
 * `plan` must be null or a live handle.
 */
size_t mpp_plan_robot_count(const struct MppPlan *plan);

/**
 * Vertex of `robot` at step `t`.
 *
 * # Safety
 * `plan` must be a live handle and `out` writable.
 */
enum MppStatus mpp_plan_position(const struct MppPlan *plan, size_t robot, size_t t, size_t *out);

/**
 * # Safety
 * `plan` must be null or a handle not yet freed.
 */
void mpp_plan_free(struct MppPlan *plan);

/**
 * Counts the violations of `plan` on `inst` into `*out_count`; zero means
 * the plan is valid. The first violation, if any, becomes the last error
 * message.
 *
 * # Safety
 * Both handles must be live and `out_count` writable.
 */
enum MppStatus mpp_validate(const struct MppInstance *inst,
                            const struct MppPlan *plan,
                            size_t *out_count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MPP_H */
