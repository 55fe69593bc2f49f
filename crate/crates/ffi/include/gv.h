#ifndef GV_H
#define GV_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum GvStatus {
  GV_STATUS_OK = 0,
  GV_STATUS_NULL_POINTER = 1,
  GV_STATUS_INVALID_ARGUMENT = 2,
  GV_STATUS_OUT_OF_RANGE = 3,
  GV_STATUS_COMPUTE_FAILED = 4,
  GV_STATUS_PANIC = 5,
} GvStatus;

// Opaque engine handle.
typedef struct GvEngine GvEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. Valid until the
// next failing call on the same thread.
const char *gv_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void gv_string_free(char *s);

// Creates an engine for the framing vector `gamma[0..len]`.
//
// # Safety
// `gamma` must point to `len` readable integers; `out` must be writable.
enum GvStatus gv_engine_new(const int64_t *gamma, size_t len, struct GvEngine **out);

// Creates an engine from a surface preset name (P2, F0, F1, B2, B3).
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum GvStatus gv_engine_from_preset(const char *name, struct GvEngine **out);

// Destroys an engine. Null is ignored.
//
// # Safety
// `engine` must come from `gv_engine_new` and not have been freed.
void gv_engine_free(struct GvEngine *engine);

// Number of entries of the framing vector.
//
// # Safety
// `engine` must be a live handle or null.
size_t gv_engine_rank(const struct GvEngine *engine);

// Computes reports for every nonzero degree with total at most
// `max_total_degree`, replacing earlier results. Reports are stored in
// graded-lex order of the degree.
//
// # Safety
// `engine` must be a live handle.
enum GvStatus gv_engine_compute(struct GvEngine *engine, uint32_t max_total_degree);

// Number of stored reports.
//
// # Safety
// `engine` must be a live handle or null.
size_t gv_engine_report_count(const struct GvEngine *engine);

// Report `index` as a JSON object string.
//
// # Safety
// `engine` must be a live handle; `out` must be writable.
enum GvStatus gv_engine_report_json(const struct GvEngine *engine, size_t index, char **out);

// Whether `t G` is an integral polynomial for report `index`.
//
// # Safety
// `engine` must be a live handle; `out` must be writable.
enum GvStatus gv_engine_report_integral(const struct GvEngine *engine, size_t index, bool *out);

// Copies the degree of report `index` into `degree[0..len]`; `len` must
// equal the engine rank.
//
// # Safety
// `engine` must be a live handle; `degree` must have room for `len` values.
enum GvStatus gv_engine_report_degree(const struct GvEngine *engine,
                                      size_t index,
                                      uint32_t *degree,
                                      size_t len);

// GV number `n^genus` of report `index` as a decimal string.
//
// # Safety
// `engine` must be a live handle; `out` must be writable.
enum GvStatus gv_engine_gv_number(const struct GvEngine *engine,
                                  size_t index,
                                  uint32_t genus,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GV_H */
