#ifndef GALLAI_H
#define GALLAI_H

/* Generated by cbindgen from the gallai-capi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of an engine call. Numeric values are stable and match the CLI
// exit codes, so a wrapper can forward them unchanged.
typedef enum GallaiStatus {
  // The call succeeded. For `gallai_verify`: the witness is valid.
  GALLAI_STATUS_OK = 0,
  // A witness or sweep failed verification, or an internal invariant broke.
  GALLAI_STATUS_INVALID = 1,
  // A usage error: null pointer, invalid UTF-8, or an argument that
  // violates a precondition (for example a coloring with more colors
  // than the requested k).
  GALLAI_STATUS_USAGE = 2,
  // The construction would exceed the engine's resource budget.
  GALLAI_STATUS_RESOURCE = 3,
  // Input text did not parse in the expected `gallai-* v1` format.
  GALLAI_STATUS_FORMAT = 4,
} GallaiStatus;

// Opaque engine handle. Owns the base point sequence and the resource
// budget shared by every operation. Create with `gallai_engine_new`,
// release with `gallai_engine_free`. The handle is immutable after
// creation, so sharing one engine across threads is safe.
typedef struct GallaiEngine GallaiEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create an engine.
//
// `base_spec` is either a preset name (`moment` or `fig1`) or the complete
// text of a `gallai-base v1` file describing the point sequence whose
// prefixes are the sets all homothetic copies replicate. `max_points` caps
// the size of any constructed point set; pass 0 for the default cap of
// 1,000,000 points.
//
// Returns null on failure; `gallai_last_error` then describes the problem.
//
// # Safety
// `base_spec` must be null or a valid NUL-terminated string.
struct GallaiEngine *gallai_engine_new(const char *base_spec, size_t max_points);

// Release an engine created by `gallai_engine_new`. Null is ignored.
//
// # Safety
// `engine` must be null or a pointer obtained from `gallai_engine_new`
// that has not been freed already.
void gallai_engine_free(struct GallaiEngine *engine);

// Message for the most recent failure on the calling thread, empty after a
// success. The pointer stays valid until the next engine call on the same
// thread; copy the text if it must outlive that.
const char *gallai_last_error(void);

// Build a witness set and return it as `gallai-set v1` text in `*out_text`.
//
// With `m == 0` the full set `phi(n, k)` is built: every k-coloring of it
// contains a monochromatic homothetic copy of the first n base points.
// With `m >= 1` the intermediate set `delta(n, k, m)` is built instead.
// The caller owns `*out_text` and releases it with `gallai_string_free`.
//
// # Safety
// `engine` must come from `gallai_engine_new`; `out_text` must be a valid
// write target.
enum GallaiStatus gallai_build_set(const struct GallaiEngine *engine,
                                   size_t n,
                                   uint64_t k,
                                   uint64_t m,
                                   char **out_text);

// Run the extraction algorithm on a coloring and return the witness as
// `gallai-witness v1` text in `*out_witness`.
//
// `coloring_text` is a `gallai-coloring v1` document whose domain must
// cover the target set. With `m == 0` the target is `phi(n, k)` and the
// witness is a single homothety; with `m >= 1` the target is
// `delta(n, k, m)` and the witness is an anchored scalar system. The
// coloring may use fewer than `k` colors but never more. The caller owns
// `*out_witness`.
//
// # Safety
// `engine` must come from `gallai_engine_new`; `coloring_text` must be a
// valid NUL-terminated string; `out_witness` must be a valid write target.
enum GallaiStatus gallai_extract(const struct GallaiEngine *engine,
                                 size_t n,
                                 uint64_t k,
                                 uint64_t m,
                                 const char *coloring_text,
                                 char **out_witness);

// Check a witness against a coloring and a target set, all given as text.
//
// Returns `Ok` when the witness is valid. Returns `Invalid` when it is
// well-formed but wrong; `gallai_last_error` then lists the violations
// (containment, monochromaticity, or a broken scalar ladder).
//
// # Safety
// `engine` must come from `gallai_engine_new`; the three text arguments
// must be valid NUL-terminated strings.
enum GallaiStatus gallai_verify(const struct GallaiEngine *engine,
                                const char *witness_text,
                                const char *coloring_text,
                                const char *set_text);

// Re-verify the extraction pipeline on `trials` pseudorandom colorings and
// return the outcome as `gallai-sweep v1` text in `*out_report`.
//
// The target set is `phi(n, k)` when `m == 0`, otherwise `delta(n, k, m)`.
// Colorings are derived deterministically from `seed`, so a run is exactly
// reproducible. Returns `Ok` when every trial passed and `Invalid` when at
// least one failed; in both cases `*out_report` is set and the report's
// `first_failure` field names the first failing seed. The caller owns
// `*out_report`.
//
// # Safety
// `engine` must come from `gallai_engine_new`; `out_report` must be a
// valid write target.
enum GallaiStatus gallai_random_sweep(const struct GallaiEngine *engine,
                                      size_t n,
                                      uint64_t k,
                                      uint64_t m,
                                      uint64_t trials,
                                      uint64_t seed,
                                      char **out_report);

// Release a string returned through any `out` parameter. Null is ignored.
//
// # Safety
// `text` must be null or a string returned by this library that has not
// been freed already.
void gallai_string_free(char *text);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GALLAI_H */
