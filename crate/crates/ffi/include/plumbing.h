#ifndef PLUMBING_H
#define PLUMBING_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum PlumbingStatus {
  // Success.
  PLUMBING_STATUS_OK = 0,
  // A required pointer argument was null.
  PLUMBING_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  PLUMBING_STATUS_INVALID_UTF8 = 2,
  // The input could not be parsed.
  PLUMBING_STATUS_PARSE_ERROR = 3,
  // The input parsed but violates a precondition.
  PLUMBING_STATUS_INVALID_INPUT = 4,
  // An internal error; please report it.
  PLUMBING_STATUS_INTERNAL = 5,
} PlumbingStatus;

// An A∞ category.
typedef struct PlumbingAinf PlumbingAinf;

// A DG category built from a plumbing spec.
typedef struct PlumbingDg PlumbingDg;

// A verification report.
typedef struct PlumbingReport PlumbingReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or the empty string.
// The pointer stays valid until the next library call on this thread.
const char *plumbing_last_error(void);

// Release a string returned by the library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void plumbing_string_free(char *s);

// Build the DG category of a plumbing spec given as JSON text. Relative
// triangulation file names are resolved against `base_dir`, which may be
// null when the spec is self-contained.
//
// # Safety
// `json` must be a nul-terminated string, `base_dir` null or nul-terminated,
// `out` a valid pointer.
enum PlumbingStatus plumbing_dg_from_json(const char *json,
                                          const char *base_dir,
                                          struct PlumbingDg **out);

// Release a DG category. Null is ignored.
//
// # Safety
// `dg` must be null or a handle from this library, not yet freed.
void plumbing_dg_free(struct PlumbingDg *dg);

// Number of objects.
//
// # Safety
// `dg` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_dg_object_count(const struct PlumbingDg *dg, size_t *out);

// Rank of the hom complex from object `source` to object `target` in the
// given degree (0 when there are no generators).
//
// # Safety
// `dg` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_dg_hom_rank(const struct PlumbingDg *dg,
                                         size_t source,
                                         size_t target,
                                         int64_t degree,
                                         size_t *out);

// Check the DG category axioms.
//
// # Safety
// `dg` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_dg_verify(const struct PlumbingDg *dg, struct PlumbingReport **out);

// The A∞ category of a DG category (signs twisted by the dimension).
//
// # Safety
// `dg` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_dg_to_ainf(const struct PlumbingDg *dg, struct PlumbingAinf **out);

// Build an A∞ category from count-file JSON text.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum PlumbingStatus plumbing_ainf_from_json(const char *json, struct PlumbingAinf **out);

// Release an A∞ category. Null is ignored.
//
// # Safety
// `ainf` must be null or a handle from this library, not yet freed.
void plumbing_ainf_free(struct PlumbingAinf *ainf);

// Check the A∞ relations for up to `d_max` inputs; large arities are
// sampled with `seed`.
//
// # Safety
// `ainf` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_ainf_verify(const struct PlumbingAinf *ainf,
                                         size_t d_max,
                                         uint64_t seed,
                                         struct PlumbingReport **out);

// The minimal model, with operations computed up to `d_max` inputs.
//
// # Safety
// `ainf` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_ainf_minimal_model(const struct PlumbingAinf *ainf,
                                                size_t d_max,
                                                struct PlumbingAinf **out);

// Export as count-file JSON. Release the string with [`plumbing_string_free`].
//
// # Safety
// `ainf` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_ainf_to_json(const struct PlumbingAinf *ainf, char **out);

// Orientation checks: edge orders, walls, boundary signs and sign ledgers.
//
// # Safety
// `out` must be a valid pointer.
enum PlumbingStatus plumbing_verify_signs(size_t d_max,
                                          size_t samples,
                                          uint64_t seed,
                                          struct PlumbingReport **out);

// Stratification counts of the moduli polytopes for up to `d_max` inputs.
//
// # Safety
// `out` must be a valid pointer.
enum PlumbingStatus plumbing_verify_polytopes(size_t d_max,
                                              uint64_t seed,
                                              struct PlumbingReport **out);

// Sign of the boundary stratum where a `d2`-input tree is grafted onto leaf
// `k+1` of a `d1`-input tree: writes 1 for `−1` and 0 for `+1`.
//
// # Safety
// `out` must be a valid pointer.
enum PlumbingStatus plumbing_stasheff_sign(size_t d1, size_t d2, size_t k, int32_t *out);

// Release a report. Null is ignored.
//
// # Safety
// `report` must be null or a handle from this library, not yet freed.
void plumbing_report_free(struct PlumbingReport *report);

// Number of entries.
//
// # Safety
// `report` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_report_len(const struct PlumbingReport *report, size_t *out);

// Number of failing entries.
//
// # Safety
// `report` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_report_failures(const struct PlumbingReport *report, size_t *out);

// Canonical JSON rendering. Release the string with [`plumbing_string_free`].
//
// # Safety
// `report` must be a valid handle and `out` a valid pointer.
enum PlumbingStatus plumbing_report_to_json(const struct PlumbingReport *report, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLUMBING_H */
