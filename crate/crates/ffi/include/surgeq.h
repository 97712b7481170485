#ifndef SURGEQ_H
#define SURGEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum SurgeqStatus {
  SURGEQ_STATUS_OK = 0,
  // A required pointer argument was null.
  SURGEQ_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not UTF-8.
  SURGEQ_STATUS_INVALID_UTF8 = 2,
  // Malformed presentation, relation name or other input.
  SURGEQ_STATUS_PARSE = 3,
  // Input well-formed but outside the operation's preconditions.
  SURGEQ_STATUS_PRECONDITION = 4,
  // Result does not fit the output type.
  SURGEQ_STATUS_OVERFLOW = 5,
  // Internal error; the library state is unaffected.
  SURGEQ_STATUS_PANIC = 6,
} SurgeqStatus;

// Surgery-equivalence verdict; values match the command-line exit codes.
typedef enum SurgeqVerdict {
  SURGEQ_VERDICT_EQUIVALENT = 0,
  SURGEQ_VERDICT_NOT_EQUIVALENT = 1,
  SURGEQ_VERDICT_UNKNOWN = 4,
} SurgeqVerdict;

// Opaque framed-link presentation.
typedef struct SurgeqLink SurgeqLink;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON presentation into a new handle stored in `*out`.
//
// # Safety
// `json` is a NUL-terminated string; `out` is a valid pointer.
enum SurgeqStatus surgeq_link_from_json(const char *json, struct SurgeqLink **out);

// Releases a handle; null is ignored.
//
// # Safety
// `link` is null or a handle from this library, freed at most once.
void surgeq_link_free(struct SurgeqLink *link);

// Number of components, or 0 for a null handle.
//
// # Safety
// `link` is null or a live handle.
size_t surgeq_link_components(const struct SurgeqLink *link);

// Writes the presentation back as JSON.
//
// # Safety
// `link` is a live handle; `out` is a valid pointer.
enum SurgeqStatus surgeq_link_to_json(const struct SurgeqLink *link, char **out);

// New handle for the integral expansion of `link`.
//
// # Safety
// `link` is a live handle; `out` is a valid pointer.
enum SurgeqStatus surgeq_link_expand(const struct SurgeqLink *link, struct SurgeqLink **out);

// Invariants report as JSON; `max_length == 0` selects the default.
//
// # Safety
// `link` is a live handle; `out` is a valid pointer.
enum SurgeqStatus surgeq_invariants_json(const struct SurgeqLink *link,
                                         size_t max_length,
                                         char **out);

// Compares two links under `relation` (`"integral2"`, `"rational2"` or
// `"k=K"`). The verdict goes to `*verdict`; if `certificate` is not null it
// receives the full verdict as JSON.
//
// # Safety
// Handles are live, `relation` is a NUL-terminated string, `verdict` is
// valid and `certificate` is null or valid.
enum SurgeqStatus surgeq_compare(const struct SurgeqLink *a,
                                 const struct SurgeqLink *b,
                                 const char *relation,
                                 enum SurgeqVerdict *verdict,
                                 char **certificate);

// `L(n, q)` against `L(n2, q2)` under integral 2-surgery equivalence.
//
// # Safety
// `verdict` is a valid pointer.
enum SurgeqStatus surgeq_lens_compare(int64_t n,
                                      int64_t q,
                                      int64_t n2,
                                      int64_t q2,
                                      enum SurgeqVerdict *verdict);

// Rank of `H₃(F/F_k)` for the free group `F` of rank `m`.
//
// # Safety
// `out` is a valid pointer.
enum SurgeqStatus surgeq_nilpotent_h3_rank(uint64_t m, uint32_t k, uint64_t *out);

// Message for the last failed call on this thread, or null. Owned by the
// library and valid until the next call on this thread.
const char *surgeq_last_error(void);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` is null or a string from this library, freed at most once.
void surgeq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURGEQ_H */
