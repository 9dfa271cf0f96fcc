#ifndef LISTAGREE_H
#define LISTAGREE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum LaStatus {
  LA_STATUS_OK = 0,
  LA_STATUS_NULL_POINTER = 1,
  LA_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, bad parameters, or faces outside the complex.
  LA_STATUS_INVALID_INPUT = 3,
  // An exhaustive search exceeded its size guard.
  LA_STATUS_SEARCH_TOO_LARGE = 4,
  // A mathematical precondition does not hold for the input.
  LA_STATUS_PRECONDITION = 5,
  LA_STATUS_IO = 6,
  LA_STATUS_PANIC = 7,
} LaStatus;

// A list of local assignments on the k-faces of a complex.
typedef struct LaAssignment LaAssignment;

// A weighted pure simplicial complex.
typedef struct LaComplex LaComplex;

// The result of an experiment run.
typedef struct LaReport LaReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent failure on this thread. Valid until the next
// call into this library from the same thread.
const char *la_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` is null or was returned by this library and not yet freed.
void la_string_free(char *s);

// Parses a complex from `{"d": int, "maximal_faces": [[int, ...], ...]}`.
//
// # Safety
// `json` is a NUL-terminated string; `out` is writable.
enum LaStatus la_complex_from_json(const char *json, struct LaComplex **out);

// The complete `d`-dimensional complex on `n` vertices.
//
// # Safety
// `out` is writable.
enum LaStatus la_complex_complete(size_t n, size_t d, struct LaComplex **out);

// Number of `i`-faces, zero when `i` exceeds the dimension.
//
// # Safety
// `x` is a live handle; `out` is writable.
enum LaStatus la_complex_face_count(const struct LaComplex *x, size_t i, size_t *out);

// # Safety
// `x` is null or a live handle.
void la_complex_free(struct LaComplex *x);

// Parses an l-assignment `{"k", "l", "faces": [{"face", "lists"}]}` on `x`.
//
// # Safety
// `x` is a live handle; `json` is NUL-terminated; `out` is writable.
enum LaStatus la_assignment_from_json(const struct LaComplex *x,
                                      const char *json,
                                      struct LaAssignment **out);

// A random agreeing l-assignment on the k-faces of `x`, 2-locally-differing
// when `differing` is set. Deterministic in `seed`.
//
// # Safety
// `x` is a live handle; `out` is writable.
enum LaStatus la_assignment_random_agreeing(const struct LaComplex *x,
                                            size_t k,
                                            size_t l,
                                            bool differing,
                                            uint64_t seed,
                                            struct LaAssignment **out);

// Serializes an l-assignment to JSON.
//
// # Safety
// `a` is a live handle; `out` is writable.
enum LaStatus la_assignment_to_json(const struct LaAssignment *a, char **out);

// Exact rejection probability of the list-agreement tester, as `"n/d"`.
//
// # Safety
// `a` is a live handle; `out` is writable.
enum LaStatus la_list_agreement_rejection(const struct LaAssignment *a, char **out);

// Exact distance to the agreeing l-assignments, as `"n/d"`.
//
// # Safety
// `a` is a live handle; `out` is writable.
enum LaStatus la_dist_to_agreeing(const struct LaAssignment *a, char **out);

// # Safety
// `a` is null or a live handle.
void la_assignment_free(struct LaAssignment *a);

// Runs an experiment from its JSON configuration.
//
// # Safety
// `config` is NUL-terminated; `out` is writable.
enum LaStatus la_run_experiment(const char *config, struct LaReport **out);

// Whether no check in the report failed.
//
// # Safety
// `r` is a live handle; `out` is writable.
enum LaStatus la_report_passed(const struct LaReport *r, bool *out);

// Renders a report; `format` is `"json"` or `"csv"`.
//
// # Safety
// `r` is a live handle; `format` is NUL-terminated; `out` is writable.
enum LaStatus la_report_render(const struct LaReport *r, const char *format, char **out);

// # Safety
// `r` is null or a live handle.
void la_report_free(struct LaReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LISTAGREE_H */
