#ifndef LEIBNIZ_H
#define LEIBNIZ_H

#include <stdbool.h>
#include <stddef.h>

// Which identity to test.
typedef enum LeibnizSide {
  LEIBNIZ_SIDE_RIGHT = 0,
  LEIBNIZ_SIDE_LEFT = 1,
  LEIBNIZ_SIDE_SYMMETRIC = 2,
  LEIBNIZ_SIDE_LIE = 3,
} LeibnizSide;

// Outcome of a call.
typedef enum LeibnizStatus {
  LEIBNIZ_STATUS_OK = 0,
  LEIBNIZ_STATUS_NULL_POINTER = 1,
  LEIBNIZ_STATUS_INVALID_UTF8 = 2,
  LEIBNIZ_STATUS_PARSE = 3,
  LEIBNIZ_STATUS_UNKNOWN_ID = 4,
  LEIBNIZ_STATUS_INVALID_ARGUMENT = 5,
  LEIBNIZ_STATUS_COMPUTE = 6,
  LEIBNIZ_STATUS_PANIC = 7,
} LeibnizStatus;

// Opaque algebra handle.
typedef struct LeibnizAlgebra LeibnizAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null.
// The pointer stays valid until the next library call on this thread.
const char *leibniz_last_error(void);

// Parses an algebra file (`{"name","dim","brackets"}`, 1-based indices).
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum LeibnizStatus leibniz_algebra_from_json(const char *json, struct LeibnizAlgebra **out);

// Copies a bundled catalog algebra.
//
// # Safety
// `id` must be a nul-terminated string and `out` a valid pointer.
enum LeibnizStatus leibniz_algebra_from_catalog(const char *id, struct LeibnizAlgebra **out);

// Releases a handle. Null is accepted.
//
// # Safety
// `a` must come from this library and not be used afterwards.
void leibniz_algebra_free(struct LeibnizAlgebra *a);

// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum LeibnizStatus leibniz_algebra_dim(const struct LeibnizAlgebra *a, size_t *out);

// The algebra as JSON; free the result with [`leibniz_string_free`].
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum LeibnizStatus leibniz_algebra_to_json(const struct LeibnizAlgebra *a, char **out);

// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum LeibnizStatus leibniz_check_identity(const struct LeibnizAlgebra *a,
                                          enum LeibnizSide side,
                                          bool *out);

// Whether a nondegenerate symmetric invariant form exists.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum LeibnizStatus leibniz_is_metric(const struct LeibnizAlgebra *a, bool *out);

// Dimension of `HL^degree` with adjoint coefficients.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum LeibnizStatus leibniz_cohomology_dim(const struct LeibnizAlgebra *a,
                                          size_t degree,
                                          size_t *out);

// Graphviz source of the deformation graph in dimension 4 or 5.
//
// # Safety
// `out` must be a valid pointer.
enum LeibnizStatus leibniz_graph_dot(size_t dim, bool unicode, char **out);

// Replays the bundled claims and counts discrepancies.
//
// # Safety
// `discrepancies` must be a valid pointer.
enum LeibnizStatus leibniz_verify_catalog(bool scans, size_t *discrepancies);

// Releases a string returned by the library. Null is accepted.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void leibniz_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEIBNIZ_H */
