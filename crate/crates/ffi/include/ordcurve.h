#ifndef ORDCURVE_H
#define ORDCURVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum OrdStatus {
  ORD_STATUS_OK = 0,
  ORD_STATUS_NULL_POINTER = 1,
  ORD_STATUS_INVALID_ARGUMENT = 2,
  ORD_STATUS_PARSE = 3,
  ORD_STATUS_CONSISTENCY = 4,
  ORD_STATUS_NON_GENERIC_HYPERPLANE = 5,
  ORD_STATUS_DEGENERATE = 6,
  ORD_STATUS_FIXTURE = 7,
  ORD_STATUS_DOMAIN = 8,
  ORD_STATUS_OVERFLOW = 9,
  ORD_STATUS_PANIC = 10,
} OrdStatus;

// Graded free complex handle.
typedef struct OrdComplex OrdComplex;

// Built-in or file-loaded fixture handle.
typedef struct OrdFixture OrdFixture;

// Resolution shape handle.
typedef struct OrdShape OrdShape;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *ord_last_error(void);

// Library version as a static string.
const char *ord_version(void);

// Release a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed.
void ord_string_free(char *s);

// `k0` and `π'(n, d)`.
//
// # Safety
// Output pointers must be valid for writes.
enum OrdStatus ord_genus_bound(uint32_t n, uint64_t d, uint64_t *k0, int64_t *pi);

// Shape of a maximal-genus curve of degree `d` in `P^n`.
//
// # Safety
// `shape` must be valid for writes.
enum OrdStatus ord_shape_solve(uint32_t n, uint64_t d, struct OrdShape **shape);

// Hilbert–Burch shape for `n = 3`.
//
// # Safety
// `shape` must be valid for writes.
enum OrdStatus ord_shape3(uint64_t d, struct OrdShape **shape);

// Shape from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `shape` valid for writes.
enum OrdStatus ord_shape_from_json(const char *json, struct OrdShape **shape);

// New shape with `u` extra copies of `twist` in blocks `i` and `i + 1`.
//
// # Safety
// `shape` must be a live handle; `result` valid for writes.
enum OrdStatus ord_shape_add_redundancy(const struct OrdShape *shape,
                                        uint32_t i,
                                        int64_t twist,
                                        uint64_t u,
                                        struct OrdShape **result);

// JSON form of a shape; free with [`ord_string_free`].
//
// # Safety
// `shape` must be a live handle; `json` valid for writes.
enum OrdStatus ord_shape_to_json(const struct OrdShape *shape, char **json);

// Number of blocks `E_1..E_{n-1}`.
//
// # Safety
// `shape` must be a live handle; `count` valid for writes.
enum OrdStatus ord_shape_block_count(const struct OrdShape *shape, uint32_t *count);

// Number of distinct twists in block `E_i` (`1 <= i <= n-1`).
//
// # Safety
// `shape` must be a live handle; `len` valid for writes.
enum OrdStatus ord_shape_block_len(const struct OrdShape *shape, uint32_t i, uint32_t *len);

// Entry `j` of block `E_i`.
//
// # Safety
// `shape` must be a live handle; output pointers valid for writes.
enum OrdStatus ord_shape_block_entry(const struct OrdShape *shape,
                                     uint32_t i,
                                     uint32_t j,
                                     int64_t *twist,
                                     uint64_t *mult);

// Degree and genus encoded by a shape.
//
// # Safety
// `shape` must be a live handle; output pointers valid for writes.
enum OrdStatus ord_shape_degree_genus(const struct OrdShape *shape, int64_t *d, int64_t *g);

// Hilbert function of a shape at `h`.
//
// # Safety
// `shape` must be a live handle; `value` valid for writes.
enum OrdStatus ord_shape_hilbert_function(const struct OrdShape *shape, int64_t h, int64_t *value);

// # Safety
// `shape` must be null or a handle not yet freed.
void ord_shape_free(struct OrdShape *shape);

// Eagon–Northcott complex of a random linear matrix over `F_prime`
// (`prime = 0` for the rationals).
//
// # Safety
// `complex` must be valid for writes.
enum OrdStatus ord_en_random(uint32_t n,
                             uint64_t k0,
                             uint64_t prime,
                             uint64_t seed,
                             struct OrdComplex **complex);

// Parse a complex in the text fixture format (rational coefficients).
//
// # Safety
// `text` must be a NUL-terminated string; `complex` valid for writes.
enum OrdStatus ord_complex_parse(const char *text, struct OrdComplex **complex);

// Text form of a complex; free with [`ord_string_free`].
//
// # Safety
// `complex` must be a live handle; `text` valid for writes.
enum OrdStatus ord_complex_to_text(const struct OrdComplex *complex, char **text);

// Shape of a complex.
//
// # Safety
// `complex` must be a live handle; `shape` valid for writes.
enum OrdStatus ord_complex_shape(const struct OrdComplex *complex, struct OrdShape **shape);

// Symbolic check that consecutive differentials compose to zero. The
// JSON report may be requested through `report` (pass null to skip).
//
// # Safety
// `complex` must be a live handle; `pass` valid for writes; `report`
// null or valid for writes.
enum OrdStatus ord_complex_check(const struct OrdComplex *complex, bool *pass, char **report);

// Rank conditions at `trials` random points over `F_prime` (`0` for the
// rationals).
//
// # Safety
// `complex` must be a live handle; `pass` valid for writes; `report`
// null or valid for writes.
enum OrdStatus ord_complex_exactness(const struct OrdComplex *complex,
                                     uint32_t trials,
                                     uint64_t seed,
                                     uint64_t prime,
                                     bool *pass,
                                     char **report);

// # Safety
// `complex` must be null or a handle not yet freed.
void ord_complex_free(struct OrdComplex *complex);

// Load a built-in fixture (`"ex1"` or `"ex2"`).
//
// # Safety
// `id` must be a NUL-terminated string; `fixture` valid for writes.
enum OrdStatus ord_fixture_load(const char *id, struct OrdFixture **fixture);

// Load a fixture from a file.
//
// # Safety
// `path` must be a NUL-terminated string; `fixture` valid for writes.
enum OrdStatus ord_fixture_load_file(const char *path, struct OrdFixture **fixture);

// The fixture's complex (a new handle).
//
// # Safety
// `fixture` must be a live handle; `complex` valid for writes.
enum OrdStatus ord_fixture_complex(const struct OrdFixture *fixture, struct OrdComplex **complex);

// Full verification pipeline of a fixture.
//
// # Safety
// `fixture` must be a live handle; `pass` valid for writes; `report`
// null or valid for writes.
enum OrdStatus ord_fixture_verify(const struct OrdFixture *fixture,
                                  uint32_t trials,
                                  uint64_t seed,
                                  uint64_t prime,
                                  bool *pass,
                                  char **report);

// # Safety
// `fixture` must be null or a handle not yet freed.
void ord_fixture_free(struct OrdFixture *fixture);

// Weak and strong ordinariness checks on `count` random hyperplane
// sections of the monomial curve described by `curve_line`. The strong
// check runs at each of the `n_strong` degrees in `strong`.
//
// # Safety
// `curve_line` must be a NUL-terminated string; `strong` must point to
// `n_strong` values (or be null when `n_strong = 0`); `pass` valid for
// writes; `report` null or valid for writes.
enum OrdStatus ord_check_sections(const char *curve_line,
                                  uint32_t count,
                                  uint64_t seed,
                                  const uint32_t *strong,
                                  size_t n_strong,
                                  bool *pass,
                                  char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDCURVE_H */
