#ifndef STATESUM_H
#define STATESUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Evaluation engine for [`ss_invariant`].
typedef enum SsEngine {
  SS_ENGINE_FAST = 0,
  SS_ENGINE_GENERIC = 1,
  SS_ENGINE_ORACLE = 2,
} SsEngine;

// Result code of every fallible call.
typedef enum SsStatus {
  SS_STATUS_OK = 0,
  SS_STATUS_NULL_POINTER = 1,
  SS_STATUS_INVALID_UTF8 = 2,
  SS_STATUS_PARSE = 3,
  SS_STATUS_DOMAIN = 4,
  SS_STATUS_BUDGET = 5,
  SS_STATUS_PANIC = 6,
} SsStatus;

// A 4-cochain with Z/N exponents on a group.
typedef struct SsCocycle SsCocycle;

// A finite group given by its multiplication table.
typedef struct SsGroup SsGroup;

// A closed, oriented triangulated 4-manifold.
typedef struct SsTriangulation SsTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *ss_last_error(void);

// Library version as a static NUL-terminated string.
const char *ss_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string obtained from this library, not yet freed.
void ss_string_free(char *s);

// Parses the triangulation text format. The orientation follows the file's
// `orient` pin, or facet 0 positive when there is none.
//
// # Safety
// `text_in` must be a NUL-terminated string; `out` must be writable.
enum SsStatus ss_triangulation_parse(const char *text_in, struct SsTriangulation **out);

// The boundary of the 5-simplex, a 6-vertex 4-sphere.
//
// # Safety
// `out` must be writable.
enum SsStatus ss_triangulation_sphere(struct SsTriangulation **out);

// # Safety
// `t` must be null or a live handle from this library.
void ss_triangulation_free(struct SsTriangulation *t);

// Vertex and facet counts.
//
// # Safety
// `t` must be a live handle; the out-pointers must be writable.
enum SsStatus ss_triangulation_counts(const struct SsTriangulation *t,
                                      size_t *vertices,
                                      size_t *facets);

// The triangulation in the text format, with an orientation pin on facet 0.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SsStatus ss_triangulation_to_text(const struct SsTriangulation *t, char **out);

// Applies up to `steps` seeded random Pachner moves, never exceeding
// `max_vertices`. The result is a new handle carrying the induced orientation.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum SsStatus ss_triangulation_random_walk(const struct SsTriangulation *t,
                                           size_t steps,
                                           uint64_t seed,
                                           size_t max_vertices,
                                           struct SsTriangulation **out);

// Builds a group from a spec such as `cyclic:3`, `sym:3` or
// `prod:cyclic:2,cyclic:2`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum SsStatus ss_group_from_spec(const char *spec, struct SsGroup **out);

// Parses a group table (`group <n>` followed by n rows).
//
// # Safety
// `table` must be a NUL-terminated string; `out` must be writable.
enum SsStatus ss_group_parse_table(const char *table, struct SsGroup **out);

// # Safety
// `g` must be a live handle; `order` must be writable.
enum SsStatus ss_group_order(const struct SsGroup *g, size_t *order);

// # Safety
// `g` must be null or a live handle from this library.
void ss_group_free(struct SsGroup *g);

// The zero cochain with exponents in Z/`modulus`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum SsStatus ss_cocycle_trivial(const struct SsGroup *g, uint32_t modulus, struct SsCocycle **out);

// Parses the cocycle text format for the given group. The cochain is not
// checked here; see [`ss_cocycle_check`].
//
// # Safety
// `g` must be a live handle; `text_in` a NUL-terminated string; `out` writable.
enum SsStatus ss_cocycle_parse(const char *text_in,
                               const struct SsGroup *g,
                               struct SsCocycle **out);

// Writes whether the cochain satisfies the cocycle condition. When it does
// not, the first violating quintuple is available from [`ss_last_error`].
//
// # Safety
// Handles must be live; `holds` must be writable.
enum SsStatus ss_cocycle_check(const struct SsGroup *g, const struct SsCocycle *pi, bool *holds);

// # Safety
// `pi` must be null or a live handle from this library.
void ss_cocycle_free(struct SsCocycle *pi);

// Evaluates the invariant of `t` for the group with cocycle `pi` and writes
// it as a cyclotomic literal. `workers` of 0 means 1. `budget` bounds the
// oracle's colouring count; 0 selects the default.
//
// # Safety
// Handles must be live; `out` must be writable.
enum SsStatus ss_invariant(const struct SsTriangulation *t,
                           const struct SsGroup *g,
                           const struct SsCocycle *pi,
                           enum SsEngine engine,
                           size_t workers,
                           uint64_t budget,
                           char **out);

// Counts homomorphisms from the fundamental group of `t` to `g`. `budget`
// bounds the search nodes; 0 selects the default.
//
// # Safety
// Handles must be live; `count` must be writable.
enum SsStatus ss_count_homs(const struct SsTriangulation *t,
                            const struct SsGroup *g,
                            uint64_t budget,
                            uint64_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STATESUM_H */
