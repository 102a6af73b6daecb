#ifndef GPNN_H
#define GPNN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpnnStatus {
  GPNN_STATUS_OK = 0,
  GPNN_STATUS_NULL_POINTER = 1,
  GPNN_STATUS_INVALID_ARGUMENT = 2,
  GPNN_STATUS_PARSE_ERROR = 3,
  GPNN_STATUS_BUFFER_TOO_SMALL = 4,
  GPNN_STATUS_PANIC = 5,
} GpnnStatus;

typedef enum GpnnScheme {
  GPNN_SCHEME_TRIVIAL = 0,
  GPNN_SCHEME_DEGREE = 1,
  GPNN_SCHEME_CORE = 2,
  GPNN_SCHEME_CORE_DEGREE = 3,
  GPNN_SCHEME_CORE_ONION = 4,
  GPNN_SCHEME_TRIANGLE = 5,
} GpnnScheme;

typedef enum GpnnVariant {
  GPNN_VARIANT_STAR = 0,
  GPNN_VARIANT_DIAMOND = 1,
  GPNN_VARIANT_DAGGER = 2,
} GpnnVariant;

typedef enum GpnnTest {
  GPNN_TEST_WL1 = 0,
  GPNN_TEST_FWL2 = 1,
  GPNN_TEST_GPNN = 2,
} GpnnTest;

// Opaque graph handle.
typedef struct GpnnGraph GpnnGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a graph from `m` edges stored as `2 * m` consecutive endpoints.
// `edges` may be null when `m` is 0. Free the result with
// `gpnn_graph_free`.
enum GpnnStatus gpnn_graph_new(uintptr_t n,
                               const uintptr_t *edges,
                               uintptr_t m,
                               struct GpnnGraph **out);

// Parses a nul-terminated edge-list text (`n m` header, then `u v` lines).
enum GpnnStatus gpnn_graph_parse(const char *text, struct GpnnGraph **out);

// Releases a graph. Null is ignored.
void gpnn_graph_free(struct GpnnGraph *graph);

// Vertex count, or 0 for null.
uintptr_t gpnn_graph_vertex_count(const struct GpnnGraph *graph);

// Edge count, or 0 for null.
uintptr_t gpnn_graph_edge_count(const struct GpnnGraph *graph);

// Writes each vertex's partition index as `(major[v], minor[v])`. Both
// buffers need room for `len >= vertex count` entries.
enum GpnnStatus gpnn_partition(const struct GpnnGraph *graph,
                               uint32_t scheme_id,
                               uint32_t *major,
                               uint32_t *minor,
                               uintptr_t len);

// Distinguishability test. `scheme_id`, `variant_id` and `hops` are used
// only by `GPNN_TEST_GPNN`. Sets `*distinguished` to 1 or 0 and
// `*iteration` to the deciding iteration.
enum GpnnStatus gpnn_compare(const struct GpnnGraph *g,
                             const struct GpnnGraph *h,
                             uint32_t test,
                             uint32_t scheme_id,
                             uint32_t variant_id,
                             uintptr_t hops,
                             int32_t *distinguished,
                             uintptr_t *iteration);

// Graph, partition and interaction isomorphism under `scheme_id`; each
// output is set to 1 or 0.
enum GpnnStatus gpnn_isomorphism(const struct GpnnGraph *g,
                                 const struct GpnnGraph *h,
                                 uint32_t scheme_id,
                                 int32_t *gi,
                                 int32_t *pi,
                                 int32_t *ii);

// Message for the last failed call on this thread; empty after a success.
// Valid until the next call into this library from the same thread.
const char *gpnn_last_error(void);

// Library version as a static nul-terminated string.
const char *gpnn_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPNN_H */
