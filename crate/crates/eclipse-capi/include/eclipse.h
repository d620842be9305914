#ifndef ECLIPSE_CAPI_H
#define ECLIPSE_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API function.
 */
typedef enum EclipseStatus {
  ECLIPSE_STATUS_OK = 0,
  ECLIPSE_STATUS_NULL_POINTER = 1,
  ECLIPSE_STATUS_INVALID_ARGUMENT = 2,
  ECLIPSE_STATUS_DIMENSION_MISMATCH = 3,
  ECLIPSE_STATUS_IO_ERROR = 4,
  ECLIPSE_STATUS_PARSE_ERROR = 5,
  ECLIPSE_STATUS_INDEX_TOO_LARGE = 6,
  ECLIPSE_STATUS_INTERNAL_ERROR = 7,
} EclipseStatus;

/**
 * Opaque dataset handle.
 */
typedef struct EclipseDataset EclipseDataset;

/**
 * Opaque prebuilt index handle.
 */
typedef struct EclipseIndex EclipseIndex;

/**
 * Opaque per-attribute ratio box handle.
 */
typedef struct EclipseRatioBox EclipseRatioBox;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a dataset from a CSV file (header `id,x1,...,xd`).
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EclipseStatus eclipse_dataset_read_csv(const char *path, struct EclipseDataset **out);

/**
 * Generates a synthetic dataset (kind: 0 = CORR, 1 = INDE, 2 = ANTI).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EclipseStatus eclipse_dataset_generate(size_t n,
                                            size_t d,
                                            uint32_t kind,
                                            uint64_t seed,
                                            struct EclipseDataset **out);

/**
 * Number of points in a dataset.
 *
 * # Safety
 * Both pointers must be valid.
 */
enum EclipseStatus eclipse_dataset_len(const struct EclipseDataset *ds, size_t *out);

/**
 * Dimensionality of a dataset.
 *
 * # Safety
 * Both pointers must be valid.
 */
enum EclipseStatus eclipse_dataset_dim(const struct EclipseDataset *ds, size_t *out);

/**
 * Releases a dataset handle.
 *
 * # Safety
 * `ds` must come from this library and not be freed twice.
 */
void eclipse_dataset_free(struct EclipseDataset *ds);

/**
 * Builds a ratio box from `len` [low, high] pairs (one per attribute
 * except the last; the implied point dimension is len + 1).
 *
 * # Safety
 * `lows` and `highs` must point to `len` readable doubles; `out` must be
 * a valid pointer.
 */
enum EclipseStatus eclipse_ratio_box_new(const double *lows,
                                         const double *highs,
                                         size_t len,
                                         struct EclipseRatioBox **out);

/**
 * Releases a ratio box handle.
 *
 * # Safety
 * `bx` must come from this library and not be freed twice.
 */
void eclipse_ratio_box_free(struct EclipseRatioBox *bx);

/**
 * Runs an eclipse query (algo: 0 = base, 1 = tran, 2 = quad,
 * 3 = cutting). On success `*out_ids` holds `*out_len` ascending ids;
 * release with [`eclipse_ids_free`].
 *
 * # Safety
 * All pointers must be valid.
 */
enum EclipseStatus eclipse_query_run(const struct EclipseDataset *ds,
                                     const struct EclipseRatioBox *bx,
                                     uint32_t algo,
                                     uint64_t **out_ids,
                                     size_t *out_len);

/**
 * Builds a reusable index (algo: 2 = quad, 3 = cutting). `capacity` and
 * `t` of 0 select defaults.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EclipseStatus eclipse_index_build(const struct EclipseDataset *ds,
                                       uint32_t algo,
                                       size_t capacity,
                                       size_t t,
                                       uint64_t seed,
                                       struct EclipseIndex **out);

/**
 * Queries a prebuilt index; result contract matches
 * [`eclipse_query_run`].
 *
 * # Safety
 * All pointers must be valid.
 */
enum EclipseStatus eclipse_index_query(const struct EclipseIndex *idx,
                                       const struct EclipseRatioBox *bx,
                                       uint64_t **out_ids,
                                       size_t *out_len);

/**
 * Releases an index handle.
 *
 * # Safety
 * `idx` must come from this library and not be freed twice.
 */
void eclipse_index_free(struct EclipseIndex *idx);

/**
 * Releases an id buffer returned by a query.
 *
 * # Safety
 * `ids`/`len` must be exactly the pair a query produced.
 */
void eclipse_ids_free(uint64_t *ids, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ECLIPSE_CAPI_H */
