#ifndef PARTRANK_H
#define PARTRANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PrStatus {
  PR_STATUS_OK = 0,
  PR_STATUS_NULL_POINTER = 1,
  PR_STATUS_INVALID_UTF8 = 2,
  PR_STATUS_PARSE = 3,
  PR_STATUS_INVALID_ARGUMENT = 4,
  PR_STATUS_NOT_IN_T = 5,
  PR_STATUS_SPECIAL_CASE = 6,
  PR_STATUS_OVER_CAP = 7,
  PR_STATUS_INDEX_OUT_OF_RANGE = 8,
  PR_STATUS_BUFFER_TOO_SMALL = 9,
  PR_STATUS_INTERNAL = 10,
} PrStatus;

/**
 * Which monoid `pr_partition_order` counts.
 */
typedef enum PrMonoid {
  PR_MONOID_T = 0,
  PR_MONOID_SIGMA = 1,
  PR_MONOID_S = 2,
} PrMonoid;

/**
 * Opaque handle to a list of transformations on one partition.
 */
typedef struct PrGeneratingSet PrGeneratingSet;

/**
 * Opaque partition handle.
 */
typedef struct PrPartition PrPartition;

/**
 * Rank of `T(X,P)` split into its three summands.
 */
typedef struct PrRankBreakdown {
  size_t rank_units;
  size_t relrank_t_over_sigma;
  size_t relrank_sigma_over_s;
  size_t total;
  /**
   * Non-zero for the four small partitions whose rank is a fixed value.
   */
  uint8_t special_case;
} PrRankBreakdown;

/**
 * Outcome of a closure run.
 */
typedef struct PrGenerationReport {
  uint8_t generates;
  uint64_t closure_order;
  uint64_t multiplications;
  size_t depth;
} PrGenerationReport;

/**
 * Outcome of the lower-bound certificate check.
 */
typedef struct PrCertificateSummary {
  uint8_t passed;
  size_t obligations;
  size_t missing;
  size_t parity_dimension;
  size_t parity_rank;
} PrCertificateSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the last failed call on this thread into `buf`.
 * A short buffer yields `PR_STATUS_BUFFER_TOO_SMALL` but keeps the message.
 *
 * # Safety
 * `buf` must be null or valid for `cap` bytes; `needed` must be null or valid.
 */
enum PrStatus pr_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Parses a partition such as `"3+2+1"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum PrStatus pr_partition_parse(const char *spec, struct PrPartition **out);

/**
 * Releases a partition. Null is ignored.
 *
 * # Safety
 * `p` must be null or come from `pr_partition_parse` and not be freed twice.
 */
void pr_partition_free(struct PrPartition *p);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t pr_partition_degree(const struct PrPartition *p);

/**
 * Canonical text of the partition (parts in descending order).
 *
 * # Safety
 * `p` must be a live handle; `buf`/`needed` as for `pr_last_error`.
 */
enum PrStatus pr_partition_to_string(const struct PrPartition *p,
                                     char *buf,
                                     size_t cap,
                                     size_t *needed);

/**
 * Rank of `T(X,P)` with its breakdown.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum PrStatus pr_partition_rank(const struct PrPartition *p, struct PrRankBreakdown *out);

/**
 * Exact order of `T`, `Sigma` or `S` as a decimal string.
 *
 * # Safety
 * `p` must be a live handle; `buf`/`needed` as for `pr_last_error`.
 */
enum PrStatus pr_partition_order(const struct PrPartition *p,
                                 enum PrMonoid which,
                                 char *buf,
                                 size_t cap,
                                 size_t *needed);

/**
 * Builds the minimum-size generating set for `p`. `seed` only affects the
 * choice of element inside each class where the construction is free.
 *
 * # Safety
 * `p` must be a live handle; `out` must be valid for writes.
 */
enum PrStatus pr_genset_new(const struct PrPartition *p,
                            uint64_t seed,
                            struct PrGeneratingSet **out);

/**
 * Wraps `count` transformations given as a row-major `count x degree`
 * array of 0-based images. Each element must preserve the partition.
 *
 * # Safety
 * `p` must be a live handle; `images` must be valid for
 * `count * degree` reads; `out` must be valid for writes.
 */
enum PrStatus pr_genset_from_images(const struct PrPartition *p,
                                    const size_t *images,
                                    size_t count,
                                    struct PrGeneratingSet **out);

/**
 * Releases a generating set. Null is ignored.
 *
 * # Safety
 * `s` must be null or come from a `pr_genset_*` constructor and not be freed twice.
 */
void pr_genset_free(struct PrGeneratingSet *s);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t pr_genset_len(const struct PrGeneratingSet *s);

/**
 * Copies the images of element `index` into `buf`, which must hold the
 * degree of the partition.
 *
 * # Safety
 * `s` must be a live handle; `buf` must be valid for `cap` writes.
 */
enum PrStatus pr_genset_element(const struct PrGeneratingSet *s,
                                size_t index,
                                size_t *buf,
                                size_t cap);

/**
 * Class tag of element `index` (`unit`, `A(1,2)`, `B(1)`, ...).
 *
 * # Safety
 * `s` must be a live handle; `buf`/`needed` as for `pr_last_error`.
 */
enum PrStatus pr_genset_tag(const struct PrGeneratingSet *s,
                            size_t index,
                            char *buf,
                            size_t cap,
                            size_t *needed);

/**
 * Computes the closure of the set and compares it with `|T(X,P)|`.
 * `cap == 0` means no cap; otherwise `PR_STATUS_OVER_CAP` is returned when the
 * closure grows past `cap` elements.
 *
 * # Safety
 * `s` must be a live handle; `out` must be valid for writes.
 */
enum PrStatus pr_verify_generation(const struct PrGeneratingSet *s,
                                   uint64_t cap,
                                   struct PrGenerationReport *out);

/**
 * Checks the necessary conditions every generating set must meet and
 * reports how many of them the set discharges.
 *
 * # Safety
 * `s` must be a live handle; `out` must be valid for writes.
 */
enum PrStatus pr_certify_lower_bound(const struct PrGeneratingSet *s,
                                     struct PrCertificateSummary *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PARTRANK_H */
