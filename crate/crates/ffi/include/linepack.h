#ifndef LINEPACK_H
#define LINEPACK_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Status codes. The nonzero library codes match the CLI exit codes.
 */
typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_INPUT_ERROR = 2,
  LP_STATUS_NUMERIC_ERROR = 3,
  LP_STATUS_RESOURCE_ERROR = 4,
  LP_STATUS_NULL_POINTER = 5,
  LP_STATUS_BUFFER_TOO_SMALL = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

/**
 * Which set the group acts on when building a scheme.
 */
typedef enum LpAction {
  LP_ACTION_NATURAL = 0,
  LP_ACTION_ORDERED_PAIRS = 1,
  LP_ACTION_REGULAR = 2,
} LpAction;

typedef enum LpParity {
  LP_PARITY_EVEN = 0,
  LP_PARITY_ODD = 1,
} LpParity;

typedef struct LpDecomposition LpDecomposition;

typedef struct LpGram LpGram;

typedef struct LpGroup LpGroup;

typedef struct LpScheme LpScheme;

/**
 * Packing summary of a Gram matrix.
 */
typedef struct LpReport {
  size_t n;
  size_t d;
  double coherence;
  double welch;
  bool is_real;
  bool is_etf;
  bool is_tight;
  bool welch_met;
  bool orthoplex_met;
  bool levenstein_met;
} LpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Owned by the library;
 * valid until the next failing call on the same thread.
 */
const char *lp_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *lp_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lp_string_free(char *s);

/**
 * Parses `{"degree": n, "generators": [[images..], ..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LpStatus lp_group_from_json(const char *json, struct LpGroup **out);

/**
 * Builds a group from `count` generators stored back to back, each as
 * `degree` 0-based images.
 *
 * # Safety
 * `images` must hold `degree * count` values.
 */
enum LpStatus lp_group_from_images(size_t degree,
                                   const uint32_t *images,
                                   size_t count,
                                   struct LpGroup **out);

/**
 * # Safety
 * `group` must be a live handle.
 */
enum LpStatus lp_group_degree(const struct LpGroup *group, size_t *out);

/**
 * Group order; fails with a resource error when it does not fit in 64 bits.
 *
 * # Safety
 * `group` must be a live handle.
 */
enum LpStatus lp_group_order(const struct LpGroup *group, uint64_t *out);

/**
 * # Safety
 * `group` must come from this library and not have been freed.
 */
void lp_group_free(struct LpGroup *group);

/**
 * Orbital scheme of the chosen transitive action. `element_limit` bounds the
 * group size for the regular action.
 *
 * # Safety
 * `group` must be a live handle and `out` writable.
 */
enum LpStatus lp_scheme_new(const struct LpGroup *group,
                            enum LpAction action,
                            size_t element_limit,
                            struct LpScheme **out);

/**
 * # Safety
 * `scheme` must be a live handle.
 */
enum LpStatus lp_scheme_point_count(const struct LpScheme *scheme, size_t *out);

/**
 * Orbital valencies; pass a null buffer with `len == 0` to query the count.
 *
 * # Safety
 * `out` must hold `len` values.
 */
enum LpStatus lp_scheme_valencies(const struct LpScheme *scheme,
                                  size_t *out,
                                  size_t len,
                                  size_t *needed);

/**
 * # Safety
 * `scheme` must be a live handle.
 */
enum LpStatus lp_scheme_is_commutative(const struct LpScheme *scheme, bool *out);

/**
 * # Safety
 * `scheme` must come from this library and not have been freed.
 */
void lp_scheme_free(struct LpScheme *scheme);

/**
 * Primitive central idempotents of the adjacency algebra.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum LpStatus lp_decompose(const struct LpScheme *scheme,
                           uint64_t seed,
                           double tol,
                           struct LpDecomposition **out);

/**
 * Ranks of the idempotents, in decomposition order.
 *
 * # Safety
 * `out` must hold `len` values.
 */
enum LpStatus lp_decomposition_ranks(const struct LpDecomposition *dec,
                                     size_t *out,
                                     size_t len,
                                     size_t *needed);

/**
 * Multiplicity of each constituent in the permutation representation.
 *
 * # Safety
 * `out` must hold `len` values.
 */
enum LpStatus lp_decomposition_multiplicities(const struct LpDecomposition *dec,
                                              size_t *out,
                                              size_t len,
                                              size_t *needed);

/**
 * # Safety
 * `dec` must be a live handle.
 */
enum LpStatus lp_decomposition_trivial_index(const struct LpDecomposition *dec, size_t *out);

/**
 * # Safety
 * `dec` must come from this library and not have been freed.
 */
void lp_decomposition_free(struct LpDecomposition *dec);

/**
 * The projection onto the sum of the listed constituents.
 *
 * # Safety
 * `subset` must hold `len` indices.
 */
enum LpStatus lp_gram_from_subset(const struct LpDecomposition *dec,
                                  const size_t *subset,
                                  size_t len,
                                  struct LpGram **out);

/**
 * A Gram matrix from `n * n` complex entries in row-major order, stored as
 * interleaved `(re, im)` pairs.
 *
 * # Safety
 * `entries` must hold `2 * n * n` values.
 */
enum LpStatus lp_gram_from_entries(size_t n, const double *entries, struct LpGram **out);

/**
 * Gram matrix of the Heisenberg ETF over `Z_{m_1} × ⋯ × Z_{m_k}`.
 *
 * # Safety
 * `moduli` must hold `len` values.
 */
enum LpStatus lp_heisenberg_gram(const uint32_t *moduli,
                                 size_t len,
                                 uint32_t gamma,
                                 enum LpParity parity,
                                 struct LpGram **out);

/**
 * Keeps one column per class of unimodularly proportional columns. When
 * `class_map` is non-null it receives, for each of the `n` original columns,
 * the index of its representative.
 *
 * # Safety
 * `class_map` is null or holds `n` values.
 */
enum LpStatus lp_gram_reduce(const struct LpGram *gram,
                             double tol,
                             size_t *class_map,
                             struct LpGram **out);

/**
 * # Safety
 * `gram` must be a live handle.
 */
enum LpStatus lp_gram_size(const struct LpGram *gram, size_t *out);

/**
 * Entries as interleaved `(re, im)` pairs in row-major order; `2 n²` values.
 *
 * # Safety
 * `out` must hold `len` values.
 */
enum LpStatus lp_gram_entries(const struct LpGram *gram, double *out, size_t len, size_t *needed);

/**
 * Coherence, bounds and ETF flags after normalizing the diagonal.
 *
 * # Safety
 * `gram` must be a live handle and `out` writable.
 */
enum LpStatus lp_gram_report(const struct LpGram *gram, double tol, struct LpReport *out);

/**
 * Gram JSON (`{"n", "entries": [[[re, im], ..], ..]}`); release with [`lp_string_free`].
 *
 * # Safety
 * `gram` must be a live handle and `out` writable.
 */
enum LpStatus lp_gram_to_json(const struct LpGram *gram, char **out);

/**
 * # Safety
 * `gram` must come from this library and not have been freed.
 */
void lp_gram_free(struct LpGram *gram);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LINEPACK_H */
