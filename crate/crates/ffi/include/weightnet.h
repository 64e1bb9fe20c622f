#ifndef WEIGHTNET_H
#define WEIGHTNET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum WnStatus {
  WnOk = 0,
  WnNullPointer = 1,
  WnInvalidUtf8 = 2,
  WnParseError = 3,
  WnInvalidArgument = 4,
  WnRewriteError = 5,
  WnInternalError = 6,
} WnStatus;

typedef enum WnNetworkChoice {
  WnNetworkNone = 0,
  WnNetworkFull = 1,
  /**
   * Full sorter limited to the given depth.
   */
  WnNetworkDepth = 2,
} WnNetworkChoice;

/**
 * Opaque comparator network.
 */
typedef struct WnNetwork WnNetwork;

/**
 * Rewrite settings. `depth_limit < 0` keeps the full sorter and
 * `sparseness == 0` means one block over the whole network.
 */
typedef struct WnRewriteConfig {
  int64_t depth_limit;
  uint64_t sparseness;
  bool propagate;
  bool sort_inputs;
} WnRewriteConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *wn_last_error_message(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void wn_string_free(char *s);

/**
 * Odd-even merge sorter on `n` wires.
 */
struct WnNetwork *wn_oe_sorter(uintptr_t n);

/**
 * Copy of `network` without comparators above `depth`, or NULL if
 * `network` is NULL.
 *
 * # Safety
 * `network` must be NULL or a live handle.
 */
struct WnNetwork *wn_network_limit_depth(const struct WnNetwork *network, uintptr_t depth);

/**
 * # Safety
 * `network` must be NULL or a handle not freed before.
 */
void wn_network_free(struct WnNetwork *network);

/**
 * # Safety
 * `network` must be NULL or a live handle. NULL yields 0.
 */
uintptr_t wn_network_width(const struct WnNetwork *network);

/**
 * # Safety
 * `network` must be NULL or a live handle. NULL yields 0.
 */
uintptr_t wn_network_depth(const struct WnNetwork *network);

/**
 * Number of comparators.
 *
 * # Safety
 * `network` must be NULL or a live handle. NULL yields 0.
 */
uintptr_t wn_network_size(const struct WnNetwork *network);

/**
 * Run `input` (length `len`, equal to the width) through the network and
 * write the output column to `output`.
 *
 * # Safety
 * `input` and `output` must point to `len` readable/writable values.
 */
enum WnStatus wn_network_apply(const struct WnNetwork *network,
                               const int64_t *input,
                               uintptr_t len,
                               int64_t *output);

/**
 * Knuth diagram of the network as text.
 *
 * # Safety
 * `out` must be writable; on success it receives a string to release with
 * `wn_string_free`.
 */
enum WnStatus wn_network_render(const struct WnNetwork *network, char **out);

/**
 * Place `weights` (one per wire) on the inputs and propagate them with the
 * sparse decomposition of block size `sparseness` (0 for one block). The
 * result is written level by level, wires ascending, to `out`, which must
 * hold `width * (depth + 1)` values.
 *
 * # Safety
 * `weights` must point to `len` values and `out` to `out_len` values.
 */
enum WnStatus wn_propagate_sparse(const struct WnNetwork *network,
                                  const uint64_t *weights,
                                  uintptr_t len,
                                  uint64_t sparseness,
                                  uint64_t *out,
                                  uintptr_t out_len);

/**
 * Full depth, sparseness 1, propagation on, statement order.
 */
struct WnRewriteConfig wn_rewrite_config_default(void);

/**
 * Rewrite the minimize statements of the aspif program `input`.
 *
 * # Safety
 * `input` must be a NUL-terminated string, `config` NULL (defaults) or
 * valid, and `out` writable; on success `*out` receives the rewritten
 * program, to be released with `wn_string_free`.
 */
enum WnStatus wn_rewrite_aspif(const char *input, const struct WnRewriteConfig *config, char **out);

/**
 * Simulate the propagator call history of the binomial program with `n`
 * atoms and bound `k`. `depth` is only read for `WnNetworkDepth`.
 *
 * # Safety
 * `calls` and `complete` must be writable.
 */
enum WnStatus wn_pch_binomial(uintptr_t n,
                              uintptr_t k,
                              enum WnNetworkChoice network,
                              uintptr_t depth,
                              uintptr_t *calls,
                              bool *complete);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEIGHTNET_H */
