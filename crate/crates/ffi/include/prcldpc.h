/* C interface of the prcldpc rate-compatible LDPC library. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum PrcStatus {
  // Success.
  PRC_STATUS_OK = 0,
  // A required pointer argument was null.
  PRC_STATUS_NULL_ARGUMENT = 1,
  // The descriptor or polynomial text did not parse.
  PRC_STATUS_PARSE_ERROR = 2,
  // The code parameters are invalid (ruler, length or rate constraints).
  PRC_STATUS_INVALID_CODE = 3,
  // An output buffer is smaller than the required length.
  PRC_STATUS_BUFFER_TOO_SMALL = 4,
  // An input length does not match the code dimensions.
  PRC_STATUS_LENGTH_MISMATCH = 5,
  // The operation exceeds a materialization cap.
  PRC_STATUS_TOO_LARGE = 6,
  // Internal failure; should not happen.
  PRC_STATUS_INTERNAL = 7,
} PrcStatus;

// An opaque code handle: the parsed code plus its decoder graph.
typedef struct PrcCode PrcCode;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a key-value code descriptor (`h=...`, `n=...`, optional `z=`,
// `shorten=`, `puncture=`) and allocates a handle into `out`.
//
// # Safety
// `descriptor` must be a valid NUL-terminated C string and `out` a valid
// pointer; the handle must be released with [`prc_code_free`].
enum PrcStatus prc_code_parse(const char *descriptor, struct PrcCode **out);

// Releases a handle returned by [`prc_code_parse`]. Null is a no-op.
//
// # Safety
// `code` must be a handle from [`prc_code_parse`] not yet freed.
void prc_code_free(struct PrcCode *code);

// Reports block length, information length and parity count.
//
// # Safety
// `code` must be a live handle; out-pointers may be null to skip a field.
enum PrcStatus prc_code_dimensions(const struct PrcCode *code,
                                   uint32_t *n,
                                   uint32_t *k,
                                   uint32_t *r);

// Systematically encodes `info` (one bit per byte, length `k`) into
// `out` (length `n`).
//
// # Safety
// `info` must point to `info_len` readable bytes and `out` to `out_len`
// writable bytes.
enum PrcStatus prc_encode(const struct PrcCode *code,
                          const uint8_t *info,
                          uintptr_t info_len,
                          uint8_t *out,
                          uintptr_t out_len);

// Decodes a channel LLR vector (positive values vote for bit 0) with the
// log-domain sum-product algorithm.
//
// Writes the hard decision into `out` (length `n`); `converged` receives
// 0/1 and `iterations` the number of iterations used (both optional).
//
// # Safety
// `llr` must point to `llr_len` readable floats and `out` to `out_len`
// writable bytes.
enum PrcStatus prc_decode(const struct PrcCode *code,
                          const float *llr,
                          uintptr_t llr_len,
                          uint32_t max_iterations,
                          uint8_t *out,
                          uintptr_t out_len,
                          int32_t *converged,
                          uint32_t *iterations);

// Checks whether `word` (one bit per byte, length `n`) is a codeword.
//
// # Safety
// `word` must point to `word_len` readable bytes.
enum PrcStatus prc_syndrome_is_zero(const struct PrcCode *code,
                                    const uint8_t *word,
                                    uintptr_t word_len,
                                    int32_t *is_zero);

// Estimates the minimum distance by scanning the sparse portions of the
// underlying sequence. `scan_radius = 0` selects the default (four times
// the polynomial degree). The estimate never undershoots the true
// distance; it can only miss codewords outside the scanned regions.
//
// # Safety
// `code` must be a live handle; out-pointers may be null to skip a field.
enum PrcStatus prc_min_distance_estimate(const struct PrcCode *code,
                                         uint32_t scan_radius,
                                         uint32_t *d,
                                         uint64_t *count);

// Static description of a status code.
const char *prc_status_message(enum PrcStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
