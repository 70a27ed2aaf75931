#ifndef SUCFIX_H
#define SUCFIX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum SucfixCheck {
  SUCFIX_CHECK_RELATIONS = 0,
  SUCFIX_CHECK_PFEE = 1,
  SUCFIX_CHECK_COUNTING = 2,
  SUCFIX_CHECK_TRIPLE = 3,
} SucfixCheck;

typedef enum SucfixStatistic {
  SUCFIX_STATISTIC_SUC = 0,
  SUCFIX_STATISTIC_FIX_BAR = 1,
  SUCFIX_STATISTIC_NAJ_SUC = 2,
  SUCFIX_STATISTIC_PRED = 3,
  SUCFIX_STATISTIC_DROP_BAR = 4,
  SUCFIX_STATISTIC_EXC_BAR = 5,
} SucfixStatistic;

typedef enum SucfixStatus {
  SUCFIX_STATUS_OK = 0,
  SUCFIX_STATUS_NULL_POINTER = 1,
  SUCFIX_STATUS_INVALID_UTF8 = 2,
  SUCFIX_STATUS_PARSE_ERROR = 3,
  SUCFIX_STATUS_BUFFER_TOO_SMALL = 4,
  SUCFIX_STATUS_INVALID_SIZE = 5,
  // The verifier ran to completion and found a counterexample.
  SUCFIX_STATUS_VERIFICATION_FAILED = 6,
  SUCFIX_STATUS_PANIC = 7,
} SucfixStatus;

// Opaque permutation handle.
typedef struct SucfixPermutation SucfixPermutation;

// Parses one-line notation (integers separated by spaces and/or commas).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum SucfixStatus sucfix_perm_parse(const char *text, struct SucfixPermutation **out);

// Builds a permutation from `len` one-line values, which must be a
// rearrangement of `1..=len`.
//
// # Safety
// `values` must point to `len` readable `size_t`s; `out` must be writable.
enum SucfixStatus sucfix_perm_from_values(const size_t *values,
                                          size_t len,
                                          struct SucfixPermutation **out);

// # Safety
// `perm` must be null or a handle from this library that has not been freed.
void sucfix_perm_free(struct SucfixPermutation *perm);

// Size `n` of the permutation, or 0 for a null handle.
//
// # Safety
// `perm` must be null or a live handle.
size_t sucfix_perm_len(const struct SucfixPermutation *perm);

// Copies the one-line values into `out`, which must hold at least
// `sucfix_perm_len(perm)` entries.
//
// # Safety
// `perm` must be a live handle and `out` must point to `cap` writable
// `size_t`s.
enum SucfixStatus sucfix_perm_values(const struct SucfixPermutation *perm, size_t *out, size_t cap);

// Space-separated one-line notation; free with `sucfix_string_free`.
// Returns null for a null handle.
//
// # Safety
// `perm` must be null or a live handle.
char *sucfix_perm_to_string(const struct SucfixPermutation *perm);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void sucfix_string_free(char *s);

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next `sucfix_*` call on the same thread.
const char *sucfix_last_error(void);

// `*out = phi(sigma)` as a new handle.
//
// # Safety
// `sigma` must be a live handle and `out` writable.
enum SucfixStatus sucfix_phi(const struct SucfixPermutation *sigma, struct SucfixPermutation **out);

// `*out = phi_inverse(tau)` as a new handle.
//
// # Safety
// `tau` must be a live handle and `out` writable.
enum SucfixStatus sucfix_phi_inverse(const struct SucfixPermutation *tau,
                                     struct SucfixPermutation **out);

// Every stage of `phi(sigma)` as a JSON object with keys `sigma`,
// `sigma_bar`, `sigma_hat`, `cycle_form`, `tau_bar`, `tau_bar_inv`, `tau`.
//
// # Safety
// `sigma` must be a live handle and `out` writable.
enum SucfixStatus sucfix_phi_trace_json(const struct SucfixPermutation *sigma, char **out);

// Writes the sorted members of one statistic into `out` and their count
// into `*out_len`. `*out_len` is set even when the buffer is too small.
//
// # Safety
// `perm` must be a live handle, `out` must point to `cap` writable
// `size_t`s and `out_len` must be writable.
enum SucfixStatus sucfix_statistic(const struct SucfixPermutation *perm,
                                   enum SucfixStatistic stat,
                                   size_t *out,
                                   size_t cap,
                                   size_t *out_len);

// Runs one exhaustive verifier over `S_n` and stores the JSON report in
// `*out_json`. Returns `SUCFIX_STATUS_VERIFICATION_FAILED` (with the report
// still written) when a counterexample was found.
//
// # Safety
// `out_json` must be writable.
enum SucfixStatus sucfix_verify_json(size_t n,
                                     enum SucfixCheck check,
                                     size_t jobs,
                                     char **out_json);

// Distribution table of one statistic over `S_n` as JSON.
//
// # Safety
// `out` must be writable.
enum SucfixStatus sucfix_table_json(size_t n, enum SucfixStatistic stat, char **out);

// Distribution table of one statistic over `S_n` as `subset,count` CSV.
//
// # Safety
// `out` must be writable.
enum SucfixStatus sucfix_table_csv(size_t n, enum SucfixStatistic stat, char **out);

#endif /* SUCFIX_H */
