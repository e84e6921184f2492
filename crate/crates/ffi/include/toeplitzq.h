#ifndef TOEPLITZQ_H
#define TOEPLITZQ_H

/* Generated from the Rust sources and kept in tree so default builds do not need cbindgen. Regenerate with: cargo build -p toeplitzq-ffi --features generate-header */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum TqStatus {
  TqStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  TqStatus_NullArgument = 1,
  /**
   * The input text failed to parse; the message carries the byte offset.
   */
  TqStatus_Syntax = 2,
  /**
   * The request was structurally invalid (bad domain, tensor degree...).
   */
  TqStatus_Domain = 3,
  /**
   * A diagonal-only operation was applied to a non-diagonal element.
   */
  TqStatus_NotDiagonal = 4,
  /**
   * Power iteration exhausted its budget before reaching the tolerance.
   */
  TqStatus_NoConvergence = 5,
  /**
   * The input text was not valid UTF-8.
   */
  TqStatus_InvalidUtf8 = 6,
} TqStatus;

/**
 * Opaque handle to an element of the dense monomial span.
 */
typedef struct TqElement TqElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or an empty string.
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *tq_last_error_message(void);

/**
 * Parses expression text (`"2*T(0,1) - T(1,1)"`) into a fresh handle.
 *
 * # Safety
 * `text` must point to a NUL-terminated string; `out` must be valid for a
 * pointer write.
 */
enum TqStatus tq_element_parse(const char *text, struct TqElement **out);

/**
 * Builds the monomial `T(n,m)`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum TqStatus tq_element_from_monomial(uint64_t n, uint64_t m, struct TqElement **out);

/**
 * Deep-copies a handle.
 *
 * # Safety
 * `a` must be a live handle from this library; `out` must be valid for a
 * pointer write.
 */
enum TqStatus tq_element_clone(const struct TqElement *a, struct TqElement **out);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 * `a` must be null or a live handle from this library, and must not be
 * used afterwards.
 */
void tq_element_free(struct TqElement *a);

/**
 * Sum of two elements.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for a pointer
 * write.
 */
enum TqStatus tq_element_add(const struct TqElement *a,
                             const struct TqElement *b,
                             struct TqElement **out);

/**
 * Product of two elements.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for a pointer
 * write.
 */
enum TqStatus tq_element_mul(const struct TqElement *a,
                             const struct TqElement *b,
                             struct TqElement **out);

/**
 * Adjoint: coefficients conjugated, monomials swapped.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a pointer write.
 */
enum TqStatus tq_element_adjoint(const struct TqElement *a, struct TqElement **out);

/**
 * Antipode: monomials swapped, coefficients untouched.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a pointer write.
 */
enum TqStatus tq_element_antipode(const struct TqElement *a, struct TqElement **out);

/**
 * Component of one grading index: the terms with `m - n = k`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a pointer write.
 */
enum TqStatus tq_element_graded(const struct TqElement *a, int64_t k, struct TqElement **out);

/**
 * Whether the element lies in the ideal of compact operators.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a bool write.
 */
enum TqStatus tq_element_is_compact(const struct TqElement *a, bool *out);

/**
 * Structural equality of canonical forms.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for a bool write.
 */
enum TqStatus tq_element_equals(const struct TqElement *a, const struct TqElement *b, bool *out);

/**
 * Number of monomials with nonzero coefficient.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a size_t write.
 */
enum TqStatus tq_element_term_count(const struct TqElement *a, size_t *out);

/**
 * Canonical text form, parseable back by `tq_element_parse`. The returned
 * string is released with `tq_string_free`.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a pointer write.
 */
enum TqStatus tq_element_to_string(const struct TqElement *a, char **out);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library, and must not be
 * used afterwards.
 */
void tq_string_free(char *s);

/**
 * Exact sup-norm of a diagonal element. Fails with `NotDiagonal` when any
 * term lies off the diagonal.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a double write.
 */
enum TqStatus tq_element_norm_diagonal(const struct TqElement *a, double *out);

/**
 * Largest singular value of the `trunc`-sized compression, by power
 * iteration converged to relative tolerance `tol`. The result is a
 * certified lower bound for the compression's norm.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a double write.
 */
enum TqStatus tq_element_op_norm(const struct TqElement *a, size_t trunc, double tol, double *out);

/**
 * Whether both weak antipode identities hold on the element.
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for a bool write.
 */
enum TqStatus tq_element_weak_hopf_check(const struct TqElement *a, bool *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TOEPLITZQ_H */
