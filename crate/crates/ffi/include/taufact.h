#ifndef TAUFACT_H
#define TAUFACT_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first five match the command-line exit codes.
 */
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  /**
   * A property does not hold.
   */
  TF_STATUS_NO = 1,
  TF_STATUS_PARSE = 2,
  TF_STATUS_BAD_ELEMENT = 3,
  /**
   * A property holds for factorizations up to the reported length.
   */
  TF_STATUS_BOUNDED = 4,
  TF_STATUS_NULL_ARGUMENT = 5,
  TF_STATUS_TOO_LARGE = 6,
  TF_STATUS_PANIC = 7,
} TfStatus;

/**
 * A finite commutative ring.
 */
typedef struct TfRing TfRing;

/**
 * A symmetric relation on the non-zero non-units of a ring. Keeps its ring
 * alive on its own.
 */
typedef struct TfTau TfTau;

typedef struct TfIrrFlags {
  bool irreducible;
  bool strongly_irreducible;
  bool m_irreducible;
  bool very_strongly_irreducible;
  /**
   * `a` is very strongly associate to itself.
   */
  bool very_strong_defined;
  /**
   * Flags were checked only up to `bound` factors.
   */
  bool bounded;
  uintptr_t bound;
} TfIrrFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the last failed call on this thread, or null. Valid until
 * the next call on the same thread.
 */
const char *tf_last_error(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void tf_string_free(char *s);

/**
 * Parses a spec such as `Z/12` or `GF(2) x Z/4`.
 *
 * # Safety
 * `spec` is a nul-terminated string and `out` is writable.
 */
enum TfStatus tf_ring_new(const char *spec, struct TfRing **out);

/**
 * # Safety
 * `ring` is null or came from [`tf_ring_new`] and was not yet freed.
 */
void tf_ring_free(struct TfRing *ring);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `ring` is null or a live handle.
 */
uint32_t tf_ring_order(const struct TfRing *ring);

/**
 * Parses an element (`5`, `(1,2)`) to its index.
 *
 * # Safety
 * `ring` is a live handle, `elem` a nul-terminated string, `out` writable.
 */
enum TfStatus tf_ring_parse_elem(const struct TfRing *ring, const char *elem, uint32_t *out);

/**
 * The element at index `a` in ring notation. Free with [`tf_string_free`].
 *
 * # Safety
 * `ring` is null or a live handle.
 */
char *tf_ring_format_elem(const struct TfRing *ring, uint32_t a);

/**
 * # Safety
 * `ring` is a live handle and `out` writable.
 */
enum TfStatus tf_ring_mul(const struct TfRing *ring, uint32_t a, uint32_t b, uint32_t *out);

/**
 * # Safety
 * `ring` is a live handle and `out` writable.
 */
enum TfStatus tf_ring_is_unit(const struct TfRing *ring, uint32_t a, bool *out);

/**
 * Ring summary as JSON. Free with [`tf_string_free`]; null on a null handle.
 *
 * # Safety
 * `ring` is null or a live handle.
 */
char *tf_ring_info_json(const struct TfRing *ring);

/**
 * Clique number of the zero-divisor graph.
 *
 * # Safety
 * `ring` is a live handle and `out` writable.
 */
enum TfStatus tf_ring_clique_number(const struct TfRing *ring, uintptr_t *out);

/**
 * Builds a relation by name: `full`, `empty`, `tau_z`, `tau_z_delta`,
 * `subset:<elems>` or `ideal:<gen>`.
 *
 * # Safety
 * `ring` is a live handle, `name` a nul-terminated string, `out` writable.
 */
enum TfStatus tf_tau_new(const struct TfRing *ring, const char *name, struct TfTau **out);

/**
 * # Safety
 * `tau` is null or came from [`tf_tau_new`] and was not yet freed.
 */
void tf_tau_free(struct TfTau *tau);

/**
 * # Safety
 * `tau` is a live handle and `out` writable.
 */
enum TfStatus tf_tau_relates(const struct TfTau *tau, uint32_t a, uint32_t b, bool *out);

/**
 * Irreducibility flags of the non-unit at index `a`.
 *
 * # Safety
 * `tau` is a live handle and `out` writable.
 */
enum TfStatus tf_classify(const struct TfTau *tau, uint32_t a, struct TfIrrFlags *out);

/**
 * Decides a property by name (`bfr`, `ufr`, `combinable`, ...). `alpha`,
 * `beta` and `counting` may be null for the defaults `atomic`,
 * `associate` and `raw`. Returns [`TfStatus::Ok`] when it holds,
 * [`TfStatus::No`] when it fails and [`TfStatus::Bounded`] when it holds
 * up to `*bound` factors. `witness`, when non-null, receives a description
 * of a counterexample or null; free it with [`tf_string_free`].
 *
 * # Safety
 * `tau` is a live handle, the strings are null or nul-terminated, and
 * `bound` and `witness` are null or writable.
 */
enum TfStatus tf_check(const struct TfTau *tau,
                       const char *property,
                       const char *alpha,
                       const char *beta,
                       const char *counting,
                       uintptr_t *bound,
                       char **witness);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAUFACT_H */
