#ifndef CREXT_H
#define CREXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CrextMethod {
  CREXT_METHOD_SNF = 0,
  CREXT_METHOD_ENUMERATION = 1,
  CREXT_METHOD_BOTH = 2,
} CrextMethod;

typedef enum CrextStatus {
  CREXT_STATUS_OK = 0,
  CREXT_STATUS_STRUCTURAL = 1,
  CREXT_STATUS_VALIDATION = 2,
  CREXT_STATUS_PRECONDITION = 3,
  CREXT_STATUS_CAPACITY = 4,
  CREXT_STATUS_OVERFLOW = 5,
  CREXT_STATUS_MODEL_INCONSISTENCY = 6,
  CREXT_STATUS_PARSE = 7,
  CREXT_STATUS_IO = 8,
  CREXT_STATUS_NULL_ARGUMENT = 9,
  CREXT_STATUS_PANIC = 10,
} CrextStatus;

/**
 * A bimodule together with the ring it lives over.
 */
typedef struct CrextBimodule CrextBimodule;

typedef struct CrextCochain3 CrextCochain3;

typedef struct CrextModel CrextModel;

typedef struct CrextRing CrextRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *crext_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *crext_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void crext_string_free(char *s);

/**
 * Parses and validates a ring document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CrextStatus crext_ring_from_json(const char *json, struct CrextRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from this library, not used afterwards.
 */
void crext_ring_free(struct CrextRing *ring);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `ring` must be null or a live handle.
 */
size_t crext_ring_size(const struct CrextRing *ring);

/**
 * # Safety
 * Pointers must be valid; `out` receives a string for [`crext_string_free`].
 */
enum CrextStatus crext_ring_to_json(const struct CrextRing *ring, char **out);

/**
 * Parses and validates a bimodule document over `ring`. The handle keeps its
 * own copy of the ring.
 *
 * # Safety
 * Pointers must be valid and `json` NUL-terminated.
 */
enum CrextStatus crext_bimodule_from_json(const struct CrextRing *ring,
                                          const char *json,
                                          struct CrextBimodule **out);

/**
 * # Safety
 * `b` must be null or a handle from this library, not used afterwards.
 */
void crext_bimodule_free(struct CrextBimodule *b);

/**
 * Order of the underlying group, or 0 for a null handle.
 *
 * # Safety
 * `b` must be null or a live handle.
 */
uint64_t crext_bimodule_order(const struct CrextBimodule *b);

/**
 * # Safety
 * Pointers must be valid; `out` receives a string for [`crext_string_free`].
 */
enum CrextStatus crext_bimodule_to_json(const struct CrextBimodule *b, char **out);

/**
 * Parses a normalized 3-cochain with values in `b`.
 *
 * # Safety
 * Pointers must be valid and `json` NUL-terminated.
 */
enum CrextStatus crext_cochain3_from_json(const struct CrextBimodule *b,
                                          const char *json,
                                          struct CrextCochain3 **out);

/**
 * # Safety
 * `c` must be null or a handle from this library, not used afterwards.
 */
void crext_cochain3_free(struct CrextCochain3 *c);

/**
 * # Safety
 * Pointers must be valid; `out` receives a string for [`crext_string_free`].
 */
enum CrextStatus crext_cochain3_to_json(const struct CrextBimodule *b,
                                        const struct CrextCochain3 *c,
                                        char **out);

/**
 * Writes whether all eight cocycle equations hold.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CrextStatus crext_is_cocycle(const struct CrextBimodule *b,
                                  const struct CrextCochain3 *c,
                                  bool *out);

/**
 * Invariant factors of H³. On entry `*len` is the capacity of `factors`; on
 * return it holds the number of factors. A short buffer gives
 * `CREXT_STATUS_CAPACITY` with `*len` set to the required size. `factors`
 * may be null when the capacity is 0.
 *
 * # Safety
 * `factors` must have room for `*len` values.
 */
enum CrextStatus crext_h3(const struct CrextBimodule *b,
                          enum CrextMethod method,
                          uint64_t *factors,
                          size_t *len);

/**
 * Builds the skeletal categorical ring of a normalized 3-cocycle.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CrextStatus crext_realize(const struct CrextBimodule *b,
                               const struct CrextCochain3 *c,
                               struct CrextModel **out);

/**
 * # Safety
 * Pointers must be valid and `json` NUL-terminated.
 */
enum CrextStatus crext_model_from_json(const char *json, struct CrextModel **out);

/**
 * # Safety
 * `m` must be null or a handle from this library, not used afterwards.
 */
void crext_model_free(struct CrextModel *m);

/**
 * # Safety
 * Pointers must be valid; `out` receives a string for [`crext_string_free`].
 */
enum CrextStatus crext_model_to_json(const struct CrextModel *m, char **out);

/**
 * Writes the number of failed coherence checks; 0 means the model is coherent.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CrextStatus crext_model_check_coherence(const struct CrextModel *m, size_t *failures);

/**
 * π₀ and π₁ of a model as a bimodule handle (which carries π₀ as its ring).
 *
 * # Safety
 * Pointers must be valid.
 */
enum CrextStatus crext_model_pi(const struct CrextModel *m, struct CrextBimodule **out);

/**
 * Extracts a 3-cocycle with the canonical representative choices.
 *
 * # Safety
 * Pointers must be valid.
 */
enum CrextStatus crext_extract(const struct CrextModel *m, struct CrextCochain3 **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREXT_H */
