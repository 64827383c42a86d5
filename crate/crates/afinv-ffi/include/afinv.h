#ifndef AFINV_H
#define AFINV_H

/* Generated by cbindgen from crates/afinv-ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum AfinvStatus {
  AFINV_STATUS_OK = 0,
  /*
   A required pointer argument was NULL.
   */
  AFINV_STATUS_NULL_ARGUMENT = 1,
  AFINV_STATUS_INVALID_UTF8 = 2,
  /*
   Text input (specimen or witness JSON) could not be parsed.
   */
  AFINV_STATUS_PARSE_ERROR = 3,
  /*
   The specimen violates an invariant, e.g. its support has gcd > 1.
   */
  AFINV_STATUS_INVALID_SPECIMEN = 4,
  /*
   An iteration or size cap was hit; the answer is unknown.
   */
  AFINV_STATUS_CAP_EXCEEDED = 5,
  /*
   A numeric argument is out of range.
   */
  AFINV_STATUS_INVALID_ARGUMENT = 6,
  AFINV_STATUS_COMPUTATION_ERROR = 7,
  AFINV_STATUS_PANIC = 8,
} AfinvStatus;

typedef enum AfinvVerdict {
  AFINV_VERDICT_ISOMORPHIC = 0,
  AFINV_VERDICT_NON_ISOMORPHIC = 1,
  AFINV_VERDICT_INCONCLUSIVE = 2,
} AfinvVerdict;

typedef enum AfinvWitnessStatus {
  AFINV_WITNESS_STATUS_VERIFIED = 0,
  AFINV_WITNESS_STATUS_REFUTED = 1,
  AFINV_WITNESS_STATUS_UNDETERMINED = 2,
} AfinvWitnessStatus;

/*
 Opaque invariant bundle handle.
 */
typedef struct AfinvBundle AfinvBundle;

/*
 Opaque specimen handle.
 */
typedef struct AfinvSpecimen AfinvSpecimen;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static string.
 */
const char *afinv_version(void);

/*
 The message of the last failure on this thread; empty if none. Valid
 until the next failing call on the same thread.
 */
const char *afinv_last_error_message(void);

/*
 # Safety
 `s` is NULL or was returned by this library and not yet freed.
 */
void afinv_string_free(char *s);

/*
 Parses `m=1,0,4`, `L=1,2,4` or a bare column `1,0,4`.

 # Safety
 `spec` is a NUL-terminated string and `out` is writable.
 */
enum AfinvStatus afinv_specimen_parse(const char *spec, struct AfinvSpecimen **out);

/*
 Builds a specimen from the first column m₁, …, m_N.

 # Safety
 `m` points to `len` readable values and `out` is writable.
 */
enum AfinvStatus afinv_specimen_from_m(const uint64_t *m, size_t len, struct AfinvSpecimen **out);

/*
 # Safety
 `s` is NULL or a live specimen handle.
 */
void afinv_specimen_free(struct AfinvSpecimen *s);

/*
 # Safety
 `s` is a live specimen handle and `out` is writable.
 */
enum AfinvStatus afinv_specimen_rank(const struct AfinvSpecimen *s, size_t *out);

/*
 Canonical text `m=…`.

 # Safety
 `s` is a live specimen handle and `out` is writable.
 */
enum AfinvStatus afinv_specimen_to_string(const struct AfinvSpecimen *s, char **out);

/*
 Computes the invariant bundle.

 # Safety
 `s` is a live specimen handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_new(const struct AfinvSpecimen *s, struct AfinvBundle **out);

/*
 # Safety
 `b` is NULL or a live bundle handle.
 */
void afinv_bundle_free(struct AfinvBundle *b);

/*
 Degree D of the minimal polynomial of 1/λ.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_degree(const struct AfinvBundle *b, size_t *out);

/*
 Rank N − D of ker τ.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_kernel_rank(const struct AfinvBundle *b, size_t *out);

/*
 λ as exact text: an integer, or its minimal polynomial and an interval.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_lambda(const struct AfinvBundle *b, char **out);

/*
 τ(v) as exact text, e.g. `9/4`.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_tau(const struct AfinvBundle *b, char **out);

/*
 I(J) in decimal; `*out` is set to NULL when λ ≠ m_N.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_i_j(const struct AfinvBundle *b, char **out);

/*
 dim G₀ ⊗ ℤ_p for a prime p.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_torsion_dim(const struct AfinvBundle *b, uint64_t p, size_t *out);

/*
 The whole bundle as JSON.

 # Safety
 `b` is a live bundle handle and `out` is writable.
 */
enum AfinvStatus afinv_bundle_to_json(const struct AfinvBundle *b, char **out);

/*
 Isomorphism verdict; `out_json` may be NULL.

 # Safety
 `a`, `b` are live specimen handles, `out_kind` is writable and
 `out_json` is NULL or writable.
 */
enum AfinvStatus afinv_compare(const struct AfinvSpecimen *a,
                               const struct AfinvSpecimen *b,
                               enum AfinvVerdict *out_kind,
                               char **out_json);

/*
 Checks a witness given in the JSON form that `compare` emits, with the
 integrality conditions tested to `depth`.

 # Safety
 `a`, `b` are live specimen handles, `witness_json` is a NUL-terminated
 string and `out_status` is writable.
 */
enum AfinvStatus afinv_witness_check(const struct AfinvSpecimen *a,
                                     const struct AfinvSpecimen *b,
                                     const char *witness_json,
                                     size_t depth,
                                     enum AfinvWitnessStatus *out_status);

/*
 Bratteli diagram to `depth` in DOT.

 # Safety
 `s` is a live specimen handle and `out` is writable.
 */
enum AfinvStatus afinv_diagram_dot(const struct AfinvSpecimen *s, size_t depth, char **out);

/*
 Bratteli diagram to `depth` in JSON.

 # Safety
 `s` is a live specimen handle and `out` is writable.
 */
enum AfinvStatus afinv_diagram_json(const struct AfinvSpecimen *s, size_t depth, char **out);

/*
 Enumerates and classifies the rank-N family with Perron eigenvalue λ.
 `jobs` = 0 uses the default thread pool. `out_classes` may be NULL.

 # Safety
 `out_json` is writable and `out_classes` is NULL or writable.
 */
enum AfinvStatus afinv_classify_family(uint64_t lambda,
                                       size_t n,
                                       size_t jobs,
                                       char **out_json,
                                       size_t *out_classes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AFINV_H */
