#ifndef SIXFOLD_H
#define SIXFOLD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  /**
   * Malformed JSON, inexact number, invalid polygon or parameter.
   */
  SF_STATUS_INVALID_INPUT = 1,
  /**
   * The pair does not tile with the requested multiplicity.
   */
  SF_STATUS_VERIFICATION_FAILED = 2,
  /**
   * The library found its own results inconsistent.
   */
  SF_STATUS_INTERNAL = 3,
  SF_STATUS_NULL_POINTER = 4,
  /**
   * A panic was caught at the boundary.
   */
  SF_STATUS_PANIC = 5,
} SfStatus;

/**
 * Certificate of a k-fold lattice tiling.
 */
typedef struct SfCertificate SfCertificate;

/**
 * Planar lattice.
 */
typedef struct SfLattice SfLattice;

/**
 * Centrally symmetric convex polygon.
 */
typedef struct SfPolygon SfPolygon;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sf_version(void);

/**
 * Message for the last failed call on this thread, or NULL.
 *
 * # Safety
 * `out` must be a valid pointer; the string is released with `sf_string_free`.
 */
enum SfStatus sf_last_error(char **out);

/**
 * # Safety
 * `s` must come from this library or be NULL.
 */
void sf_string_free(char *s);

/**
 * Parses `{"vertices": [["p/q", "r/s"], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_polygon_from_json(const char *json, struct SfPolygon **out);

/**
 * # Safety
 * `p` must be a live polygon handle and `out` a valid pointer.
 */
enum SfStatus sf_polygon_to_json(const struct SfPolygon *p, char **out);

/**
 * Exact area as a rational string.
 *
 * # Safety
 * `p` must be a live polygon handle and `out` a valid pointer.
 */
enum SfStatus sf_polygon_area(const struct SfPolygon *p, char **out);

/**
 * Member of a stored family: octagon families take a rational parameter,
 * decagon families a free vertex `"x,y"` (NULL for the default).
 *
 * # Safety
 * `name` must be a NUL-terminated string, `param` one or NULL, `out` valid.
 */
enum SfStatus sf_family_polygon(const char *name, const char *param, struct SfPolygon **out);

/**
 * # Safety
 * `p` must come from this library or be NULL; it is invalid afterwards.
 */
void sf_polygon_free(struct SfPolygon *p);

/**
 * Parses `{"basis": [["a","b"], ["c","d"]]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SfStatus sf_lattice_from_json(const char *json, struct SfLattice **out);

/**
 * The integer lattice.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_lattice_integer(struct SfLattice **out);

/**
 * # Safety
 * `l` must be a live lattice handle and `out` a valid pointer.
 */
enum SfStatus sf_lattice_to_json(const struct SfLattice *l, char **out);

/**
 * # Safety
 * `l` must come from this library or be NULL; it is invalid afterwards.
 */
void sf_lattice_free(struct SfLattice *l);

/**
 * Certifies that `p + l` is a `k`-fold tiling and cross-checks `samples`
 * generic points with the oracle. `k = 0` accepts the multiplicity the
 * edge conditions imply.
 *
 * # Safety
 * `p`, `l` must be live handles and `out` a valid pointer.
 */
enum SfStatus sf_verify(const struct SfPolygon *p,
                        const struct SfLattice *l,
                        uint64_t k,
                        uint64_t samples,
                        uint64_t seed,
                        struct SfCertificate **out);

/**
 * # Safety
 * `c` must be a live certificate handle and `out` a valid pointer.
 */
enum SfStatus sf_certificate_k(const struct SfCertificate *c, uint64_t *out);

/**
 * # Safety
 * `c` must be a live certificate handle and `out` a valid pointer.
 */
enum SfStatus sf_certificate_to_json(const struct SfCertificate *c, char **out);

/**
 * # Safety
 * `c` must come from this library or be NULL; it is invalid afterwards.
 */
void sf_certificate_free(struct SfCertificate *c);

/**
 * JSON array of every lattice giving a `k`-fold tiling by `p`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_find_lattices(const struct SfPolygon *p, uint64_t k, char **out);

/**
 * Classification record of `p` as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum SfStatus sf_classify(const struct SfPolygon *p, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SIXFOLD_H */
