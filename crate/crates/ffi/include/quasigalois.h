#ifndef QUASIGALOIS_H
#define QUASIGALOIS_H

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  QG_STATUS_OK = 0,
  QG_STATUS_NULL_POINTER = 1,
  QG_STATUS_INVALID_UTF8 = 2,
  QG_STATUS_PARSE = 3,
  QG_STATUS_INVALID_INPUT = 4,
  QG_STATUS_ROOTS_MISSING = 5,
  QG_STATUS_PROJECTION_DEGENERATE = 6,
  QG_STATUS_CAP_EXCEEDED = 7,
  QG_STATUS_VERIFICATION_FAILED = 8,
  QG_STATUS_OUT_OF_RANGE = 9,
  QG_STATUS_INTERNAL = 10,
} QgStatus;

/**
 * The decided quasi-Galois order at one point.
 */
typedef struct QgCertificate QgCertificate;

/**
 * Certificates from discovery, sorted by point.
 */
typedef struct QgCertificateList QgCertificateList;

/**
 * A plane curve with its coefficient field and seed points.
 */
typedef struct QgCurve QgCurve;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call; never null.
 */
const char *qg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *qg_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void qg_string_free(char *s);

/**
 * Parses a curve file (JSON text).
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
QgStatus qg_curve_from_json(const char *json, QgCurve **out);

/**
 * Builds a corpus curve from a spec such as `"fermat:6"` or `"klein"`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
QgStatus qg_curve_from_corpus(const char *spec, QgCurve **out);

/**
 * # Safety
 * `curve` must be null or a handle from `qg_curve_from_*` not yet freed.
 */
void qg_curve_free(QgCurve *curve);

/**
 * Degree of the curve, or 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
uint32_t qg_curve_degree(const QgCurve *curve);

/**
 * Serializes the curve as a curve file.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
QgStatus qg_curve_to_json(const QgCurve *curve, char **out);

/**
 * Decides the quasi-Galois order at a point literal such as `"1:0:0"`.
 *
 * # Safety
 * `curve` must be a live handle, `point` a nul-terminated string and `out`
 * a valid pointer.
 */
QgStatus qg_analyze(const QgCurve *curve, const char *point, QgCertificate **out);

/**
 * # Safety
 * `cert` must be null or a live certificate handle.
 */
void qg_certificate_free(QgCertificate *cert);

/**
 * |G₀[P]|; 1 means not quasi-Galois, 0 a null handle.
 *
 * # Safety
 * `cert` must be null or a live handle.
 */
uint32_t qg_certificate_order(const QgCertificate *cert);

/**
 * # Safety
 * `cert` must be null or a live handle.
 */
uint32_t qg_certificate_projection_degree(const QgCertificate *cert);

/**
 * # Safety
 * `cert` must be null or a live handle.
 */
bool qg_certificate_on_curve(const QgCertificate *cert);

/**
 * # Safety
 * `cert` must be null or a live handle.
 */
bool qg_certificate_is_galois(const QgCertificate *cert);

/**
 * The certificate record as JSON (point, order, generator, axis).
 *
 * # Safety
 * `cert` must be a live handle and `out` a valid pointer.
 */
QgStatus qg_certificate_to_json(const QgCertificate *cert, char **out);

/**
 * Discovery from the curve's seed points (the coordinate vertices when it
 * has none). `cap` of 0 selects the default.
 *
 * # Safety
 * `curve` must be a live handle and `out` a valid pointer.
 */
QgStatus qg_discover(const QgCurve *curve, size_t cap, QgCertificateList **out);

/**
 * # Safety
 * `list` must be null or a live handle.
 */
size_t qg_certificate_list_len(const QgCertificateList *list);

/**
 * Copies entry `index` into a new certificate handle.
 *
 * # Safety
 * `list` must be a live handle and `out` a valid pointer.
 */
QgStatus qg_certificate_list_get(const QgCertificateList *list, size_t index, QgCertificate **out);

/**
 * The list with its census as JSON: `{"certificates": [...], "census": {...}}`.
 *
 * # Safety
 * `list` must be a live handle and `out` a valid pointer.
 */
QgStatus qg_certificate_list_to_json(const QgCertificateList *list, char **out);

/**
 * # Safety
 * `list` must be null or a live handle.
 */
void qg_certificate_list_free(QgCertificateList *list);

/**
 * Runs a named scenario (`klein21`, `fermat:6`, ...). Returns `Ok` when every
 * check passes and `VerificationFailed` otherwise; in both cases the result
 * record is written to `out_json` when it is non-null.
 *
 * # Safety
 * `id` must be a nul-terminated string; `out_json` null or a valid pointer.
 */
QgStatus qg_verify_scenario(const char *id, size_t cap, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUASIGALOIS_H */
