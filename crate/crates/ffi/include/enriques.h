#ifndef ENRIQUES_H
#define ENRIQUES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bits of a class mask returned by [`enr_classify`].
 */
#define ENR_CLASS_SINGULAR 1

#define ENR_CLASS_CLASSICAL 2

#define ENR_CLASS_SUPERSINGULAR 4

/**
 * Result codes. The first five match the command-line exit codes.
 */
typedef enum EnrStatus {
  ENR_STATUS_OK = 0,
  ENR_STATUS_CHECK_FAILED = 1,
  ENR_STATUS_INTERNAL = 2,
  ENR_STATUS_PARSE = 3,
  ENR_STATUS_UNKNOWN_BUILTIN = 4,
  ENR_STATUS_NULL_POINTER = 5,
  ENR_STATUS_INVALID_UTF8 = 6,
  ENR_STATUS_OUT_OF_RANGE = 7,
  ENR_STATUS_PANIC = 8,
} EnrStatus;

typedef enum EnrCheckStatus {
  ENR_CHECK_STATUS_PASS = 0,
  ENR_CHECK_STATUS_FAIL = 1,
  ENR_CHECK_STATUS_OPEN = 2,
} EnrCheckStatus;

/**
 * A Weierstrass curve.
 */
typedef struct EnrCurve EnrCurve;

/**
 * A verification report.
 */
typedef struct EnrReport EnrReport;

typedef struct EnrSummary {
  size_t total;
  size_t pass;
  size_t fail;
  size_t open;
} EnrSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The library version as a static string.
 */
const char *enr_version(void);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call on this thread.
 */
const char *enr_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned through an out-pointer of this library and
 * not yet freed.
 */
void enr_string_free(char *s);

/**
 * Runs the verification suite. `only` is null or a module name; `jobs` = 0
 * uses all logical processors. Returns `CHECK_FAILED` (with the report
 * still written to `out`) when any check failed.
 *
 * # Safety
 * `only` is null or a nul-terminated string; `out` is a valid pointer.
 */
enum EnrStatus enr_verify_all(const char *only, uint32_t jobs, struct EnrReport **out);

/**
 * # Safety
 * `report` is null or a live handle from [`enr_verify_all`].
 */
void enr_report_free(struct EnrReport *report);

/**
 * # Safety
 * `report` is a live handle and `out` a valid pointer.
 */
enum EnrStatus enr_report_summary(const struct EnrReport *report, struct EnrSummary *out);

/**
 * The id of check `index`, owned by the report.
 *
 * # Safety
 * `report` is a live handle and `id` a valid pointer.
 */
enum EnrStatus enr_report_check(const struct EnrReport *report,
                                size_t index,
                                const char **id,
                                enum EnrCheckStatus *status);

/**
 * Renders the report as JSON (`markdown` = false) or markdown.
 *
 * # Safety
 * `report` is a live handle and `out` a valid pointer.
 */
enum EnrStatus enr_report_render(const struct EnrReport *report, bool markdown, char **out);

/**
 * Loads a built-in curve (`E`, `R`, `Ystar`, `kummerEF`).
 *
 * # Safety
 * `name` is a nul-terminated string and `out` a valid pointer.
 */
enum EnrStatus enr_curve_builtin(const char *name, struct EnrCurve **out);

/**
 * Parses a curve from its JSON file format.
 *
 * # Safety
 * `json` is a nul-terminated string and `out` a valid pointer.
 */
enum EnrStatus enr_curve_from_json(const char *json, struct EnrCurve **out);

/**
 * # Safety
 * `curve` is null or a live curve handle.
 */
void enr_curve_free(struct EnrCurve *curve);

/**
 * Writes the discriminant of `curve` as a string.
 *
 * # Safety
 * `curve` is a live handle and `out` a valid pointer.
 */
enum EnrStatus enr_curve_discriminant(const struct EnrCurve *curve, char **out);

/**
 * Writes the bad fibers of a curve over GF(2^k)(t) as a JSON array.
 *
 * # Safety
 * `curve` is a live handle and `out` a valid pointer.
 */
enum EnrStatus enr_curve_fibers_json(const struct EnrCurve *curve, char **out);

/**
 * Admissible Enriques classes for built-in facts (`factsI` .. `factsVII`)
 * as a mask of `ENR_CLASS_*` bits; 0 means non-existent.
 *
 * # Safety
 * `facts` is a nul-terminated string and `mask` a valid pointer.
 */
enum EnrStatus enr_classify(const char *facts, uint32_t *mask);

/**
 * Runs the identity checks of one construction and writes them as JSON.
 * Returns `CHECK_FAILED` (with the output written) if any check failed.
 *
 * # Safety
 * `name` is a nul-terminated string and `out` a valid pointer.
 */
enum EnrStatus enr_construction_json(const char *name, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENRIQUES_H */
