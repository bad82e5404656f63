#ifndef KOSZUL_H
#define KOSZUL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. The first three match the command-line exit codes.
 */
typedef enum KzStatus {
  KZ_STATUS_OK = 0,
  KZ_STATUS_INPUT_ERROR = 1,
  KZ_STATUS_ENGINE_ERROR = 2,
  KZ_STATUS_NULL_ARGUMENT = 3,
  KZ_STATUS_INVALID_UTF8 = 4,
  KZ_STATUS_INVALID_ARGUMENT = 5,
  KZ_STATUS_PANIC = 6,
} KzStatus;

/**
 * A parsed presentation document.
 */
typedef struct KzDocument KzDocument;

/**
 * Engine settings for [`kz_run`].
 */
typedef struct KzOptions {
  size_t degree_bound;
  int64_t search_bound;
  /**
   * Run over the whole parameter grid.
   */
  bool sweep;
  /**
   * Aligned text instead of JSON.
   */
  bool text;
} KzOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct KzOptions kz_options_default(void);

/**
 * Library version, a static string.
 */
const char *kz_version(void);

/**
 * Parses `source`. On success `*doc` receives a handle to release with
 * [`kz_document_free`]; on failure `*error` (if non-null) receives a JSON
 * error with line and column.
 *
 * # Safety
 * `source` must be a NUL-terminated string; `doc` must be valid for writes.
 */
enum KzStatus kz_document_parse(const char *source, struct KzDocument **doc, char **error);

/**
 * # Safety
 * `doc` must come from [`kz_document_parse`] and not be used afterwards.
 */
void kz_document_free(struct KzDocument *doc);

/**
 * Canonical text of a document; parsing it gives the same document.
 *
 * # Safety
 * `doc` must be a live handle and `out` valid for writes.
 */
enum KzStatus kz_document_pretty(const struct KzDocument *doc, char **out);

/**
 * Runs `command` (for example `"nakayama"` or `"cy-double-ore"`).
 *
 * `target`, `field` (`"q"` or `"F<p>"`) and `bindings` (`"f=1; g=-1/2"`) may
 * be null. `*report` receives the report on success and the error payload
 * otherwise; the status mirrors the command-line exit code.
 *
 * # Safety
 * Strings must be NUL-terminated or null; `doc` must be a live handle and
 * `report` valid for writes.
 */
enum KzStatus kz_run(const struct KzDocument *doc,
                     const char *command,
                     struct KzOptions options,
                     const char *target,
                     const char *field,
                     const char *bindings,
                     char **report);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void kz_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KOSZUL_H */
