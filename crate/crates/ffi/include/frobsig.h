#ifndef FROBSIG_H
#define FROBSIG_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Output formats for [`frobsig_run`].
 */
typedef enum FrobsigFormat {
  FROBSIG_FORMAT_JSON = 0,
  FROBSIG_FORMAT_CSV = 1,
  FROBSIG_FORMAT_TABLE = 2,
} FrobsigFormat;

/**
 * Result codes. The first four match the exit codes of the `frobsig` binary.
 */
typedef enum FrobsigStatus {
  FROBSIG_STATUS_OK = 0,
  /**
   * The computation ran but an internal consistency check failed; the
   * report is still returned.
   */
  FROBSIG_STATUS_CHECK_FAILED = 1,
  /**
   * The input was rejected (parse error, ideal not primary to the origin, ...).
   */
  FROBSIG_STATUS_INVALID = 2,
  /**
   * A budget (subspace count, degree, field size) was exceeded.
   */
  FROBSIG_STATUS_BUDGET = 3,
  FROBSIG_STATUS_NULL_POINTER = 4,
  FROBSIG_STATUS_INVALID_UTF8 = 5,
  /**
   * Any other error, including a caught panic.
   */
  FROBSIG_STATUS_INTERNAL = 6,
} FrobsigStatus;

/**
 * Opaque parsed instance file.
 */
typedef struct FrobsigInstance FrobsigInstance;

/**
 * Overrides for [`frobsig_run`]. Null strings and negative numbers mean
 * "use the instance's task line".
 */
typedef struct FrobsigRunOptions {
  /**
   * One of `hk`, `srel`, `srat`, `gamma`, `verify`, `oracle-diff`.
   */
  const char *task;
  const char *ideal;
  int32_t e_max;
  int32_t e;
  /**
   * Krull dimension override.
   */
  int32_t dim;
  /**
   * Maximum number of candidate subspaces; 0 keeps the default.
   */
  uint64_t budget;
  bool rank1_only;
  /**
   * Worker threads; 0 or 1 runs sequentially.
   */
  uint32_t parallel;
  enum FrobsigFormat format;
} FrobsigRunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default options: everything taken from the instance, JSON output.
 */
struct FrobsigRunOptions frobsig_run_options_default(void);

/**
 * Parses an instance file held in `text`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` points to writable storage.
 */
enum FrobsigStatus frobsig_instance_parse(const char *text, struct FrobsigInstance **out);

/**
 * Releases an instance; null is ignored.
 *
 * # Safety
 * `instance` is null or was returned by [`frobsig_instance_parse`] and not yet freed.
 */
void frobsig_instance_free(struct FrobsigInstance *instance);

/**
 * Prints the instance back in canonical instance-file syntax.
 *
 * # Safety
 * `instance` is a live instance; `out` points to writable storage.
 */
enum FrobsigStatus frobsig_instance_print(const struct FrobsigInstance *instance, char **out);

/**
 * Runs the instance's task (or the one in `options`) and stores the report
 * in `out`. `name` labels the report and may be null. On `CheckFailed` the
 * report is stored as well.
 *
 * # Safety
 * `instance` is a live instance, `options` is null or points to valid
 * options whose strings are null or NUL-terminated, and `out` points to
 * writable storage.
 */
enum FrobsigStatus frobsig_run(const struct FrobsigInstance *instance,
                               const char *name,
                               const struct FrobsigRunOptions *options,
                               char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void frobsig_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *frobsig_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *frobsig_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FROBSIG_H */
