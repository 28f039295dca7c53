#ifndef PARCAT_H
#define PARCAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit codes.
 */
typedef enum ParcatStatus {
  /**
   * Operation completed and every check passed.
   */
  ParcatStatus_Ok = 0,
  /**
   * Operation completed but some law failed; see the report.
   */
  ParcatStatus_ValidationFailed = 1,
  /**
   * Malformed input: parse error, bad reference, wrong kind.
   */
  ParcatStatus_Malformed = 2,
  /**
   * A search or closure budget was exceeded.
   */
  ParcatStatus_BudgetExceeded = 3,
  /**
   * A required pointer argument was null.
   */
  ParcatStatus_NullArgument = 4,
  /**
   * Internal panic; the handle should be discarded.
   */
  ParcatStatus_Internal = 5,
} ParcatStatus;

/**
 * An opaque report handle.
 */
typedef struct ParcatReport ParcatReport;

/**
 * An opaque loaded structure: a spec file plus its input designation.
 */
typedef struct ParcatSpec ParcatSpec;

/**
 * The most recent error message on this thread, or null. Borrowed; do not
 * free. Valid until the next failing call on the same thread.
 */
const char *parcat_last_error(void);

/**
 * Load a structure from a `corpus:<name>` designation or a file path.
 * On success writes a new handle to `out`.
 *
 * # Safety
 * `input` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum ParcatStatus parcat_load(const char *input, struct ParcatSpec **out);

/**
 * Validate the loaded structure. On success writes a report handle to `out`
 * and returns `Ok` or `ValidationFailed` according to the result.
 *
 * # Safety
 * `spec` must be a live handle from `parcat_load`; `out` must be valid.
 */
enum ParcatStatus parcat_validate(const struct ParcatSpec *spec, struct ParcatReport **out);

/**
 * Run a construction (`smash`, `globalize`, `trace`, `polyad`,
 * `equivariantize`, `algebra`). `object` may be null except for `trace`;
 * `cap` of zero means the default. The constructed structure's canonical
 * text is written to `out_text` when non-null (free with
 * `parcat_string_free`).
 *
 * # Safety
 * `spec` must be a live handle; `op` (and `object` when non-null) must be
 * valid NUL-terminated strings; `out` must be valid.
 */
enum ParcatStatus parcat_construct(const struct ParcatSpec *spec,
                                   const char *op,
                                   const char *object,
                                   uintptr_t cap,
                                   struct ParcatReport **out,
                                   char **out_text);

/**
 * Deterministic enumeration (`central-idempotents` or `equivariant`).
 *
 * # Safety
 * `spec` must be a live handle; `what` (and `carrier` when non-null) must
 * be valid NUL-terminated strings; `out` must be valid.
 */
enum ParcatStatus parcat_enumerate(const struct ParcatSpec *spec,
                                   const char *what,
                                   const char *carrier,
                                   struct ParcatReport **out);

/**
 * Render a report as JSON (owned string; free with `parcat_string_free`).
 *
 * # Safety
 * `report` must be a live handle from a reporting call.
 */
char *parcat_report_json(const struct ParcatReport *report);

/**
 * The canonical text of the loaded structure (owned string).
 *
 * # Safety
 * `spec` must be a live handle from `parcat_load`.
 */
char *parcat_spec_text(const struct ParcatSpec *spec);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a string returned by this library, released at most once.
 */
void parcat_string_free(char *s);

/**
 * Release a spec handle.
 *
 * # Safety
 * `spec` must come from `parcat_load`, released at most once.
 */
void parcat_spec_free(struct ParcatSpec *spec);

/**
 * Release a report handle.
 *
 * # Safety
 * `report` must come from a reporting call, released at most once.
 */
void parcat_report_free(struct ParcatReport *report);

#endif /* PARCAT_H */
