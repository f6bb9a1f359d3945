#ifndef POLYFUN_H
#define POLYFUN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first five agree with the command-line exit codes.
 */
typedef enum PfStatus {
  PfOk = 0,
  PfFailure = 1,
  PfInconclusive = 2,
  PfInputError = 3,
  PfUnsupported = 4,
  PfNullArgument = 5,
  PfPanic = 6,
} PfStatus;

/**
 * A parsed input document.
 */
typedef struct PfDocument PfDocument;

/**
 * The result of one subcommand.
 */
typedef struct PfReport PfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 * On success `*out` holds a handle to release with [`pf_document_free`].
 */
enum PfStatus pf_document_parse(const char *text, struct PfDocument **out);

/**
 * The document in canonical printed form. Owned by the handle.
 *
 * # Safety
 * `doc` must be a live handle or null.
 */
const char *pf_document_print(const struct PfDocument *doc);

/**
 * Number of declarations in the document, or 0 for a null handle.
 *
 * # Safety
 * `doc` must be a live handle or null.
 */
uintptr_t pf_document_len(const struct PfDocument *doc);

/**
 * # Safety
 * `doc` must come from [`pf_document_parse`] and not be used afterwards.
 */
void pf_document_free(struct PfDocument *doc);

/**
 * Run a subcommand, given as `argc` arguments without the program name
 * (for example `certify waring2 mixed --max-d1 1`), against `doc`.
 *
 * The returned status is the command's exit code. When a report was
 * produced, `*out` holds it, including for `PfInconclusive`.
 *
 * # Safety
 * `doc` must be a live handle, `argv` must point to `argc` NUL-terminated
 * strings, and `out` must be writable.
 */
enum PfStatus pf_run(const struct PfDocument *doc,
                     uintptr_t argc,
                     const char *const *argv,
                     struct PfReport **out);

/**
 * The report without timings. Owned by the handle.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
const char *pf_report_body(const struct PfReport *report);

/**
 * The full report, timings included. Owned by the handle.
 *
 * # Safety
 * `report` must be a live handle or null.
 */
const char *pf_report_text(const struct PfReport *report);

/**
 * # Safety
 * `report` must be a live handle or null.
 */
enum PfStatus pf_report_status(const struct PfReport *report);

/**
 * # Safety
 * `report` must come from [`pf_run`] and not be used afterwards.
 */
void pf_report_free(struct PfReport *report);

/**
 * Message for the last failed call on this thread, or null.
 */
const char *pf_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYFUN_H */
