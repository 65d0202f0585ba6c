#ifndef DFRAME_H
#define DFRAME_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. The first four match the `dfrm`
 * exit codes.
 */
typedef enum DfStatus {
  DF_STATUS_OK = 0,
  DF_STATUS_MATH_FAILURE = 1,
  DF_STATUS_INPUT_ERROR = 2,
  DF_STATUS_CAPACITY = 3,
  DF_STATUS_NULL_POINTER = 4,
  DF_STATUS_NOT_FOUND = 5,
  DF_STATUS_UTF8 = 6,
  DF_STATUS_PANIC = 7,
} DfStatus;

/**
 * A finite d-frame.
 */
typedef struct DfDFrame DfDFrame;

/**
 * A parsed document.
 */
typedef struct DfDocument DfDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *df_last_error(void);

/**
 * Frees a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void df_string_free(char *s);

/**
 * Parses a document in the `.dfrm` text format.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out` must be writable.
 */
enum DfStatus df_document_parse(const char *text, struct DfDocument **out);

/**
 * # Safety
 * `doc` must come from [`df_document_parse`] and not have been freed.
 */
void df_document_free(struct DfDocument *doc);

/**
 * Number of declarations, or 0 for a null handle.
 *
 * # Safety
 * `doc` must be null or a live handle.
 */
size_t df_document_len(const struct DfDocument *doc);

/**
 * Canonical text of the document.
 *
 * # Safety
 * `doc` must be a live handle; `out` must be writable.
 */
enum DfStatus df_document_to_text(const struct DfDocument *doc, char **out);

/**
 * Copies the d-frame declared as `name` out of a document.
 *
 * # Safety
 * `doc` must be a live handle, `name` a nul-terminated string and `out`
 * writable.
 */
enum DfStatus df_document_dframe(const struct DfDocument *doc,
                                 const char *name,
                                 struct DfDFrame **out);

/**
 * One of the built-in d-frames: `two_d`, `sier` or `trivial`.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum DfStatus df_dframe_fixture(const char *name, struct DfDFrame **out);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
void df_dframe_free(struct DfDFrame *d);

/**
 * Element counts of the two frames and sizes of `con` and `tot`. Any of
 * the output pointers may be null.
 *
 * # Safety
 * `d` must be a live handle; non-null outputs must be writable.
 */
enum DfStatus df_dframe_sizes(const struct DfDFrame *d,
                              size_t *plus,
                              size_t *minus,
                              size_t *con,
                              size_t *tot);

/**
 * Checks the seven d-frame axioms. Returns `DF_STATUS_MATH_FAILURE` with
 * the failing axioms in the error message when any fails.
 *
 * # Safety
 * `d` must be a live handle.
 */
enum DfStatus df_dframe_check(const struct DfDFrame *d);

/**
 * Coproduct of `n` d-frames.
 *
 * # Safety
 * `family` must point to `n` live handles; `out` must be writable.
 */
enum DfStatus df_dframe_coproduct(const struct DfDFrame *const *family,
                                  size_t n,
                                  struct DfDFrame **out);

/**
 * Same report as `dfrm validate`.
 *
 * # Safety
 * `doc` must be a live handle; `out` must be writable.
 */
enum DfStatus df_validate(const struct DfDocument *doc, bool json, char **out);

/**
 * Same report as `dfrm gen --name NAME`.
 *
 * # Safety
 * `doc` must be a live handle, `name` a nul-terminated string and `out`
 * writable.
 */
enum DfStatus df_gen(const struct DfDocument *doc, const char *name, bool json, char **out);

/**
 * Same report as `dfrm check --name NAME [--conditions]`.
 *
 * # Safety
 * `doc` must be a live handle, `name` a nul-terminated string and `out`
 * writable.
 */
enum DfStatus df_check(const struct DfDocument *doc,
                       const char *name,
                       bool conditions,
                       bool json,
                       char **out);

/**
 * Same report as `dfrm coproduct --names a,b,...`; `names` is the
 * comma-separated list.
 *
 * # Safety
 * `doc` must be a live handle, `names` a nul-terminated string and `out`
 * writable.
 */
enum DfStatus df_coproduct(const struct DfDocument *doc, const char *names, bool json, char **out);

/**
 * Same report as `dfrm search`. `random` selects random mode; `samples`
 * and `seed` only apply there.
 *
 * # Safety
 * `out` must be writable.
 */
enum DfStatus df_search(size_t max_b,
                        size_t max_rel,
                        bool random,
                        size_t samples,
                        uint64_t seed,
                        bool json,
                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DFRAME_H */
