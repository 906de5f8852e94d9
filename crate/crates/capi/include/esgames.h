#ifndef ESGAMES_H
#define ESGAMES_H

/* This header is generated by cbindgen from esgames-capi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum EsgStatus {
  ESG_STATUS_OK = 0,
  ESG_STATUS_VALIDATION_FAILED = 1,
  ESG_STATUS_INPUT_ERROR = 2,
  ESG_STATUS_BOUND_EXCEEDED = 3,
} EsgStatus;

/**
 * Opaque handle over a parsed document bundle.
 */
typedef struct EsgBundle EsgBundle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The document schema version this library reads and writes.
 */
uint32_t esg_schema_version(void);

/**
 * The message for the most recent failure on this thread. Valid until
 * the next failing call on the same thread.
 */
const char *esg_last_error(void);

/**
 * Override the configuration-count guard for subsequent calls; 0
 * restores the default.
 */
void esg_set_max_configs(uintptr_t max_configs);

/**
 * Parse bundle JSON into an opaque handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be a valid
 * pointer to write the handle into.
 */
enum EsgStatus esg_bundle_parse(const char *json, struct EsgBundle **out);

/**
 * Release a bundle handle.
 *
 * # Safety
 * `bundle` must be null or a pointer returned by [`esg_bundle_parse`],
 * released at most once.
 */
void esg_bundle_free(struct EsgBundle *bundle);

/**
 * Run the full validator suite over every document; the structured JSON
 * report is written to `out_report` on both verdicts.
 *
 * # Safety
 * `bundle` must be a live handle; `out_report` must be valid to write.
 */
enum EsgStatus esg_bundle_validate(const struct EsgBundle *bundle, char **out_report);

/**
 * Run a construction (`dual`, `par`, `bang`, `copycat`,
 * `uniform-copycat`, `lift`, `colift`, `tcg`) with JSON arguments of the
 * form `{"game": ..., "with": ..., "copies": ..., "witness": ...}` and
 * return the constructed bundle as JSON.
 *
 * # Safety
 * `bundle` must be a live handle; `construction` must be a valid string;
 * `args_json` may be null; `out_bundle` must be valid to write.
 */
enum EsgStatus esg_build(const struct EsgBundle *bundle,
                         const char *construction,
                         const char *args_json,
                         char **out_bundle);

/**
 * Exhaustively search a strategy document (`doc` may be null when the
 * bundle holds exactly one strategy) for a uniform structure. `bound`
 * of 0 keeps the default node budget. The result JSON is either a
 * bundle carrying the structure or a negative result with an optional
 * exhaustiveness certificate.
 *
 * # Safety
 * `bundle` must be a live handle; `doc` may be null; `out_result` must
 * be valid to write.
 */
enum EsgStatus esg_search_uniform(const struct EsgBundle *bundle,
                                  const char *doc,
                                  uint64_t bound,
                                  bool with_certificate,
                                  char **out_result);

/**
 * Render a document (`doc` may be null when the bundle holds exactly one
 * renderable document) as DOT; `view` is `causality`, `conflict`, or
 * `family`.
 *
 * # Safety
 * `bundle` must be a live handle; `view` must be a valid string; `doc`
 * may be null; `out_dot` must be valid to write.
 */
enum EsgStatus esg_export_dot(const struct EsgBundle *bundle,
                              const char *doc,
                              const char *view,
                              char **out_dot);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library, released at
 * most once.
 */
void esg_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ESGAMES_H */
