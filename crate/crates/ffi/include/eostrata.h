#ifndef EOSTRATA_H
#define EOSTRATA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EostrataStatus {
  EOSTRATA_STATUS_OK = 0,
  EOSTRATA_STATUS_NULL_ARGUMENT = 1,
  EOSTRATA_STATUS_INVALID_UTF8 = 2,
  EOSTRATA_STATUS_PARSE = 3,
  EOSTRATA_STATUS_COMPUTATION = 4,
  EOSTRATA_STATUS_UNSUPPORTED = 5,
  /**
   * The output was produced but records at least one hard failure.
   */
  EOSTRATA_STATUS_HARD_FAILURE = 6,
  EOSTRATA_STATUS_PANIC = 7,
} EostrataStatus;

typedef enum EostrataCommand {
  EOSTRATA_COMMAND_DESCRIBE = 0,
  EOSTRATA_COMMAND_BGMU = 1,
  EOSTRATA_COMMAND_EO_POSET = 2,
  EOSTRATA_COMMAND_EO_TO_NEWTON = 3,
  EOSTRATA_COMMAND_HN_CHECK = 4,
  EOSTRATA_COMMAND_VERIFY_LOOP = 5,
} EostrataCommand;

typedef enum EostrataFormat {
  EOSTRATA_FORMAT_JSON = 0,
  EOSTRATA_FORMAT_DOT = 1,
  EOSTRATA_FORMAT_TEXT = 2,
} EostrataFormat;

typedef enum EostrataExperiment {
  EOSTRATA_EXPERIMENT_K1 = 0,
  EOSTRATA_EXPERIMENT_IWAHORI = 1,
  EOSTRATA_EXPERIMENT_CONSTRUCTED = 2,
  EOSTRATA_EXPERIMENT_HN_REDUCTION = 3,
} EostrataExperiment;

/**
 * Opaque handle to a parsed and loaded group spec.
 */
typedef struct EostrataSpec EostrataSpec;

/**
 * Options for `eostrata_verify_loop`. Zero `prec` picks the default truncation;
 * a null `m_schedule` picks the default field-degree schedule.
 */
typedef struct EostrataLoopOptions {
  enum EostrataExperiment experiment;
  uint32_t q;
  size_t prec;
  size_t samples;
  uint64_t seed;
  bool exhaustive;
  const uint32_t *m_schedule;
  size_t m_schedule_len;
} EostrataLoopOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a spec in the `key=value` format. On success `*out` owns a handle
 * that must be released with `eostrata_spec_free`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EostrataStatus eostrata_spec_parse(const char *text, struct EostrataSpec **out);

/**
 * # Safety
 * `spec` must come from `eostrata_spec_parse` and not be freed twice. Null is ignored.
 */
void eostrata_spec_free(struct EostrataSpec *spec);

/**
 * Renders one report. `verify_loop` runs with default options here.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum EostrataStatus eostrata_render(const struct EostrataSpec *spec,
                                    enum EostrataCommand command,
                                    enum EostrataFormat format,
                                    char **out);

struct EostrataLoopOptions eostrata_loop_options_default(void);

/**
 * Runs a loop-group experiment and writes its JSON report.
 * Returns `HardFailure` (with the report written) when any sample failed.
 *
 * # Safety
 * `spec` must be a live handle, `options` and `out` valid pointers, and
 * `options->m_schedule` either null or valid for `m_schedule_len` reads.
 */
enum EostrataStatus eostrata_verify_loop(const struct EostrataSpec *spec,
                                         const struct EostrataLoopOptions *options,
                                         char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void eostrata_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library from the same thread.
 */
const char *eostrata_last_error(void);

/**
 * Static description of a status code.
 */
const char *eostrata_status_message(enum EostrataStatus status);

const char *eostrata_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EOSTRATA_H */
