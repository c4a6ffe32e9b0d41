#ifndef CTRS_H
#define CTRS_H

#include <stddef.h>
#include <stdint.h>

typedef enum CtrsStatus {
  CTRS_STATUS_OK = 0,
  CTRS_STATUS_PARSE_ERROR = 1,
  CTRS_STATUS_INVALID_PRECEDENCE = 2,
  CTRS_STATUS_INVALID_ARGUMENT = 3,
  CTRS_STATUS_NULL_POINTER = 4,
  CTRS_STATUS_INTERNAL = 5,
} CtrsStatus;

typedef enum CtrsAnswer {
  CTRS_ANSWER_YES = 0,
  CTRS_ANSWER_NO = 1,
  CTRS_ANSWER_MAYBE = 2,
} CtrsAnswer;

typedef enum CtrsCcpResult {
  CTRS_CCP_RESULT_JOINABLE = 0,
  CTRS_CCP_RESULT_NOT_JOINABLE = 1,
  CTRS_CCP_RESULT_UNKNOWN = 2,
} CtrsCcpResult;

typedef enum CtrsFormat {
  CTRS_FORMAT_TEXT = 0,
  CTRS_FORMAT_STRUCTURED = 1,
} CtrsFormat;

/**
 * The outcome of one analysis.
 */
typedef struct CtrsReport CtrsReport;

/**
 * A parsed rewrite system.
 */
typedef struct CtrsSystem CtrsSystem;

/**
 * Search budgets. All fields must be positive.
 */
typedef struct CtrsOptions {
  uintptr_t cond_depth;
  uintptr_t fuel;
  uintptr_t max_term_size;
} CtrsOptions;

/**
 * Position of the last parse error; zero when unknown.
 */
typedef struct CtrsLocation {
  uintptr_t line;
  uintptr_t column;
} CtrsLocation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Default budgets.
 */
struct CtrsOptions ctrs_options_default(void);

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next failing call on this thread.
 */
const char *ctrs_last_error(void);

/**
 * Line and column of the last parse error on this thread.
 */
struct CtrsLocation ctrs_last_error_location(void);

/**
 * Parses a system in COPS format.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CtrsStatus ctrs_system_parse(const char *source, struct CtrsSystem **out);

/**
 * Number of rules, or 0 for a null handle.
 *
 * # Safety
 * `system` must be null or a live handle.
 */
uintptr_t ctrs_system_rule_count(const struct CtrsSystem *system);

/**
 * # Safety
 * `system` must be null or a handle not yet freed.
 */
void ctrs_system_free(struct CtrsSystem *system);

/**
 * Runs the confluence analysis. `options` and `precedence` may be null.
 *
 * # Safety
 * `system` must be a live handle, `precedence` null or NUL-terminated, and
 * `out` a valid pointer.
 */
enum CtrsStatus ctrs_analyze(const struct CtrsSystem *system,
                             const struct CtrsOptions *options,
                             const char *precedence,
                             struct CtrsReport **out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum CtrsStatus ctrs_report_answer(const struct CtrsReport *report, enum CtrsAnswer *out);

/**
 * Number of critical pairs, or 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
uintptr_t ctrs_report_ccp_count(const struct CtrsReport *report);

/**
 * Joinability of the critical pair at `index` (0-based).
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum CtrsStatus ctrs_report_ccp_result(const struct CtrsReport *report,
                                       uintptr_t index,
                                       enum CtrsCcpResult *out);

/**
 * The rendered report, verdict first. The string lives as long as the
 * report handle. Returns null for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
const char *ctrs_report_render(struct CtrsReport *report, enum CtrsFormat format);

/**
 * # Safety
 * `report` must be null or a handle not yet freed.
 */
void ctrs_report_free(struct CtrsReport *report);

/**
 * Library version, statically allocated.
 */
const char *ctrs_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CTRS_H */
