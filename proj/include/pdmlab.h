/* C interface of the PDM laboratory shared library.
 *
 * All entry points return a status code; PDMLAB_OK means success. On any
 * failure pdmlab_last_error() carries a thread-local description. Objects
 * returned through out-parameters are owned by the caller and released with
 * the matching *_free function; strings allocated by the library are
 * released with pdmlab_string_free.
 */
#ifndef PDMLAB_H
#define PDMLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdmlab_status {
    PDMLAB_OK = 0,
    PDMLAB_E_DOMAIN = 1,
    PDMLAB_E_INPUT = 2,
    PDMLAB_E_LOOKUP = 3,
    PDMLAB_E_PARAMETER = 4,
    PDMLAB_E_SINGULARITY = 5,
    PDMLAB_E_MONOTONICITY = 6,
    PDMLAB_E_UNSUPPORTED = 7,
    PDMLAB_E_PARSE = 8,
    PDMLAB_E_VALIDATION = 9,
    PDMLAB_E_TRUNCATED = 10,
    PDMLAB_E_STEP_LIMIT = 11,
    PDMLAB_E_IO = 12,
    PDMLAB_E_INTERNAL = 13,
    PDMLAB_E_BAD_HANDLE = 14
} pdmlab_status;

typedef struct pdmlab_config pdmlab_config;
typedef struct pdmlab_report pdmlab_report;

/* --- configuration ------------------------------------------------------ */

/* Fresh configuration holding pure defaults (model ml1). */
pdmlab_status pdmlab_config_create(pdmlab_config** out);

/* Parses the structured-text grammar (key = value lines, # comments, one
 * integrator { ... } block). The text is validated immediately; the model's
 * per-model defaults are applied underneath the explicit keys. */
pdmlab_status pdmlab_config_parse(const char* text, pdmlab_config** out);

/* Applies one key=value override on top of the parsed text, nested keys
 * spelled integrator.rtol. Overrides accumulate in call order. */
pdmlab_status pdmlab_config_set(pdmlab_config* cfg, const char* key, const char* value);

void pdmlab_config_free(pdmlab_config* cfg);

/* --- runs ---------------------------------------------------------------- */

pdmlab_status pdmlab_run_simulate(const pdmlab_config* cfg, pdmlab_report** out);
pdmlab_status pdmlab_run_verify(const pdmlab_config* cfg, pdmlab_report** out);
pdmlab_status pdmlab_run_map(const pdmlab_config* cfg, pdmlab_report** out);

/* --- report access -------------------------------------------------------- */

/* 1 when every asserted check passed, 0 otherwise. */
int pdmlab_report_passed(const pdmlab_report* rep);

/* Deterministic JSON serialization (stable key order, shortest round-trip
 * numbers); identical runs produce identical bytes. */
pdmlab_status pdmlab_report_json(const pdmlab_report* rep, char** out);

/* Human-readable table; ANSI color only when use_color is nonzero. */
pdmlab_status pdmlab_report_table(const pdmlab_report* rep, int use_color, char** out);

/* Data files produced by the run (trajectory CSVs). Returned pointers stay
 * valid until the report is freed. */
size_t pdmlab_report_file_count(const pdmlab_report* rep);
const char* pdmlab_report_file_name(const pdmlab_report* rep, size_t index);
const char* pdmlab_report_file_content(const pdmlab_report* rep, size_t index);

void pdmlab_report_free(pdmlab_report* rep);

/* --- misc ----------------------------------------------------------------- */

/* Plain-text catalog listing. */
pdmlab_status pdmlab_list_models(char** out);

/* Re-renders a previously emitted report JSON as a table. */
pdmlab_status pdmlab_render_report_json(const char* json_text, int use_color, char** out);

/* Thread-local message describing the most recent failure in this thread. */
const char* pdmlab_last_error(void);

const char* pdmlab_status_name(pdmlab_status s);

void pdmlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
