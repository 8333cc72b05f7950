/* C interface to the vector-data trading simulator. All functions return a
 * vdt_status code; on failure vdt_last_error() describes the problem. Strings
 * returned through char** are heap-allocated and released with
 * vdt_string_free(). Handles are opaque and freed with their _free function.
 */
#ifndef VDT_CAPI_H
#define VDT_CAPI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vdt_status {
    VDT_OK = 0,
    VDT_ERR_CONFIG = 1,  /* invalid configuration or input file */
    VDT_ERR_RUNTIME = 2  /* failure while executing a run */
} vdt_status;

typedef struct vdt_config vdt_config;
typedef struct vdt_result vdt_result;

const char* vdt_version(void);

/* Message for the most recent failure on this thread. */
const char* vdt_last_error(void);

void vdt_string_free(char* str);

/* --- configuration ------------------------------------------------------ */

/* Default configuration. */
vdt_status vdt_config_create(vdt_config** out);

/* Parse a JSON config document (schema vdt.config.v1). */
vdt_status vdt_config_parse(const char* json_text, vdt_config** out);

/* Load a JSON config file. */
vdt_status vdt_config_load(const char* path, vdt_config** out);

/* Override one field by dotted path, e.g. "price.hi", "policy", "seed".
 * The value is a JSON literal; bare words are treated as strings. */
vdt_status vdt_config_override(vdt_config* cfg, const char* dotted_key, const char* value);

/* Serialized config, including defaults. */
vdt_status vdt_config_dump(const vdt_config* cfg, char** out_json);

void vdt_config_free(vdt_config* cfg);

/* --- runs ----------------------------------------------------------------*/

/* Execute the configured run; also writes any output files named in the
 * config (round-log CSV, timing CSV, report files). */
vdt_status vdt_run(const vdt_config* cfg, vdt_result** out);

vdt_status vdt_result_log_csv(const vdt_result* result, char** out_csv);
vdt_status vdt_result_timing_csv(const vdt_result* result, char** out_csv);
vdt_status vdt_result_summary(const vdt_result* result, char** out_text);

/* Write <prefix>_summary.txt, <prefix>_clusters.csv, <prefix>_windows.csv. */
vdt_status vdt_result_write_report(const vdt_result* result, const char* prefix);

/* Named scalar metric: rounds, clusters, avg_reward, cum_regret,
 * cum_regret_raw, config_regret, price_regret, weighted_regret,
 * oracle_slack. */
vdt_status vdt_result_metric(const vdt_result* result, const char* name, double* out_value);

void vdt_result_free(vdt_result* result);

/* --- tools ---------------------------------------------------------------*/

/* Build the index for the configured dataset and describe it. */
vdt_status vdt_index_report(const vdt_config* cfg, char** out_text);

/* Recompute the report files from an existing round-log CSV. */
vdt_status vdt_report_from_csv(const char* log_csv_path, const char* out_prefix,
                               char** out_text);

/* Sweep one axis (p_hi | k-range | nlist | policy | seed) over comma-separated
 * values, crossed with comma-separated seeds (empty -> config seed); writes
 * the sweep CSV to out_csv_path when non-NULL and returns it as text. */
vdt_status vdt_sweep(const vdt_config* cfg, const char* axis, const char* values_csv,
                     const char* seeds_csv, const char* out_csv_path, char** out_csv);

/* Oracle-backed example suite; returns VDT_OK only if every check passes.
 * The per-check report is returned through out_text. */
vdt_status vdt_selftest(char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* VDT_CAPI_H */
