/* C interface to the flux-qubit readout simulator.
 *
 * Everything runs through two opaque handles: a sweep configuration built
 * from a recipe name, optional config text and overrides, and a result
 * produced by running it. All functions are thread-safe as long as each
 * handle is used from one thread at a time. Strings returned through a
 * result stay valid until that result is freed.
 */
#pragma once

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QFPS_API __declspec(dllexport)
#else
#define QFPS_API __attribute__((visibility("default")))
#endif

#define QFPS_VERSION_STRING "0.1.0"

typedef enum qfps_status {
  QFPS_OK = 0,
  QFPS_ERROR_USAGE = 1,   /* null handle, bad index: misuse of this API */
  QFPS_ERROR_CONFIG = 2,  /* the sweep configuration is invalid */
  QFPS_ERROR_IO = 3,      /* the output file could not be written */
  QFPS_ERROR_NUMERIC = 4, /* a model could not be built or evolved */
  QFPS_ERROR_INTERNAL = 5
} qfps_status;

typedef struct qfps_config qfps_config;
typedef struct qfps_result qfps_result;

/* One sweep point. basis is empty for recipes that do not compare bases;
 * fidelity and the outcome probabilities are quiet NaN when the point
 * failed or the recipe does not produce them. status is "ok" or a stable
 * lowercase error name. */
typedef struct qfps_row_view {
  double value;
  double fidelity;
  double p_plus;
  double p_minus;
  const char* basis;
  const char* status;
} qfps_row_view;

QFPS_API const char* qfps_version(void);
QFPS_API const char* qfps_status_name(qfps_status status);

/* Detail text for the most recent failure on this thread; empty after a
 * call that succeeded. */
QFPS_API const char* qfps_last_error(void);

/* Human-readable table of recipe kinds and figure presets. Owned by the
 * library; do not free. */
QFPS_API const char* qfps_recipes(void);

/* Build a configuration. recipe is a preset or recipe-kind name and may be
 * NULL when config_text names one under [sweep]. config_text holds
 * key = value lines in [sweep]/[model]/[fixed] sections and may be NULL.
 * overrides are "key=value" or "section.key=value" tokens applied after the
 * config text. out_path (may be NULL) wins over any out key; when the
 * resolved path is empty, running produces rows and CSV text but no file. */
QFPS_API qfps_status qfps_config_create(const char* recipe,
                                        const char* config_text,
                                        const char* const* overrides,
                                        size_t n_overrides,
                                        const char* out_path,
                                        qfps_config** out_config);
QFPS_API const char* qfps_config_out_path(const qfps_config* config);
QFPS_API void qfps_config_free(qfps_config* config);

/* Evaluate the sweep. Per-point failures do not fail the call; they show up
 * as rows with a non-"ok" status and in qfps_result_failed_count. */
QFPS_API qfps_status qfps_sweep_run(const qfps_config* config,
                                    qfps_result** out_result);

QFPS_API size_t qfps_result_row_count(const qfps_result* result);
QFPS_API int qfps_result_failed_count(const qfps_result* result);
QFPS_API const char* qfps_result_sweep_var(const qfps_result* result);
/* The complete CSV artifact (header lines prefixed with '#'), byte-identical
 * to the written file. */
QFPS_API const char* qfps_result_csv(const qfps_result* result);
QFPS_API qfps_status qfps_result_row(const qfps_result* result, size_t index,
                                     qfps_row_view* out_row);
QFPS_API void qfps_result_free(qfps_result* result);

#ifdef __cplusplus
}
#endif
