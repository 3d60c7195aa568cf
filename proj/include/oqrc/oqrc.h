/* oqrc — onion quantum reservoir computing for corrosion forecasting.
 *
 * C API over the simulation core. All functions return a status code;
 * OQRC_OK means success and any other value leaves a human-readable
 * message in oqrc_last_error() (thread-local). Objects are opaque handles
 * released with their matching _free function; strings returned through
 * char** out-parameters are heap-allocated and released with
 * oqrc_string_free.
 *
 * Structured inputs (experiment configs, sweep configs, zone parameters)
 * are passed as JSON documents; see README.md for the schemas.
 */
#ifndef OQRC_H
#define OQRC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum oqrc_status {
    OQRC_OK = 0,
    OQRC_ERR_INVALID_ARGUMENT = 1,
    OQRC_ERR_PARSE = 2,
    OQRC_ERR_NUMERIC = 3,
    OQRC_ERR_IO = 4,
    OQRC_ERR_INTERNAL = 5
} oqrc_status;

typedef struct oqrc_dataset oqrc_dataset;
typedef struct oqrc_model oqrc_model;

const char* oqrc_version(void);
const char* oqrc_status_name(oqrc_status status);

/* Message from the most recent failing call on this thread; empty string
 * when the last call succeeded. */
const char* oqrc_last_error(void);

void oqrc_string_free(char* str);

/* ---- datasets ---------------------------------------------------------- */

/* Synthetic 4-zone corrosion corpus. zone_params_json may be NULL for the
 * built-in defaults. */
oqrc_status oqrc_dataset_synth(uint64_t seed, const char* zone_params_json, oqrc_dataset** out);

oqrc_status oqrc_dataset_load_csv(const char* path, oqrc_dataset** out);
oqrc_status oqrc_dataset_save_csv(const oqrc_dataset* dataset, const char* path);
void oqrc_dataset_free(oqrc_dataset* dataset);

/* Simple introspection. Return -1 on NULL input. */
int oqrc_dataset_num_samples(const oqrc_dataset* dataset);
int oqrc_dataset_num_days(const oqrc_dataset* dataset);

/* ---- channel spectrum sweeps ------------------------------------------ */

/* config_json: {"n_qubits", "depth", "seed", "prefactor", "measured",
 *               "prefactors" | "measured_counts"}.
 * Exactly one of "prefactors" (rotation sweep) or "measured_counts"
 * (measurement sweep) selects the swept parameter. Outputs: an eigenvalue
 * CSV (parameter_value,re_lambda,im_lambda) and a JSON metadata sidecar. */
oqrc_status oqrc_spectrum_sweep(const char* config_json, char** csv_out, char** meta_json_out);

/* ---- training and evaluation ------------------------------------------ */

oqrc_status oqrc_train(const char* config_json, const oqrc_dataset* dataset, oqrc_model** out);

oqrc_status oqrc_model_to_json(const oqrc_model* model, char** json_out);
oqrc_status oqrc_model_from_json(const char* json, oqrc_model** out);
void oqrc_model_free(oqrc_model* model);

/* Closed-loop evaluation on the dataset's test split. Either out-parameter
 * may be NULL when not wanted. */
oqrc_status oqrc_evaluate(const oqrc_model* model, const oqrc_dataset* dataset,
                          char** result_json_out, char** predictions_csv_out);

/* Per-zone training-mean predictor, the reference every model must beat. */
oqrc_status oqrc_simple_baseline(const oqrc_dataset* dataset, int warmup_days,
                                 char** result_json_out, char** predictions_csv_out);

/* Model/size grid evaluation emitting one CSV row per (model, qubit count).
 * config_json: {"models": [...], "qubits": [...], "crc_size_mode":
 * "linear"|"exp2", optional base experiment config fields}. */
oqrc_status oqrc_benchmark(const char* config_json, const oqrc_dataset* dataset, char** csv_out);

/* Teacher-forced feature matrix of one (zone, sample) under a model's
 * reservoir, row per day transition, column per feature. */
oqrc_status oqrc_feature_matrix(const oqrc_model* model, const oqrc_dataset* dataset, int zone,
                                int sample, char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OQRC_H */
