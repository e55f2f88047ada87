/*
 * tikm - work-efficient K-means with multi-level triangle-inequality
 * filtering, exact by construction.
 *
 * C API over the C++ core: opaque handles, status-code returns, thread-local
 * error messages. All functions return TIKM_OK on success; on failure the
 * out-parameters are untouched and tikm_last_error() describes the problem.
 */
#ifndef TIKM_H
#define TIKM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TIKM_API __declspec(dllexport)
#else
#define TIKM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tikm_status {
    TIKM_OK = 0,
    TIKM_ERR_CONFIG = 1,
    TIKM_ERR_DIMENSION = 2,
    TIKM_ERR_EMPTY_SET = 3,
    TIKM_ERR_PARSE = 4,
    TIKM_ERR_IO = 5,
    TIKM_ERR_STATE = 6,
    TIKM_ERR_DOMAIN = 7,
    TIKM_ERR_PLAN = 8,
    TIKM_ERR_INTERNAL = 9
} tikm_status;

typedef enum tikm_filter_mode {
    TIKM_FILTER_NONE = 0,
    TIKM_FILTER_POINT = 1,
    TIKM_FILTER_GROUP = 2
} tikm_filter_mode;

typedef enum tikm_init_mode {
    TIKM_INIT_RANDOM = 0,
    TIKM_INIT_KMEANSPP = 1
} tikm_init_mode;

typedef enum tikm_termination {
    TIKM_TERM_STABLE = 0,
    TIKM_TERM_TOL = 1,
    TIKM_TERM_MAX_ITERS = 2
} tikm_termination;

typedef enum tikm_na_policy {
    TIKM_NA_ERROR = 0,
    TIKM_NA_DROP_ROW = 1
} tikm_na_policy;

TIKM_API const char* tikm_version(void);
TIKM_API const char* tikm_rng_identity(void);
TIKM_API const char* tikm_status_name(tikm_status status);

/* Message describing the calling thread's most recent failure. */
TIKM_API const char* tikm_last_error(void);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */

typedef struct tikm_dataset tikm_dataset;

typedef struct tikm_csv_options {
    char delimiter;            /* default ',' */
    int skip_header;           /* 0/1 */
    const int64_t* drop_columns; /* 0-based raw column indices, may be NULL */
    size_t drop_column_count;
    tikm_na_policy na_policy;
} tikm_csv_options;

TIKM_API void tikm_csv_options_init(tikm_csv_options* options);

typedef struct tikm_blob_spec {
    int64_t n;
    int64_t d;
    int64_t k_true;
    double spread;     /* within-blob standard deviation */
    double separation; /* inter-center scale */
    uint64_t seed;
} tikm_blob_spec;

TIKM_API void tikm_blob_spec_init(tikm_blob_spec* spec);

/* Copies a dense row-major n x d buffer. */
TIKM_API tikm_status tikm_dataset_from_buffer(const double* data, int64_t n, int64_t d,
                                              tikm_dataset** out);

/* source is a CSV path or an inline "blobs:n=..,d=..,..." spec. options may
 * be NULL for defaults and only applies to CSV paths. */
TIKM_API tikm_status tikm_dataset_open(const char* source, const tikm_csv_options* options,
                                       tikm_dataset** out);

TIKM_API tikm_status tikm_dataset_gen_blobs(const tikm_blob_spec* spec, tikm_dataset** out);

TIKM_API void tikm_dataset_destroy(tikm_dataset* dataset);

TIKM_API int64_t tikm_dataset_rows(const tikm_dataset* dataset);
TIKM_API int64_t tikm_dataset_cols(const tikm_dataset* dataset);
TIKM_API const double* tikm_dataset_values(const tikm_dataset* dataset);

/* Generating labels of a blob dataset; NULL when the dataset was not
 * generated. Length equals tikm_dataset_rows(). */
TIKM_API const int32_t* tikm_dataset_blob_labels(const tikm_dataset* dataset);

/* min/max/mean must each hold tikm_dataset_cols() doubles; any may be NULL. */
TIKM_API tikm_status tikm_dataset_stats(const tikm_dataset* dataset, double* min_out,
                                        double* max_out, double* mean_out);

/* In-place per-dimension min-max scaling to [0, 1]. */
TIKM_API tikm_status tikm_dataset_normalize(tikm_dataset* dataset);

TIKM_API tikm_status tikm_dataset_write_csv(const tikm_dataset* dataset, const char* path);
TIKM_API tikm_status tikm_dataset_write_blob_labels(const tikm_dataset* dataset,
                                                    const char* path);

/* ------------------------------------------------------------------ */
/* Clustering                                                          */

typedef struct tikm_config {
    int64_t k;
    int64_t groups;    /* 0 = default: ceil(k / 10) */
    int64_t lanes;     /* degree of parallelism, >= 1 */
    int64_t max_iters;
    double tol;
    uint64_t seed;
    tikm_filter_mode filter_mode;
    tikm_init_mode init_mode;
} tikm_config;

/* Defaults: groups auto, lanes 1, max_iters 100, tol 1e-9, seed 0,
 * filter group, init kmeanspp. k is left 0 and must be set. */
TIKM_API void tikm_config_init(tikm_config* config);

typedef struct tikm_result tikm_result;

typedef struct tikm_counters {
    uint64_t distance_computations;
    uint64_t point_filter_hits;
    uint64_t group_filter_skips;
} tikm_counters;

TIKM_API tikm_status tikm_run(const tikm_dataset* dataset, const tikm_config* config,
                              tikm_result** out);

TIKM_API void tikm_result_destroy(tikm_result* result);

TIKM_API int64_t tikm_result_iterations(const tikm_result* result);
TIKM_API tikm_termination tikm_result_termination(const tikm_result* result);
TIKM_API double tikm_result_wall_seconds(const tikm_result* result);
TIKM_API double tikm_result_objective(const tikm_result* result);

/* Length tikm_dataset_rows() of the clustered dataset. */
TIKM_API const int32_t* tikm_result_labels(const tikm_result* result);
TIKM_API int64_t tikm_result_label_count(const tikm_result* result);

/* Row-major k x d. */
TIKM_API const double* tikm_result_centroids(const tikm_result* result);
TIKM_API int64_t tikm_result_k(const tikm_result* result);
TIKM_API int64_t tikm_result_dim(const tikm_result* result);

TIKM_API tikm_status tikm_result_counters_total(const tikm_result* result,
                                                tikm_counters* out);
/* iteration is 1-based, 1 <= iteration <= tikm_result_iterations(). */
TIKM_API tikm_status tikm_result_counters_at(const tikm_result* result, int64_t iteration,
                                             tikm_counters* out);
TIKM_API uint64_t tikm_result_grouping_distance_computations(const tikm_result* result);

TIKM_API tikm_status tikm_result_write_assignment(const tikm_result* result, const char* path);
TIKM_API tikm_status tikm_result_write_centroids(const tikm_result* result, const char* path);

/* ------------------------------------------------------------------ */
/* Benchmarks and reports                                              */

/* Runs the JSON plan at plan_path. output/format, when non-NULL, override the
 * plan's values. corrupt_exactness is a test hook that flips one label per
 * filtered cell before the exactness check. exactness_ok_out (may be NULL)
 * receives 1 when every filtered cell matched its baseline and counters were
 * deterministic across repeats, else 0. */
TIKM_API tikm_status tikm_bench_run_file(const char* plan_path, const char* output,
                                         const char* format, int corrupt_exactness,
                                         int* exactness_ok_out);

/* Re-renders a schema_version 1 JSON report as json, csv or markdown. When
 * out_path is NULL the rendering goes to stdout. */
TIKM_API tikm_status tikm_report_render(const char* report_path, const char* out_path,
                                        const char* format);

#ifdef __cplusplus
}
#endif

#endif /* TIKM_H */
