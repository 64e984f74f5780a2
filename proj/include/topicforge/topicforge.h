/*
 * topicforge C API.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a tf_status; on
 * failure tf_last_error() describes the problem for the calling thread.
 */
#ifndef TOPICFORGE_H
#define TOPICFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TOPICFORGE_BUILDING)
#    define TF_API __declspec(dllexport)
#  else
#    define TF_API __declspec(dllimport)
#  endif
#else
#  define TF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tf_status {
    TF_OK = 0,
    TF_ERR_CONFIG = 1,
    TF_ERR_DATA = 2,
    TF_ERR_NUMERIC = 3,
    TF_ERR_IO = 4,
    TF_ERR_FORMAT = 5,
    TF_ERR_CORRUPTION = 6,
    TF_ERR_EMPTY_INPUT = 7,
    TF_ERR_VALIDATION = 8,
    TF_ERR_INVALID_ARGUMENT = 9,
    TF_ERR_HTTP = 10,
    TF_ERR_DIMENSION_MISMATCH = 11,
    TF_ERR_INTERNAL = 99
} tf_status;

typedef struct tf_config tf_config;
typedef struct tf_manifest tf_manifest;
typedef struct tf_matrix tf_matrix;

TF_API const char* tf_version(void);

/* Message of the last failure on this thread; "" if none. */
TF_API const char* tf_last_error(void);
/* Pipeline stage of the last failure on this thread; "" if not stage-tagged. */
TF_API const char* tf_last_error_stage(void);
/* Process exit code for a status: 0 ok, 1 config, 2 data, 3 numeric. */
TF_API int tf_exit_code(tf_status status);
TF_API const char* tf_status_string(tf_status status);

/* level: 0 info, 1 warning. Pass NULL to restore the stderr default. */
typedef void (*tf_log_callback)(int level, const char* message, void* user_data);
TF_API void tf_set_log_callback(tf_log_callback callback, void* user_data);

/* ---- configuration ---------------------------------------------------- */

/* Loads a config file and validates it. */
TF_API tf_status tf_config_load(const char* path, tf_config** out);
/* Parses config text without validating. base_dir may be NULL. */
TF_API tf_status tf_config_parse(const char* text, const char* base_dir, tf_config** out);
TF_API tf_status tf_config_set(tf_config* config, const char* key, const char* value);
TF_API tf_status tf_config_validate(const tf_config* config);
/* Copies the effective value of `key` into buf (NUL-terminated, truncated
 * to buf_len). *needed receives the full length without the terminator. */
TF_API tf_status tf_config_get(const tf_config* config, const char* key, char* buf, size_t buf_len, size_t* needed);
TF_API void tf_config_free(tf_config* config);

/* ---- pipeline --------------------------------------------------------- */

TF_API tf_status tf_run_pipeline(const tf_config* config, tf_manifest** out);
TF_API tf_status tf_run_reduce(const tf_config* config, tf_manifest** out);
/* layout_path may be NULL to reduce from the configured inputs. */
TF_API tf_status tf_run_elbow(const tf_config* config, const char* layout_path, tf_manifest** out);
TF_API tf_status tf_run_score(const tf_config* config, const char* assignments_path, tf_manifest** out);

TF_API const char* tf_manifest_json(const tf_manifest* manifest);
TF_API size_t tf_manifest_output_count(const tf_manifest* manifest);
TF_API const char* tf_manifest_output(const tf_manifest* manifest, size_t index);
TF_API size_t tf_manifest_documents(const tf_manifest* manifest);
TF_API size_t tf_manifest_clusters(const tf_manifest* manifest);
TF_API void tf_manifest_free(tf_manifest* manifest);

/* ---- matrices and direct algorithm access ----------------------------- */

/* Copies rows*cols floats. Rejects empty shapes and non-finite values. */
TF_API tf_status tf_matrix_create(size_t rows, size_t cols, const float* data, tf_matrix** out);
TF_API tf_status tf_matrix_load(const char* path, tf_matrix** out);
TF_API tf_status tf_matrix_save(const tf_matrix* matrix, const char* path);
TF_API size_t tf_matrix_rows(const tf_matrix* matrix);
TF_API size_t tf_matrix_cols(const tf_matrix* matrix);
TF_API const float* tf_matrix_data(const tf_matrix* matrix);
TF_API void tf_matrix_free(tf_matrix* matrix);

/* UMAP with the config's umap_* settings, or defaults when config is NULL. */
TF_API tf_status tf_umap_reduce(const tf_matrix* input, const tf_config* config, tf_matrix** out);

/* Best-of-restarts k-means. assignments must hold tf_matrix_rows(points)
 * entries; wcss may be NULL. */
TF_API tf_status tf_kmeans_fit(const tf_matrix* points, size_t k, int restarts, uint64_t seed, uint32_t* assignments,
                               double* wcss);

#ifdef __cplusplus
}
#endif

#endif /* TOPICFORGE_H */
