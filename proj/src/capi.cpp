#include "topicforge/topicforge.h"

#include "topicforge/config.hpp"
#include "topicforge/embedding.hpp"
#include "topicforge/error.hpp"
#include "topicforge/kmeans.hpp"
#include "topicforge/log.hpp"
#include "topicforge/pipeline.hpp"
#include "topicforge/umap.hpp"

#include <algorithm>
#include <cstring>
#include <new>
#include <optional>
#include <string>

using namespace topicforge;

struct tf_config {
    PipelineConfig value;
};

struct tf_manifest {
    RunManifest value;
    std::string json;
    std::vector<std::string> outputs;
};

struct tf_matrix {
    EmbeddingMatrix value;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_stage;

tf_status to_status(ErrorKind kind) { return static_cast<tf_status>(static_cast<int>(kind)); }

tf_status fail(tf_status status, std::string message, std::string stage = {}) {
    last_error = std::move(message);
    last_stage = std::move(stage);
    return status;
}

template <typename Fn>
tf_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        last_stage.clear();
        fn();
        return TF_OK;
    } catch (const StageError& e) {
        return fail(to_status(e.kind()), e.what(), e.stage());
    } catch (const Error& e) {
        return fail(to_status(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(TF_ERR_NUMERIC, "out of memory");
    } catch (const std::exception& e) {
        return fail(TF_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(TF_ERR_INTERNAL, "unknown exception");
    }
}

tf_status null_arg(const char* name) { return fail(TF_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL"); }

tf_manifest* wrap(RunManifest m) {
    auto* out = new tf_manifest{std::move(m), {}, {}};
    out->json = out->value.to_json();
    for (const auto& p : out->value.outputs) out->outputs.push_back(p.string());
    return out;
}

}  // namespace

extern "C" {

const char* tf_version(void) { return kVersion; }
const char* tf_last_error(void) { return last_error.c_str(); }
const char* tf_last_error_stage(void) { return last_stage.c_str(); }

int tf_exit_code(tf_status status) {
    if (status == TF_OK) return 0;
    if (status == TF_ERR_INTERNAL) return 2;
    return exit_code_for(static_cast<ErrorKind>(status));
}

const char* tf_status_string(tf_status status) {
    if (status == TF_OK) return "ok";
    if (status == TF_ERR_INTERNAL) return "internal error";
    return to_string(static_cast<ErrorKind>(status));
}

void tf_set_log_callback(tf_log_callback callback, void* user_data) {
    if (!callback) {
        set_log_sink({});
        return;
    }
    set_log_sink([callback, user_data](LogLevel level, std::string_view msg) {
        const std::string text(msg);
        callback(level == LogLevel::Warning ? 1 : 0, text.c_str(), user_data);
    });
}

tf_status tf_config_load(const char* path, tf_config** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new tf_config{validate_config(path)}; });
}

tf_status tf_config_parse(const char* text, const char* base_dir, tf_config** out) {
    if (!text) return null_arg("text");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        *out = new tf_config{parse_config(text, base_dir ? std::filesystem::path(base_dir) : std::filesystem::path{})};
    });
}

tf_status tf_config_set(tf_config* config, const char* key, const char* value) {
    if (!config) return null_arg("config");
    if (!key || !value) return null_arg("key/value");
    return guarded([&] { config->value.set(key, value); });
}

tf_status tf_config_validate(const tf_config* config) {
    if (!config) return null_arg("config");
    return guarded([&] { config->value.validate(); });
}

tf_status tf_config_get(const tf_config* config, const char* key, char* buf, size_t buf_len, size_t* needed) {
    if (!config) return null_arg("config");
    if (!key) return null_arg("key");
    for (const auto& [k, v] : config->value.snapshot()) {
        if (k != key) continue;
        if (needed) *needed = v.size();
        if (buf && buf_len > 0) {
            const auto n = std::min(buf_len - 1, v.size());
            std::memcpy(buf, v.data(), n);
            buf[n] = '\0';
        }
        return TF_OK;
    }
    return fail(TF_ERR_CONFIG, std::string("unknown config key '") + key + "'");
}

void tf_config_free(tf_config* config) { delete config; }

tf_status tf_run_pipeline(const tf_config* config, tf_manifest** out) {
    if (!config) return null_arg("config");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = wrap(run_pipeline(config->value)); });
}

tf_status tf_run_reduce(const tf_config* config, tf_manifest** out) {
    if (!config) return null_arg("config");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = wrap(run_reduce_stage(config->value)); });
}

tf_status tf_run_elbow(const tf_config* config, const char* layout_path, tf_manifest** out) {
    if (!config) return null_arg("config");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        std::optional<std::filesystem::path> layout;
        if (layout_path) layout = layout_path;
        *out = wrap(run_elbow_stage(config->value, layout));
    });
}

tf_status tf_run_score(const tf_config* config, const char* assignments_path, tf_manifest** out) {
    if (!config) return null_arg("config");
    if (!assignments_path) return null_arg("assignments_path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = wrap(run_score_stage(config->value, assignments_path)); });
}

const char* tf_manifest_json(const tf_manifest* manifest) { return manifest ? manifest->json.c_str() : ""; }
size_t tf_manifest_output_count(const tf_manifest* manifest) { return manifest ? manifest->outputs.size() : 0; }
const char* tf_manifest_output(const tf_manifest* manifest, size_t index) {
    if (!manifest || index >= manifest->outputs.size()) return nullptr;
    return manifest->outputs[index].c_str();
}
size_t tf_manifest_documents(const tf_manifest* manifest) { return manifest ? manifest->value.documents : 0; }
size_t tf_manifest_clusters(const tf_manifest* manifest) { return manifest ? manifest->value.clusters : 0; }
void tf_manifest_free(tf_manifest* manifest) { delete manifest; }

tf_status tf_matrix_create(size_t rows, size_t cols, const float* data, tf_matrix** out) {
    if (!out) return null_arg("out");
    *out = nullptr;
    if (!data && rows * cols > 0) return null_arg("data");
    return guarded([&] {
        std::vector<float> values(data, data + rows * cols);
        *out = new tf_matrix{EmbeddingMatrix(rows, cols, std::move(values))};
    });
}

tf_status tf_matrix_load(const char* path, tf_matrix** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] { *out = new tf_matrix{load_embeddings(path)}; });
}

tf_status tf_matrix_save(const tf_matrix* matrix, const char* path) {
    if (!matrix) return null_arg("matrix");
    if (!path) return null_arg("path");
    return guarded([&] { save_embeddings(matrix->value, path); });
}

size_t tf_matrix_rows(const tf_matrix* matrix) { return matrix ? matrix->value.rows() : 0; }
size_t tf_matrix_cols(const tf_matrix* matrix) { return matrix ? matrix->value.cols() : 0; }
const float* tf_matrix_data(const tf_matrix* matrix) { return matrix ? matrix->value.data().data() : nullptr; }
void tf_matrix_free(tf_matrix* matrix) { delete matrix; }

tf_status tf_umap_reduce(const tf_matrix* input, const tf_config* config, tf_matrix** out) {
    if (!input) return null_arg("input");
    if (!out) return null_arg("out");
    *out = nullptr;
    return guarded([&] {
        UmapConfig umap = config ? config->value.umap : UmapConfig{};
        if (config) umap.threads = config->value.threads;
        *out = new tf_matrix{reduce(input->value, umap).to_matrix()};
    });
}

tf_status tf_kmeans_fit(const tf_matrix* points, size_t k, int restarts, uint64_t seed, uint32_t* assignments,
                        double* wcss) {
    if (!points) return null_arg("points");
    if (!assignments) return null_arg("assignments");
    return guarded([&] {
        const auto& m = points->value;
        Points p{m.rows(), m.cols(), std::vector<double>(m.data().begin(), m.data().end())};
        const auto model = best_of_restarts(p, k, restarts, seed);
        std::copy(model.assignments.begin(), model.assignments.end(), assignments);
        if (wcss) *wcss = model.wcss;
    });
}

}  // extern "C"
