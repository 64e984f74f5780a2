// topicforge command-line front end. Talks to the library only through the
// C API in topicforge.h.

#include "topicforge/topicforge.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>

namespace {

struct ConfigDeleter {
    void operator()(tf_config* c) const { tf_config_free(c); }
};
struct ManifestDeleter {
    void operator()(tf_manifest* m) const { tf_manifest_free(m); }
};
using ConfigPtr = std::unique_ptr<tf_config, ConfigDeleter>;
using ManifestPtr = std::unique_ptr<tf_manifest, ManifestDeleter>;

int report_failure(tf_status status) {
    // Stage failures already carry a "[stage]" prefix in the message.
    std::fprintf(stderr, "topicforge: %s: %s\n", tf_status_string(status), tf_last_error());
    return tf_exit_code(status);
}

struct CommonOptions {
    std::string config;
    std::optional<std::string> out;
    std::optional<int> threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config,-c", opts.config, "Pipeline config file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out,-o", opts.out, "Output directory (overrides output_dir)");
    cmd->add_option("--threads,-t", opts.threads, "Worker threads; 1 gives a deterministic run")
        ->check(CLI::PositiveNumber);
}

/// Loads the config and applies flag overrides, then validates.
int load_config(const CommonOptions& opts, ConfigPtr& config, std::optional<std::size_t> k, bool validate) {
    tf_config* raw = nullptr;
    // Parse first so overrides can fix fields before validation.
    std::FILE* f = std::fopen(opts.config.c_str(), "rb");
    if (!f) {
        std::fprintf(stderr, "topicforge: cannot open config file %s\n", opts.config.c_str());
        return 1;
    }
    std::string text;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);

    const auto slash = opts.config.find_last_of('/');
    const std::string base = slash == std::string::npos ? std::string(".") : opts.config.substr(0, slash);
    if (auto st = tf_config_parse(text.c_str(), base.c_str(), &raw); st != TF_OK) return report_failure(st);
    config.reset(raw);

    auto set = [&](const char* key, const std::string& value) {
        return tf_config_set(config.get(), key, value.c_str());
    };
    if (opts.out) {
        if (auto st = set("output_dir", *opts.out); st != TF_OK) return report_failure(st);
    }
    if (opts.threads) {
        if (auto st = set("threads", std::to_string(*opts.threads)); st != TF_OK) return report_failure(st);
    }
    if (k) {
        if (auto st = set("kmeans_k", std::to_string(*k)); st != TF_OK) return report_failure(st);
    }
    if (validate) {
        if (auto st = tf_config_validate(config.get()); st != TF_OK) return report_failure(st);
    }
    return 0;
}

/// Runs one command and prints the manifest summary.
template <typename Fn>
int run_and_report(Fn&& fn) {
    tf_manifest* raw = nullptr;
    const tf_status status = fn(&raw);
    if (status != TF_OK) return report_failure(status);
    ManifestPtr manifest(raw);
    std::printf("documents: %zu\nclusters: %zu\noutputs:\n", tf_manifest_documents(raw), tf_manifest_clusters(raw));
    for (std::size_t i = 0; i < tf_manifest_output_count(raw); ++i) {
        std::printf("  %s\n", tf_manifest_output(raw, i));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topicforge: topic modeling with embeddings, UMAP and k-means"};
    app.set_version_flag("--version", std::string(tf_version()));
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::optional<std::size_t> run_k;
    auto* run = app.add_subcommand("run", "Run the full pipeline");
    add_common(run, run_opts);
    run->add_option("--k", run_k, "Force the number of clusters instead of the elbow scan")->check(CLI::PositiveNumber);

    CommonOptions reduce_opts;
    auto* reduce = app.add_subcommand("reduce", "Preprocess, embed and reduce; write the layout");
    add_common(reduce, reduce_opts);

    CommonOptions elbow_opts;
    std::optional<std::string> elbow_layout;
    auto* elbow = app.add_subcommand("elbow", "Scan k and select the elbow");
    add_common(elbow, elbow_opts);
    elbow->add_option("--layout", elbow_layout, "Existing layout in TFEMB1 format")->check(CLI::ExistingFile);

    CommonOptions score_opts;
    std::string score_assignments;
    auto* score = app.add_subcommand("score", "Extract topics and metrics from cluster assignments");
    add_common(score, score_opts);
    score->add_option("--assignments", score_assignments, "CSV with doc_id,cluster")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    ConfigPtr config;
    if (*run) {
        if (int rc = load_config(run_opts, config, run_k, true)) return rc;
        return run_and_report([&](tf_manifest** out) { return tf_run_pipeline(config.get(), out); });
    }
    if (*reduce) {
        if (int rc = load_config(reduce_opts, config, std::nullopt, true)) return rc;
        return run_and_report([&](tf_manifest** out) { return tf_run_reduce(config.get(), out); });
    }
    if (*elbow) {
        if (int rc = load_config(elbow_opts, config, std::nullopt, false)) return rc;
        return run_and_report([&](tf_manifest** out) {
            return tf_run_elbow(config.get(), elbow_layout ? elbow_layout->c_str() : nullptr, out);
        });
    }
    if (int rc = load_config(score_opts, config, std::nullopt, false)) return rc;
    return run_and_report([&](tf_manifest** out) { return tf_run_score(config.get(), score_assignments.c_str(), out); });
}
