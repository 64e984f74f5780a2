#include "topicforge/pipeline.hpp"

#include "topicforge/corpus.hpp"
#include "topicforge/embedding.hpp"
#include "topicforge/error.hpp"
#include "topicforge/kmeans.hpp"
#include "topicforge/log.hpp"
#include "topicforge/metrics.hpp"
#include "topicforge/report.hpp"
#include "topicforge/topics.hpp"
#include "topicforge/umap.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <new>

namespace topicforge {

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["version"] = version;
    j["command"] = command;
    j["documents"] = documents;
    j["clusters"] = clusters;
    j["k_from_elbow"] = k_from_elbow;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = std::move(cfg);
    j["stages"] = nlohmann::ordered_json::array();
    for (const auto& s : stages) j["stages"].push_back({{"stage", s.stage}, {"seconds", s.seconds}});
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& o : outputs) j["outputs"].push_back(o.filename().string());
    return j.dump(2) + "\n";
}

namespace {

/// Files written by one run; removed again unless committed.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) {
            throw Error(ErrorKind::Io, "cannot create output directory " + dir_.string() + ": " + ec.message());
        }
    }
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;
    ~OutputSet() {
        if (committed_) return;
        for (const auto& p : written_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
    }

    std::filesystem::path write(const std::string& name, std::string_view content) {
        auto path = track(name);
        write_text_file(path, content);
        return path;
    }
    std::filesystem::path save_matrix(const std::string& name, const EmbeddingMatrix& m) {
        auto path = track(name);
        save_embeddings(m, path);
        return path;
    }

    const std::vector<std::filesystem::path>& written() const { return written_; }

    void commit(RunManifest& manifest) {
        manifest.outputs = written_;
        manifest.outputs.push_back(dir_ / "manifest.json");
        write("manifest.json", manifest.to_json());
        committed_ = true;
    }

private:
    /// Records the path before writing so a half-written file is cleaned up
    /// too. A directory in the way makes the write fail and is left alone.
    std::filesystem::path track(const std::string& name) {
        auto path = dir_ / name;
        if (!std::filesystem::is_directory(path)) written_.push_back(path);
        return path;
    }

    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
    bool committed_ = false;
};

template <typename Fn>
auto run_stage(RunManifest& manifest, const char* name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        manifest.stages.push_back({name, elapsed.count()});
    };
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            finish();
        } else {
            auto result = fn();
            finish();
            return result;
        }
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name, e.kind(), e.what());
    } catch (const std::bad_alloc&) {
        throw StageError(name, ErrorKind::Numeric, "out of memory");
    } catch (const std::exception& e) {
        throw StageError(name, ErrorKind::Data, e.what());
    }
}

StopwordSet resolve_stopwords(const std::string& source) {
    if (source.empty() || source == "none") return {};
    if (source.starts_with("builtin:")) return builtin_stopwords(std::string_view(source).substr(8));
    return load_stopwords(source);
}

Corpus load_corpus(const PipelineConfig& config) {
    auto texts = config.texts_format == TextFormat::Csv ? load_texts_csv(config.texts, config.csv_column)
                                                        : load_texts_lines(config.texts);
    PreprocessOptions opts;
    opts.min_token_length = config.min_token_length;
    return build_corpus(texts, resolve_stopwords(config.stopwords), opts, config.threads);
}

EmbeddingMatrix obtain_embeddings(const PipelineConfig& config, const Corpus& corpus) {
    auto matrix = [&] {
        if (!config.embedding_service.empty()) {
            std::vector<std::string> texts;
            texts.reserve(corpus.size());
            for (const auto& d : corpus.documents) texts.push_back(d.raw_text);
            FetchOptions opts;
            opts.batch_size = config.service_batch_size;
            opts.timeout_seconds = config.service_timeout;
            opts.retries = config.service_retries;
            opts.concurrency = config.service_concurrency;
            return fetch_embeddings(config.embedding_service, texts, opts);
        }
        return config.embeddings_format == EmbeddingFormat::Csv ? load_embeddings_csv(config.embeddings)
                                                                : load_embeddings(config.embeddings);
    }();
    if (matrix.rows() != corpus.size()) {
        throw Error(ErrorKind::Validation, fmt::format("embedding rows ({}) do not match document count ({})",
                                                       matrix.rows(), corpus.size()));
    }
    return matrix;
}

UmapConfig umap_settings(const PipelineConfig& config) {
    auto umap = config.umap;
    umap.threads = config.threads;
    return umap;
}

LloydOptions lloyd_settings(const PipelineConfig& config) {
    return LloydOptions{config.kmeans_max_iter, config.kmeans_tol, config.threads};
}

ElbowCurve scan_elbow(const PipelineConfig& config, const Points& points) {
    auto k_max = config.kmeans_k_max;
    if (k_max > points.rows) {
        log_warning(fmt::format("kmeans_k_max={} exceeds the {} documents; scanning up to {}", k_max, points.rows,
                                points.rows));
        k_max = points.rows;
    }
    return elbow_select(points, config.kmeans_k_min, k_max, config.kmeans_restarts, config.kmeans_seed,
                        lloyd_settings(config));
}

void write_topic_reports(OutputSet& out, const PipelineConfig& config, const TopicModel& topics,
                         const MetricsReport& metrics) {
    out.write("topics.json", topics_json(topics, config.top_n));
    out.write("metrics.json", metrics_json(metrics));
    out.write("metrics.txt", format_metrics_table(metrics, topics));
    for (const auto& topic : topics.topics) {
        out.write(fmt::format("topic_{}.svg", topic.cluster_id), topic_bars_svg(topic, config.top_n));
    }
}

RunManifest new_manifest(const PipelineConfig& config, const char* command) {
    RunManifest m;
    m.command = command;
    m.config = config.snapshot();
    return m;
}

std::pair<TopicModel, MetricsReport> extract_and_score(RunManifest& manifest, const PipelineConfig& config,
                                                       const Corpus& corpus, std::span<const std::uint32_t> assignments) {
    auto topics = run_stage(manifest, "extract", [&] {
        const auto vocab = build_vocabulary(corpus);
        TfidfOptions opts;
        opts.tf = config.tfidf_tf;
        opts.idf = config.tfidf_idf;
        opts.top_n = config.top_n;
        opts.threads = config.threads;
        return cluster_tfidf(corpus, assignments, vocab, opts);
    });
    auto metrics = run_stage(manifest, "score", [&] {
        return evaluate_topics(topics, corpus, config.top_n, config.coherence_epsilon, config.threads);
    });
    return {std::move(topics), std::move(metrics)};
}

}  // namespace

RunManifest run_pipeline(const PipelineConfig& config) {
    try {
        config.validate();
    } catch (const Error& e) {
        throw StageError("config", e.kind(), e.what());
    }
    RunManifest manifest = new_manifest(config, "run");
    OutputSet out(config.output_dir);

    const auto corpus = run_stage(manifest, "preprocess", [&] { return load_corpus(config); });
    manifest.documents = corpus.size();
    const auto layout = [&] {
        // Embeddings go out of scope before clustering starts.
        const auto embeddings = run_stage(manifest, "embed", [&] { return obtain_embeddings(config, corpus); });
        return run_stage(manifest, "reduce", [&] { return reduce(embeddings, umap_settings(config)); });
    }();

    std::optional<ElbowCurve> elbow;
    const auto model = run_stage(manifest, "cluster", [&] {
        const auto points = Points::from_layout(layout);
        std::size_t k = config.kmeans_k;
        if (k == 0) {
            elbow = scan_elbow(config, points);
            k = elbow->selected_k;
        } else if (k > points.rows) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("kmeans_k={} exceeds the {} documents", k, points.rows));
        }
        return best_of_restarts(points, k, config.kmeans_restarts, config.kmeans_seed, lloyd_settings(config));
    });
    manifest.clusters = model.k;
    manifest.k_from_elbow = elbow.has_value();

    const auto [topics, metrics] = extract_and_score(manifest, config, corpus, model.assignments);

    run_stage(manifest, "report", [&] {
        out.write("assignments.csv", assignments_csv(model.assignments));
        out.write("layout.csv", layout_csv(layout));
        out.write("layout.svg", layout_svg(layout, model.assignments));
        if (elbow) {
            out.write("elbow.csv", elbow_csv(*elbow));
            out.write("elbow.svg", elbow_svg(*elbow));
        }
        write_topic_reports(out, config, topics, metrics);
    });
    out.commit(manifest);
    return manifest;
}

RunManifest run_reduce_stage(const PipelineConfig& config) {
    try {
        config.validate();
    } catch (const Error& e) {
        throw StageError("config", e.kind(), e.what());
    }
    RunManifest manifest = new_manifest(config, "reduce");
    OutputSet out(config.output_dir);
    const auto corpus = run_stage(manifest, "preprocess", [&] { return load_corpus(config); });
    manifest.documents = corpus.size();
    const auto embeddings = run_stage(manifest, "embed", [&] { return obtain_embeddings(config, corpus); });
    const auto layout = run_stage(manifest, "reduce", [&] { return reduce(embeddings, umap_settings(config)); });
    run_stage(manifest, "report", [&] {
        out.write("layout.csv", layout_csv(layout));
        out.save_matrix("layout.tfemb", layout.to_matrix());
        out.write("layout.svg", layout_svg(layout, {}));
    });
    out.commit(manifest);
    return manifest;
}

RunManifest run_elbow_stage(const PipelineConfig& config, const std::optional<std::filesystem::path>& layout_file) {
    try {
        if (layout_file) {
            auto relaxed = config;
            if (relaxed.embeddings.empty() && relaxed.embedding_service.empty()) {
                relaxed.embeddings = *layout_file;
            }
            if (relaxed.texts.empty()) relaxed.texts = *layout_file;
            relaxed.validate();
        } else {
            config.validate();
        }
        if (config.kmeans_k_max - config.kmeans_k_min < 2 || config.kmeans_k_min >= config.kmeans_k_max) {
            throw Error(ErrorKind::Config, "the elbow scan needs kmeans_k_min < kmeans_k_max with at least 3 values");
        }
    } catch (const Error& e) {
        throw StageError("config", e.kind(), e.what());
    }
    RunManifest manifest = new_manifest(config, "elbow");
    OutputSet out(config.output_dir);
    const auto layout = [&] {
        if (layout_file) {
            return run_stage(manifest, "load-layout", [&] {
                const auto m = load_embeddings(*layout_file);
                return LowDimLayout{m.rows(), m.cols(), std::vector<float>(m.data().begin(), m.data().end())};
            });
        }
        const auto corpus = run_stage(manifest, "preprocess", [&] { return load_corpus(config); });
        const auto embeddings = run_stage(manifest, "embed", [&] { return obtain_embeddings(config, corpus); });
        return run_stage(manifest, "reduce", [&] { return reduce(embeddings, umap_settings(config)); });
    }();
    manifest.documents = layout.rows;
    const auto curve = run_stage(manifest, "cluster", [&] { return scan_elbow(config, Points::from_layout(layout)); });
    manifest.clusters = curve.selected_k;
    manifest.k_from_elbow = true;
    run_stage(manifest, "report", [&] {
        out.write("elbow.csv", elbow_csv(curve));
        out.write("elbow.svg", elbow_svg(curve));
    });
    out.commit(manifest);
    return manifest;
}

RunManifest run_score_stage(const PipelineConfig& config, const std::filesystem::path& assignments_file) {
    try {
        auto relaxed = config;
        if (relaxed.embeddings.empty() && relaxed.embedding_service.empty()) {
            relaxed.embeddings = assignments_file;
        }
        relaxed.validate();
    } catch (const Error& e) {
        throw StageError("config", e.kind(), e.what());
    }
    RunManifest manifest = new_manifest(config, "score");
    OutputSet out(config.output_dir);
    const auto corpus = run_stage(manifest, "preprocess", [&] { return load_corpus(config); });
    manifest.documents = corpus.size();
    const auto assignments = run_stage(manifest, "load-assignments", [&] {
        auto a = parse_assignments_csv(read_text_file(assignments_file));
        if (a.size() != corpus.size()) {
            throw Error(ErrorKind::Validation, fmt::format("assignments list {} documents, corpus has {}", a.size(),
                                                           corpus.size()));
        }
        return a;
    });
    const auto [topics, metrics] = extract_and_score(manifest, config, corpus, assignments);
    manifest.clusters = topics.topics.size();
    run_stage(manifest, "report", [&] { write_topic_reports(out, config, topics, metrics); });
    out.commit(manifest);
    return manifest;
}

}  // namespace topicforge
