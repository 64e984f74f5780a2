#pragma once

#include "topicforge/topics.hpp"
#include "topicforge/umap.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace topicforge {

enum class TextFormat { Lines, Csv };
enum class EmbeddingFormat { Tfemb, Csv };

/// Everything a pipeline run needs. Parsed from a flat `key = value` file;
/// see README for the key list and defaults.
struct PipelineConfig {
    // inputs
    std::filesystem::path texts;
    TextFormat texts_format = TextFormat::Lines;
    std::string csv_column = "text";
    /// "builtin:<langs>", a file path, or "none".
    std::string stopwords = "builtin:es+en";
    std::size_t min_token_length = 1;

    // embedding source: exactly one of the two
    std::filesystem::path embeddings;
    EmbeddingFormat embeddings_format = EmbeddingFormat::Tfemb;
    std::string embedding_service;
    std::size_t service_batch_size = 32;
    double service_timeout = 30.0;
    int service_retries = 2;
    int service_concurrency = 1;

    UmapConfig umap;

    /// 0 selects k with the elbow scan.
    std::size_t kmeans_k = 0;
    std::size_t kmeans_k_min = 2;
    std::size_t kmeans_k_max = 15;
    int kmeans_restarts = 100;
    std::uint64_t kmeans_seed = 42;
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-6;

    std::size_t top_n = 10;
    TfMode tfidf_tf = TfMode::Normalized;
    IdfMode tfidf_idf = IdfMode::Smoothed;
    double coherence_epsilon = 1e-12;

    std::filesystem::path output_dir = "out";
    int threads = 1;

    /// Applies one key. Relative paths resolve against `base_dir`. Throws
    /// Error(Config) for unknown keys and unparsable values.
    void set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir = {});

    /// Throws Error(Config) when an invariant fails.
    void validate() const;

    /// Every key with its effective value, in documentation order.
    std::vector<std::pair<std::string, std::string>> snapshot() const;
};

/// Parses config text without validating it.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

/// Loads a config file and validates it.
PipelineConfig validate_config(const std::filesystem::path& path);

}  // namespace topicforge
