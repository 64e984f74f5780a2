#pragma once

#include "topicforge/config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace topicforge {

inline constexpr const char* kVersion = "0.1.0";

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct RunManifest {
    std::string version = kVersion;
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    /// In execution order.
    std::vector<StageTiming> stages;
    std::vector<std::filesystem::path> outputs;
    std::size_t documents = 0;
    std::size_t clusters = 0;
    bool k_from_elbow = false;

    std::string to_json() const;
};

/// Runs every stage in order and writes all reports into config.output_dir
/// (created if needed). Returns the manifest, also saved as manifest.json. A failing stage
/// throws StageError and removes the files this run wrote.
RunManifest run_pipeline(const PipelineConfig& config);

/// Stops after the reduction and writes the layout as CSV, TFEMB1 and SVG.
RunManifest run_reduce_stage(const PipelineConfig& config);

/// Elbow scan over an existing layout file (TFEMB1) or, when absent, a
/// freshly reduced layout. Writes elbow.csv and elbow.svg.
RunManifest run_elbow_stage(const PipelineConfig& config, const std::optional<std::filesystem::path>& layout_file);

/// Topics and metrics from a given `doc_id,cluster` file; needs no
/// embeddings. Writes the topic and metric reports with their charts.
RunManifest run_score_stage(const PipelineConfig& config, const std::filesystem::path& assignments_file);

}  // namespace topicforge
