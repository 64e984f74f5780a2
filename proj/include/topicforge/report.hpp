#pragma once

#include "topicforge/kmeans.hpp"
#include "topicforge/metrics.hpp"
#include "topicforge/topics.hpp"
#include "topicforge/umap.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace topicforge {

/// `doc_id,cluster`
std::string assignments_csv(std::span<const std::uint32_t> assignments);
/// Reads `doc_id,cluster`; rows must list every doc id 0..n-1 exactly once.
std::vector<std::uint32_t> parse_assignments_csv(std::string_view content);

/// `doc_id,x,y`, extra components as c2, c3, ...
std::string layout_csv(const LowDimLayout& layout);
/// `k,wcss`
std::string elbow_csv(const ElbowCurve& curve);

/// `[{cluster, size, terms: [{term, score}]}]`, terms truncated to top_n.
std::string topics_json(const TopicModel& model, std::size_t top_n);
/// `{global_diversity, mean_coherence, topics: [{cluster, diversity, coherence}]}`
std::string metrics_json(const MetricsReport& report);

/// 2-D scatter of the first two layout components colored by cluster.
std::string layout_svg(const LowDimLayout& layout, std::span<const std::uint32_t> assignments);
/// WCSS against k with the selected k marked.
std::string elbow_svg(const ElbowCurve& curve);
/// Horizontal bar chart of one topic's top terms.
std::string topic_bars_svg(const Topic& topic, std::size_t top_n);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace topicforge
