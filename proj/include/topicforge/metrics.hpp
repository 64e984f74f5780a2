#pragma once

#include "topicforge/corpus.hpp"
#include "topicforge/topics.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace topicforge {

struct DiversityScores {
    /// Fraction of each topic's top terms that appear in no other topic's list.
    std::vector<double> per_topic;
    /// |union of top lists| / total list length.
    double global = 0.0;
};

/// Throws InvalidArgument if any topic has no terms or top_n is 0.
DiversityScores topic_diversity(const TopicModel& model, std::size_t top_n);

/// Document-level occurrence sets for NPMI.
class CooccurrenceIndex {
public:
    explicit CooccurrenceIndex(const Corpus& corpus);

    std::size_t documents() const noexcept { return documents_; }
    /// Documents containing `term`; 0 if unseen.
    std::size_t document_count(std::string_view term) const;
    /// Documents containing both terms.
    std::size_t joint_count(std::string_view a, std::string_view b) const;

private:
    const std::vector<std::size_t>* postings(std::string_view term) const;

    std::size_t documents_ = 0;
    std::unordered_map<std::string, std::vector<std::size_t>> postings_;
};

inline constexpr double kDefaultNpmiEpsilon = 1e-12;

/// NPMI of one term pair, ln((P(ij)+eps) / (P(i)P(j))) / -ln(P(ij)+eps),
/// clamped to [-1, 1]. A pair present in every document scores 1.
double npmi(const CooccurrenceIndex& index, std::string_view a, std::string_view b, double epsilon);

/// Mean NPMI over unordered pairs of the topic's first top_n terms; 0 when
/// the topic has fewer than two terms. Throws InvalidArgument for top_n < 2
/// and Validation when a term is absent from the scoring corpus.
double topic_coherence_npmi(const Topic& topic, const CooccurrenceIndex& index, std::size_t top_n,
                            double epsilon = kDefaultNpmiEpsilon);
double topic_coherence_npmi(const Topic& topic, const Corpus& corpus, std::size_t top_n,
                            double epsilon = kDefaultNpmiEpsilon);

struct TopicScore {
    std::size_t cluster_id = 0;
    double diversity = 0.0;
    double coherence = 0.0;
};

struct MetricsReport {
    std::vector<TopicScore> per_topic;
    double global_diversity = 0.0;
    double mean_coherence = 0.0;
};

MetricsReport evaluate_topics(const TopicModel& model, const Corpus& corpus, std::size_t top_n,
                              double epsilon = kDefaultNpmiEpsilon, int threads = 1);

/// Fixed-width table with one row per topic plus the global scores.
std::string format_metrics_table(const MetricsReport& report, const TopicModel& model, std::size_t shown_terms = 5);

}  // namespace topicforge
