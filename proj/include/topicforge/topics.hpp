#pragma once

#include "topicforge/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace topicforge {

struct ScoredTerm {
    std::string term;
    double score = 0.0;

    friend bool operator==(const ScoredTerm&, const ScoredTerm&) = default;
};

struct Topic {
    std::size_t cluster_id = 0;
    /// Score descending, ties lexicographic by term.
    std::vector<ScoredTerm> terms;
    std::size_t size = 0;
};

struct TopicModel {
    /// One per non-empty cluster, ascending cluster id.
    std::vector<Topic> topics;
    std::size_t top_n = 10;
};

enum class TfMode {
    /// count / total tokens in the cluster
    Normalized,
    /// raw count
    RawCount,
};

enum class IdfMode {
    /// ln(1 + K / df)
    Smoothed,
    /// ln(K / df)
    Plain,
};

TfMode parse_tf_mode(std::string_view name);
IdfMode parse_idf_mode(std::string_view name);
std::string_view to_string(TfMode mode) noexcept;
std::string_view to_string(IdfMode mode) noexcept;

struct TfidfOptions {
    TfMode tf = TfMode::Normalized;
    IdfMode idf = IdfMode::Smoothed;
    std::size_t top_n = 10;
    int threads = 1;
};

/// Class-based TF-IDF: each cluster's documents are concatenated into one
/// pseudo-document and K is the number of non-empty clusters. Every term
/// present in a cluster is listed for that topic. Throws InvalidArgument when
/// `assignments` does not cover the corpus.
TopicModel cluster_tfidf(const Corpus& corpus, std::span<const std::uint32_t> assignments,
                         const Vocabulary& vocabulary, const TfidfOptions& options = {});

/// Orders terms by score descending then term ascending.
void rank_terms(std::vector<ScoredTerm>& terms);

/// The first min(n, |terms|) entries of each topic. n must be >= 1.
std::vector<std::vector<ScoredTerm>> top_terms(const TopicModel& model, std::size_t n);

}  // namespace topicforge
