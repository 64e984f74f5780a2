#include "topicforge/topics.hpp"

#include "topicforge/error.hpp"
#include "topicforge/log.hpp"
#include "topicforge/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace topicforge {

TfMode parse_tf_mode(std::string_view name) {
    if (name == "normalized") return TfMode::Normalized;
    if (name == "raw") return TfMode::RawCount;
    throw Error(ErrorKind::Config, "unknown tf mode '" + std::string(name) + "'");
}

IdfMode parse_idf_mode(std::string_view name) {
    if (name == "smoothed") return IdfMode::Smoothed;
    if (name == "plain") return IdfMode::Plain;
    throw Error(ErrorKind::Config, "unknown idf mode '" + std::string(name) + "'");
}

std::string_view to_string(TfMode mode) noexcept { return mode == TfMode::Normalized ? "normalized" : "raw"; }
std::string_view to_string(IdfMode mode) noexcept { return mode == IdfMode::Smoothed ? "smoothed" : "plain"; }

void rank_terms(std::vector<ScoredTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const ScoredTerm& x, const ScoredTerm& y) {
        if (x.score != y.score) return x.score > y.score;
        return x.term < y.term;
    });
}

TopicModel cluster_tfidf(const Corpus& corpus, std::span<const std::uint32_t> assignments,
                         const Vocabulary& vocabulary, const TfidfOptions& options) {
    if (assignments.size() != corpus.size()) {
        throw Error(ErrorKind::InvalidArgument, "assignments cover " + std::to_string(assignments.size()) +
                                                    " documents, corpus has " + std::to_string(corpus.size()));
    }

    // cluster id -> (term id -> count)
    std::map<std::uint32_t, std::size_t> cluster_slot;
    for (auto c : assignments) {
        cluster_slot.try_emplace(c, 0);
    }
    std::size_t slot = 0;
    for (auto& [c, s] : cluster_slot) {
        s = slot++;
    }
    const std::size_t clusters = cluster_slot.size();

    std::vector<std::vector<std::size_t>> counts(clusters, std::vector<std::size_t>(vocabulary.size(), 0));
    std::vector<std::size_t> totals(clusters, 0);
    std::vector<std::size_t> sizes(clusters, 0);
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        const auto s = cluster_slot.at(assignments[d]);
        ++sizes[s];
        for (const auto& token : corpus.documents[d].tokens) {
            const auto id = vocabulary.find(token);
            if (!id) {
                throw Error(ErrorKind::InvalidArgument, "token '" + token + "' missing from vocabulary");
            }
            ++counts[s][*id];
            ++totals[s];
        }
    }

    std::vector<std::size_t> cluster_df(vocabulary.size(), 0);
    for (const auto& row : counts) {
        for (std::size_t t = 0; t < row.size(); ++t) {
            if (row[t] > 0) ++cluster_df[t];
        }
    }

    const auto k = static_cast<double>(clusters);
    TopicModel model;
    model.top_n = options.top_n;
    model.topics.resize(clusters);
    for (const auto& [c, s] : cluster_slot) {
        model.topics[s].cluster_id = c;
        model.topics[s].size = sizes[s];
        if (totals[s] == 0) {
            log_warning("cluster " + std::to_string(c) + " has no tokens; its topic is empty");
        }
    }

    parallel_for(clusters, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            auto& terms = model.topics[s].terms;
            for (std::size_t t = 0; t < vocabulary.size(); ++t) {
                if (counts[s][t] == 0) continue;
                const double tf = options.tf == TfMode::Normalized
                                      ? static_cast<double>(counts[s][t]) / static_cast<double>(totals[s])
                                      : static_cast<double>(counts[s][t]);
                const double ratio = k / static_cast<double>(cluster_df[t]);
                const double idf = options.idf == IdfMode::Smoothed ? std::log1p(ratio) : std::log(ratio);
                terms.push_back({vocabulary.term(t), tf * idf});
            }
            rank_terms(terms);
        }
    });
    return model;
}

std::vector<std::vector<ScoredTerm>> top_terms(const TopicModel& model, std::size_t n) {
    if (n < 1) {
        throw Error(ErrorKind::InvalidArgument, "top_terms needs n >= 1");
    }
    std::vector<std::vector<ScoredTerm>> out;
    out.reserve(model.topics.size());
    for (const auto& topic : model.topics) {
        const auto take = std::min(n, topic.terms.size());
        out.emplace_back(topic.terms.begin(), topic.terms.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return out;
}

}  // namespace topicforge
