#include "topicforge/metrics.hpp"

#include "topicforge/error.hpp"
#include "topicforge/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace topicforge {

DiversityScores topic_diversity(const TopicModel& model, std::size_t top_n) {
    if (top_n == 0) {
        throw Error(ErrorKind::InvalidArgument, "top_n must be >= 1");
    }
    const auto lists = top_terms(model, top_n);
    std::unordered_map<std::string, std::size_t> owners;  // term -> number of lists containing it
    std::size_t total = 0;
    for (std::size_t t = 0; t < lists.size(); ++t) {
        if (lists[t].empty()) {
            throw Error(ErrorKind::InvalidArgument,
                        "topic for cluster " + std::to_string(model.topics[t].cluster_id) + " has no terms");
        }
        total += lists[t].size();
        for (const auto& st : lists[t]) {
            ++owners[st.term];
        }
    }
    DiversityScores scores;
    scores.global = total > 0 ? static_cast<double>(owners.size()) / static_cast<double>(total) : 0.0;
    for (const auto& list : lists) {
        std::size_t unique = 0;
        for (const auto& st : list) {
            if (owners[st.term] == 1) ++unique;
        }
        scores.per_topic.push_back(static_cast<double>(unique) / static_cast<double>(list.size()));
    }
    return scores;
}

CooccurrenceIndex::CooccurrenceIndex(const Corpus& corpus) : documents_(corpus.size()) {
    for (const auto& doc : corpus.documents) {
        for (const auto& token : doc.tokens) {
            auto& list = postings_[token];
            if (list.empty() || list.back() != doc.id) {
                list.push_back(doc.id);
            }
        }
    }
    for (auto& [term, list] : postings_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

const std::vector<std::size_t>* CooccurrenceIndex::postings(std::string_view term) const {
    auto it = postings_.find(std::string(term));
    return it == postings_.end() ? nullptr : &it->second;
}

std::size_t CooccurrenceIndex::document_count(std::string_view term) const {
    const auto* p = postings(term);
    return p ? p->size() : 0;
}

std::size_t CooccurrenceIndex::joint_count(std::string_view a, std::string_view b) const {
    const auto* pa = postings(a);
    const auto* pb = postings(b);
    if (!pa || !pb) return 0;
    std::size_t count = 0;
    auto ia = pa->begin();
    auto ib = pb->begin();
    while (ia != pa->end() && ib != pb->end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++count;
            ++ia;
            ++ib;
        }
    }
    return count;
}

double npmi(const CooccurrenceIndex& index, std::string_view a, std::string_view b, double epsilon) {
    const auto n = static_cast<double>(index.documents());
    const auto ca = index.document_count(a);
    const auto cb = index.document_count(b);
    if (ca == 0 || cb == 0) {
        throw Error(ErrorKind::Validation, "term '" + std::string(ca == 0 ? a : b) + "' does not occur in the scoring corpus");
    }
    const double pa = static_cast<double>(ca) / n;
    const double pb = static_cast<double>(cb) / n;
    const double pab = static_cast<double>(index.joint_count(a, b)) / n + epsilon;
    const double denominator = -std::log(pab);
    if (denominator <= 0.0) {
        return 1.0;
    }
    return std::clamp(std::log(pab / (pa * pb)) / denominator, -1.0, 1.0);
}

double topic_coherence_npmi(const Topic& topic, const CooccurrenceIndex& index, std::size_t top_n, double epsilon) {
    if (top_n < 2) {
        throw Error(ErrorKind::InvalidArgument, "coherence needs top_n >= 2");
    }
    if (index.documents() == 0) {
        throw Error(ErrorKind::EmptyInput, "coherence needs a nonempty corpus");
    }
    const auto count = std::min(top_n, topic.terms.size());
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            sum += npmi(index, topic.terms[i].term, topic.terms[j].term, epsilon);
            ++pairs;
        }
    }
    if (count == 1 && index.document_count(topic.terms[0].term) == 0) {
        throw Error(ErrorKind::Validation, "term '" + topic.terms[0].term + "' does not occur in the scoring corpus");
    }
    return pairs > 0 ? sum / static_cast<double>(pairs) : 0.0;
}

double topic_coherence_npmi(const Topic& topic, const Corpus& corpus, std::size_t top_n, double epsilon) {
    return topic_coherence_npmi(topic, CooccurrenceIndex(corpus), top_n, epsilon);
}

MetricsReport evaluate_topics(const TopicModel& model, const Corpus& corpus, std::size_t top_n, double epsilon,
                              int threads) {
    const auto diversity = topic_diversity(model, top_n);
    const CooccurrenceIndex index(corpus);
    MetricsReport report;
    report.global_diversity = diversity.global;
    report.per_topic.resize(model.topics.size());
    parallel_for(model.topics.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            report.per_topic[t] = {model.topics[t].cluster_id, diversity.per_topic[t],
                                   topic_coherence_npmi(model.topics[t], index, top_n, epsilon)};
        }
    });
    double total = 0.0;
    for (const auto& s : report.per_topic) total += s.coherence;
    report.mean_coherence = report.per_topic.empty() ? 0.0 : total / static_cast<double>(report.per_topic.size());
    return report;
}

std::string format_metrics_table(const MetricsReport& report, const TopicModel& model, std::size_t shown_terms) {
    std::string out = fmt::format("{:<8} {:>6}  {:<48} {:>9} {:>9}\n", "Cluster", "Size", "Top terms", "Diversity",
                                  "Coherence");
    out += std::string(84, '-') + "\n";
    for (std::size_t t = 0; t < report.per_topic.size(); ++t) {
        std::string terms;
        const auto& topic = model.topics[t];
        for (std::size_t i = 0; i < std::min(shown_terms, topic.terms.size()); ++i) {
            if (i > 0) terms += ", ";
            terms += topic.terms[i].term;
        }
        out += fmt::format("{:<8} {:>6}  {:<48} {:>9.3f} {:>9.3f}\n", report.per_topic[t].cluster_id, topic.size,
                           terms, report.per_topic[t].diversity, report.per_topic[t].coherence);
    }
    out += std::string(84, '-') + "\n";
    out += fmt::format("global diversity {:.3f}   mean coherence {:.3f}\n", report.global_diversity,
                       report.mean_coherence);
    return out;
}

}  // namespace topicforge
