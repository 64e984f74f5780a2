#include "topicforge/error.hpp"
#include "topicforge/metrics.hpp"

#include "corpus_fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace topicforge;
using topicforge::testing::corpus_from_tokens;

namespace {

TopicModel model_from_lists(const std::vector<std::vector<std::string>>& lists) {
    TopicModel model;
    for (std::size_t c = 0; c < lists.size(); ++c) {
        Topic topic;
        topic.cluster_id = c;
        topic.size = 1;
        double score = double(lists[c].size());
        for (const auto& term : lists[c]) topic.terms.push_back({term, score--});
        model.topics.push_back(std::move(topic));
    }
    model.top_n = lists.front().size();
    return model;
}

Topic topic_of(std::vector<std::string> terms) { return model_from_lists({std::move(terms)}).topics[0]; }

/// Direct evaluation of the NPMI formula from counts.
double npmi_oracle(double n, double ni, double nj, double nij, double eps) {
    const double pij = nij / n + eps;
    const double v = std::log(pij / ((ni / n) * (nj / n))) / -std::log(pij);
    return std::clamp(v, -1.0, 1.0);
}

}  // namespace

TEST(Diversity, DisjointLists) {
    const auto d = topic_diversity(model_from_lists({{"a", "b"}, {"c", "d"}, {"e", "f"}}), 2);
    EXPECT_DOUBLE_EQ(d.global, 1.0);
    for (double v : d.per_topic) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Diversity, IdenticalLists) {
    const auto d = topic_diversity(model_from_lists({{"a", "b"}, {"a", "b"}, {"a", "b"}, {"a", "b"}}), 2);
    EXPECT_DOUBLE_EQ(d.global, 0.25);
    for (double v : d.per_topic) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(Diversity, OneSharedTerm) {
    const auto d = topic_diversity(model_from_lists({{"a", "b", "c"}, {"c", "d", "e"}}), 3);
    EXPECT_DOUBLE_EQ(d.global, 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(d.per_topic[0], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(d.per_topic[1], 2.0 / 3.0);
}

TEST(Diversity, InvariantToTermAndTopicOrder) {
    const auto a = topic_diversity(model_from_lists({{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "a"}}), 3);
    const auto b = topic_diversity(model_from_lists({{"f", "a", "e"}, {"b", "c", "a"}, {"e", "d", "c"}}), 3);
    EXPECT_DOUBLE_EQ(a.global, b.global);
    EXPECT_DOUBLE_EQ(a.per_topic[0], b.per_topic[1]);
    EXPECT_DOUBLE_EQ(a.per_topic[1], b.per_topic[2]);
    EXPECT_DOUBLE_EQ(a.per_topic[2], b.per_topic[0]);
}

TEST(Diversity, RejectsEmptyTopicsAndZeroN) {
    EXPECT_THROW(topic_diversity(model_from_lists({{"a"}, {}}), 1), Error);
    EXPECT_THROW(topic_diversity(model_from_lists({{"a"}}), 0), Error);
}

TEST(Npmi, PerfectAssociation) {
    const auto corpus = corpus_from_tokens({{"a", "b"}, {"a", "b"}, {"c"}, {"d"}});
    const CooccurrenceIndex index(corpus);
    EXPECT_NEAR(npmi(index, "a", "b", kDefaultNpmiEpsilon), 1.0, 1e-6);
    EXPECT_NEAR(topic_coherence_npmi(topic_of({"a", "b"}), corpus, 2), 1.0, 1e-6);
}

TEST(Npmi, PairInEveryDocument) {
    const auto corpus = corpus_from_tokens({{"a", "b"}, {"b", "a"}});
    EXPECT_EQ(npmi(CooccurrenceIndex(corpus), "a", "b", kDefaultNpmiEpsilon), 1.0);
}

TEST(Npmi, NeverCoOccurTendsToMinusOne) {
    const auto corpus = corpus_from_tokens({{"a"}, {"b"}, {"a"}, {"b"}});
    const CooccurrenceIndex index(corpus);
    EXPECT_LE(npmi(index, "a", "b", 1e-200), -0.99);
    EXPECT_NEAR(npmi(index, "a", "b", 1e-12), npmi_oracle(4, 2, 2, 0, 1e-12), 1e-12);
    EXPECT_GE(npmi(index, "a", "b", 1e-300), -1.0);
}

TEST(Npmi, IndependentTermsNearZero) {
    std::vector<std::vector<std::string>> docs;
    for (int i = 0; i < 400; ++i) {
        std::vector<std::string> d = {"filler"};
        if (i < 200) d.push_back("a");
        if (i % 2 == 0) d.push_back("b");
        docs.push_back(d);
    }
    EXPECT_NEAR(npmi(CooccurrenceIndex(corpus_from_tokens(docs)), "a", "b", kDefaultNpmiEpsilon), 0.0, 1e-9);
}

TEST(Npmi, FourDocumentExample) {
    const auto corpus = corpus_from_tokens({{"a", "b"}, {"a"}, {"b"}, {"c"}});
    EXPECT_NEAR(topic_coherence_npmi(topic_of({"a", "b"}), corpus, 2), 0.0, 1e-9);
}

TEST(Npmi, MatchesFormulaOnRandomCounts) {
    const auto corpus = corpus_from_tokens(
        {{"a", "b", "c"}, {"a", "c"}, {"b"}, {"c", "d"}, {"a", "d"}, {"d"}, {"a", "b", "d"}, {"e"}});
    const CooccurrenceIndex index(corpus);
    const std::vector<std::string> terms = {"a", "b", "c", "d"};
    double total = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            const double expected = npmi_oracle(8, double(index.document_count(terms[i])),
                                                double(index.document_count(terms[j])),
                                                double(index.joint_count(terms[i], terms[j])), 1e-12);
            const double got = npmi(index, terms[i], terms[j], 1e-12);
            EXPECT_NEAR(got, expected, 1e-12);
            EXPECT_GE(got, -1.0);
            EXPECT_LE(got, 1.0);
            total += expected;
            ++pairs;
        }
    EXPECT_NEAR(topic_coherence_npmi(topic_of(terms), index, 4), total / pairs, 1e-12);
    EXPECT_EQ(index.joint_count("a", "b"), 2u);
    EXPECT_EQ(index.document_count("zzz"), 0u);
}

TEST(Npmi, InvariantUnderPermutationAndDuplication) {
    const std::vector<std::vector<std::string>> docs = {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"a"}, {"c", "d"}};
    const auto topic = topic_of({"a", "b", "c"});
    const double base = topic_coherence_npmi(topic, corpus_from_tokens(docs), 3);
    std::vector<std::vector<std::string>> reversed(docs.rbegin(), docs.rend());
    auto doubled = docs;
    doubled.insert(doubled.end(), docs.begin(), docs.end());
    EXPECT_NEAR(topic_coherence_npmi(topic, corpus_from_tokens(reversed), 3), base, 1e-12);
    EXPECT_NEAR(topic_coherence_npmi(topic, corpus_from_tokens(doubled), 3), base, 1e-9);
}

TEST(Npmi, RemovingCoOccurrenceLowersCoherence) {
    // Same marginals (a in 3 docs, b in 3 docs), fewer shared documents.
    const auto together = corpus_from_tokens({{"a", "b"}, {"a", "b"}, {"a"}, {"b"}, {"c"}, {"c"}});
    const auto apart = corpus_from_tokens({{"a", "b"}, {"a"}, {"a"}, {"b"}, {"b"}, {"c"}});
    const auto topic = topic_of({"a", "b"});
    EXPECT_LT(topic_coherence_npmi(topic, apart, 2), topic_coherence_npmi(topic, together, 2));
}

TEST(Npmi, Errors) {
    const auto corpus = corpus_from_tokens({{"a", "b"}});
    EXPECT_THROW(topic_coherence_npmi(topic_of({"a", "b"}), corpus, 1), Error);
    EXPECT_THROW(topic_coherence_npmi(topic_of({"a", "missing"}), corpus, 2), Error);
    EXPECT_EQ(topic_coherence_npmi(topic_of({"a"}), corpus, 2), 0.0);
}

TEST(Evaluate, ReportCoversEveryTopic) {
    const auto corpus = corpus_from_tokens({{"a", "b"}, {"a", "b"}, {"c", "d"}, {"c", "d"}});
    const auto model = model_from_lists({{"a", "b"}, {"c", "d"}});
    const auto report = evaluate_topics(model, corpus, 2);
    ASSERT_EQ(report.per_topic.size(), 2u);
    EXPECT_DOUBLE_EQ(report.global_diversity, 1.0);
    EXPECT_NEAR(report.mean_coherence, 1.0, 1e-6);
    const auto parallel = evaluate_topics(model, corpus, 2, kDefaultNpmiEpsilon, 3);
    EXPECT_EQ(parallel.mean_coherence, report.mean_coherence);
    const auto table = format_metrics_table(report, model);
    EXPECT_NE(table.find("a, b"), std::string::npos);
}
