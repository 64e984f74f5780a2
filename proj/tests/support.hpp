#pragma once

// Test-only helpers: synthetic data generators and reference computations.

#include "topicforge/embedding.hpp"
#include "topicforge/kmeans.hpp"
#include "topicforge/random.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace topicforge::testing {

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        Rng rng(reinterpret_cast<std::uintptr_t>(this) ^ static_cast<std::uint64_t>(std::time(nullptr)));
        path_ = std::filesystem::temp_directory_path() / ("topicforge_" + tag + "_" + std::to_string(rng.next() % 1000000007));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct LabeledPoints {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> data;
    std::vector<std::uint32_t> labels;

    EmbeddingMatrix matrix() const { return EmbeddingMatrix(rows, cols, data); }
    Points points() const { return Points{rows, cols, std::vector<double>(data.begin(), data.end())}; }
};

/// Isotropic Gaussian blobs around the given centers.
inline LabeledPoints gaussian_blobs(const std::vector<std::vector<double>>& centers, std::size_t per_blob,
                                    double sigma, std::uint64_t seed) {
    Rng rng(seed);
    LabeledPoints out;
    out.cols = centers.front().size();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        for (std::size_t i = 0; i < per_blob; ++i) {
            for (double mu : centers[c]) {
                out.data.push_back(static_cast<float>(mu + sigma * rng.normal()));
            }
            out.labels.push_back(static_cast<std::uint32_t>(c));
            ++out.rows;
        }
    }
    return out;
}

/// Random centers in `dim` dimensions with every pair at least `min_gap` apart.
inline std::vector<std::vector<double>> separated_centers(std::size_t count, std::size_t dim, double min_gap,
                                                          double box, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<double>> centers;
    while (centers.size() < count) {
        std::vector<double> c(dim);
        for (auto& v : c) v = rng.uniform(-box, box);
        bool ok = true;
        for (const auto& other : centers) {
            double d = 0.0;
            for (std::size_t j = 0; j < dim; ++j) d += (c[j] - other[j]) * (c[j] - other[j]);
            if (std::sqrt(d) < min_gap) ok = false;
        }
        if (ok) centers.push_back(std::move(c));
    }
    return centers;
}

/// Hubert-Arabie adjusted Rand index.
inline double adjusted_rand_index(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> table;
    std::map<std::uint32_t, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{a[i], b[i]}] += 1;
        rows[a[i]] += 1;
        cols[b[i]] += 1;
    }
    auto choose2 = [](double x) { return x * (x - 1) / 2; };
    double index = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [_, v] : table) index += choose2(v);
    for (const auto& [_, v] : rows) sum_rows += choose2(v);
    for (const auto& [_, v] : cols) sum_cols += choose2(v);
    const double total = choose2(static_cast<double>(a.size()));
    const double expected = sum_rows * sum_cols / total;
    const double max_index = (sum_rows + sum_cols) / 2;
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

/// Minimum WCSS over every partition of the points into exactly k nonempty
/// groups, each group scored against its own mean.
inline double brute_force_min_wcss(const Points& points, std::size_t k) {
    const std::size_t n = points.rows;
    std::vector<std::size_t> label(n, 0);
    double best = INFINITY;
    while (true) {
        std::vector<std::size_t> sizes(k, 0);
        for (auto l : label) ++sizes[l];
        bool all_nonempty = true;
        for (auto s : sizes) all_nonempty = all_nonempty && s > 0;
        if (all_nonempty) {
            std::vector<double> means(k * points.cols, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t d = 0; d < points.cols; ++d) means[label[i] * points.cols + d] += points.row(i)[d];
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t d = 0; d < points.cols; ++d) means[c * points.cols + d] /= double(sizes[c]);
            double w = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t d = 0; d < points.cols; ++d) {
                    const double diff = points.row(i)[d] - means[label[i] * points.cols + d];
                    w += diff * diff;
                }
            best = std::min(best, w);
        }
        std::size_t pos = 0;
        while (pos < n && ++label[pos] == k) label[pos++] = 0;
        if (pos == n) break;
    }
    return best;
}

/// Lloyd run from every k-subset of points used as seeds; returns the lowest WCSS.
inline double exhaustive_seeded_lloyd(const Points& points, std::size_t k, std::vector<double>* trace_sink = nullptr) {
    const std::size_t n = points.rows;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    double best = INFINITY;
    while (true) {
        std::vector<double> seeds;
        for (auto i : idx) seeds.insert(seeds.end(), points.row(i).begin(), points.row(i).end());
        // Duplicate seed coordinates are not valid distinct centroids.
        bool distinct = true;
        for (std::size_t a = 0; a < k && distinct; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (squared_distance(points.row(idx[a]), points.row(idx[b])) == 0.0) distinct = false;
        if (distinct) {
            const auto model = lloyd(points, seeds);
            best = std::min(best, model.wcss);
            if (trace_sink) trace_sink->insert(trace_sink->end(), model.wcss_trace.begin(), model.wcss_trace.end());
        }
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && idx[pos] == n - k + static_cast<std::size_t>(pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

/// Planted-topic corpus: `topics` disjoint vocabularies of `terms` words,
/// `docs_per_topic` documents each drawing `doc_len` words from their own
/// vocabulary, plus Gaussian embeddings around a topic-specific mean.
struct PlantedCorpus {
    std::vector<std::string> texts;
    std::vector<std::uint32_t> labels;
    std::vector<std::vector<std::string>> vocabularies;
    LabeledPoints embeddings;
};

inline PlantedCorpus planted_corpus(std::size_t topics, std::size_t terms, std::size_t docs_per_topic,
                                    std::size_t doc_len, std::size_t dim, std::uint64_t seed) {
    static const char* kStems[] = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel"};
    PlantedCorpus out;
    Rng rng(seed);
    for (std::size_t t = 0; t < topics; ++t) {
        std::vector<std::string> vocab;
        for (std::size_t w = 0; w < terms; ++w) {
            vocab.push_back(std::string(kStems[t % 8]) + (t >= 8 ? std::to_string(t) : "") + "w" + std::to_string(w));
        }
        out.vocabularies.push_back(std::move(vocab));
    }
    // Zipf-like term weights so each vocabulary has clear leading terms.
    std::vector<double> weights(terms);
    double total = 0.0;
    for (std::size_t w = 0; w < terms; ++w) total += weights[w] = 1.0 / double(w + 1);
    for (std::size_t t = 0; t < topics; ++t) {
        for (std::size_t d = 0; d < docs_per_topic; ++d) {
            std::string text;
            for (std::size_t i = 0; i < doc_len; ++i) {
                double r = rng.uniform() * total;
                std::size_t w = 0;
                while (w + 1 < terms && r >= weights[w]) r -= weights[w++];
                if (!text.empty()) text += ' ';
                text += out.vocabularies[t][w];
            }
            out.texts.push_back(text + ".");
            out.labels.push_back(static_cast<std::uint32_t>(t));
        }
    }
    const auto centers = separated_centers(topics, dim, 10.0, 6.0, seed + 1);
    out.embeddings = gaussian_blobs(centers, docs_per_topic, 1.0, seed + 2);
    return out;
}

}  // namespace topicforge::testing
