#pragma once

#include "topicforge/umap.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace topicforge {

/// Row-major double-precision points for clustering.
struct Points {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

    static Points from_layout(const LowDimLayout& layout);
};

struct ClusterModel {
    std::size_t k = 0;
    std::size_t dim = 0;
    std::vector<double> centroids;  // k x dim
    std::vector<std::uint32_t> assignments;
    double wcss = 0.0;
    int iterations = 0;
    int restarts_run = 0;
    /// WCSS after each completed assignment/update round.
    std::vector<double> wcss_trace;

    std::span<const double> centroid(std::size_t c) const { return {centroids.data() + c * dim, dim}; }
};

struct LloydOptions {
    int max_iter = 300;
    /// Stop once no centroid moves farther than this (Euclidean).
    double tol = 1e-6;
    int threads = 1;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Sum of squared distances from each point to its assigned centroid.
double compute_wcss(const Points& points, std::span<const double> centroids,
                    std::span<const std::uint32_t> assignments);

/// Nearest centroid per point, ties to the lowest cluster id.
std::vector<std::uint32_t> assign_nearest(const Points& points, std::span<const double> centroids, std::size_t k,
                                          int threads = 1);

std::size_t count_distinct_points(const Points& points);

/// K-means++ seeding: first centroid uniform, each next drawn with
/// probability proportional to squared distance to the nearest chosen one.
/// Throws InvalidArgument when k exceeds the number of distinct points.
std::vector<double> kmeans_pp_init(const Points& points, std::size_t k, std::uint64_t seed);

/// Lloyd iterations from the given centroids. An empty cluster takes the
/// point farthest from its current centroid.
ClusterModel lloyd(const Points& points, std::vector<double> init_centroids, const LloydOptions& options = {});

/// Restart r uses seed + r; the lowest WCSS wins, earlier restart on ties.
ClusterModel best_of_restarts(const Points& points, std::size_t k, int restarts, std::uint64_t seed,
                              const LloydOptions& options = {});

struct ElbowCurve {
    std::vector<std::size_t> k_values;
    std::vector<double> wcss_values;
    std::size_t selected_k = 0;
    /// True when no point stood off the chord and k_min was chosen.
    bool flat = false;
};

/// Picks the k whose min-max normalized (k, wcss) point lies farthest from
/// the chord joining the first and last points. Needs >= 3 values.
ElbowCurve select_elbow(std::vector<std::size_t> k_values, std::vector<double> wcss_values);

/// Best-of-restarts WCSS for every k in [k_min, k_max], then select_elbow.
ElbowCurve elbow_select(const Points& points, std::size_t k_min, std::size_t k_max, int restarts,
                        std::uint64_t seed, const LloydOptions& options = {});

}  // namespace topicforge
