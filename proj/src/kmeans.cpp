#include "topicforge/kmeans.hpp"

#include "topicforge/error.hpp"
#include "topicforge/log.hpp"
#include "topicforge/parallel.hpp"
#include "topicforge/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace topicforge {

Points Points::from_layout(const LowDimLayout& layout) {
    return Points{layout.rows, layout.cols, std::vector<double>(layout.data.begin(), layout.data.end())};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

double compute_wcss(const Points& points, std::span<const double> centroids,
                    std::span<const std::uint32_t> assignments) {
    double total = 0.0;
    for (std::size_t i = 0; i < points.rows; ++i) {
        total += squared_distance(points.row(i), centroids.subspan(assignments[i] * points.cols, points.cols));
    }
    return total;
}

std::vector<std::uint32_t> assign_nearest(const Points& points, std::span<const double> centroids, std::size_t k,
                                          int threads) {
    std::vector<std::uint32_t> out(points.rows);
    parallel_for(points.rows, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::uint32_t best_c = 0;
            for (std::size_t c = 0; c < k; ++c) {
                const double d = squared_distance(points.row(i), centroids.subspan(c * points.cols, points.cols));
                if (d < best) {
                    best = d;
                    best_c = static_cast<std::uint32_t>(c);
                }
            }
            out[i] = best_c;
        }
    });
    return out;
}

std::size_t count_distinct_points(const Points& points) {
    std::vector<std::span<const double>> rows;
    rows.reserve(points.rows);
    for (std::size_t i = 0; i < points.rows; ++i) {
        rows.push_back(points.row(i));
    }
    auto less = [](std::span<const double> a, std::span<const double> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    std::sort(rows.begin(), rows.end(), less);
    std::size_t distinct = rows.empty() ? 0 : 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (less(rows[i - 1], rows[i])) {
            ++distinct;
        }
    }
    return distinct;
}

std::vector<double> kmeans_pp_init(const Points& points, std::size_t k, std::uint64_t seed) {
    if (k == 0) {
        throw Error(ErrorKind::InvalidArgument, "k must be >= 1");
    }
    if (k > count_distinct_points(points)) {
        throw Error(ErrorKind::InvalidArgument,
                    "k=" + std::to_string(k) + " exceeds the number of distinct points");
    }
    const std::size_t n = points.rows;
    const std::size_t dim = points.cols;
    Rng rng(seed);
    std::vector<double> centroids;
    centroids.reserve(k * dim);

    auto first = points.row(static_cast<std::size_t>(rng.below(n)));
    centroids.insert(centroids.end(), first.begin(), first.end());

    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) {
        nearest[i] = squared_distance(points.row(i), first);
    }
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (double d : nearest) total += d;
        const double target = rng.uniform() * total;
        std::size_t pick = n;
        double running = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (nearest[i] <= 0.0) continue;
            running += nearest[i];
            pick = i;
            if (running > target) break;
        }
        auto chosen = points.row(pick);
        centroids.insert(centroids.end(), chosen.begin(), chosen.end());
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(points.row(i), chosen));
        }
    }
    return centroids;
}

namespace {

// Moves the farthest point into each empty cluster. Returns true if anything changed.
bool repair_empty_clusters(const Points& points, std::vector<double>& centroids, std::size_t k,
                           std::vector<std::uint32_t>& assignments) {
    const std::size_t dim = points.cols;
    bool changed = false;
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<std::size_t> sizes(k, 0);
        for (auto a : assignments) ++sizes[a];
        if (sizes[c] > 0) continue;
        double worst = -1.0;
        std::size_t far = 0;
        for (std::size_t i = 0; i < points.rows; ++i) {
            if (sizes[assignments[i]] <= 1) continue;
            const double d = squared_distance(points.row(i),
                                              std::span<const double>(centroids).subspan(assignments[i] * dim, dim));
            if (d > worst) {
                worst = d;
                far = i;
            }
        }
        if (worst < 0.0) continue;
        assignments[far] = static_cast<std::uint32_t>(c);
        std::copy_n(points.row(far).begin(), dim, centroids.begin() + static_cast<std::ptrdiff_t>(c * dim));
        changed = true;
    }
    return changed;
}

std::vector<double> cluster_means(const Points& points, const std::vector<double>& previous, std::size_t k,
                                  const std::vector<std::uint32_t>& assignments) {
    const std::size_t dim = points.cols;
    std::vector<double> sums(k * dim, 0.0);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < points.rows; ++i) {
        const auto c = assignments[i];
        ++sizes[c];
        const auto p = points.row(i);
        for (std::size_t d = 0; d < dim; ++d) {
            sums[c * dim + d] += p[d];
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t d = 0; d < dim; ++d) {
            sums[c * dim + d] = sizes[c] > 0 ? sums[c * dim + d] / static_cast<double>(sizes[c]) : previous[c * dim + d];
        }
    }
    return sums;
}

}  // namespace

ClusterModel lloyd(const Points& points, std::vector<double> init_centroids, const LloydOptions& options) {
    const std::size_t dim = points.cols;
    if (points.rows == 0 || dim == 0) {
        throw Error(ErrorKind::EmptyInput, "no points to cluster");
    }
    if (init_centroids.empty() || init_centroids.size() % dim != 0) {
        throw Error(ErrorKind::InvalidArgument, "centroid array does not match point dimension");
    }
    const std::size_t k = init_centroids.size() / dim;

    ClusterModel model;
    model.k = k;
    model.dim = dim;
    model.centroids = std::move(init_centroids);

    std::vector<std::uint32_t> previous;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        auto assignments = assign_nearest(points, model.centroids, k, options.threads);
        repair_empty_clusters(points, model.centroids, k, assignments);
        if (assignments == previous) {
            break;
        }
        auto updated = cluster_means(points, model.centroids, k, assignments);
        double displacement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            displacement = std::max(displacement, std::sqrt(squared_distance(
                                                      std::span<const double>(updated).subspan(c * dim, dim),
                                                      std::span<const double>(model.centroids).subspan(c * dim, dim))));
        }
        model.centroids = std::move(updated);
        model.wcss_trace.push_back(compute_wcss(points, model.centroids, assignments));
        ++model.iterations;
        previous = std::move(assignments);
        if (displacement < options.tol) {
            break;
        }
    }

    model.assignments = assign_nearest(points, model.centroids, k, options.threads);
    if (repair_empty_clusters(points, model.centroids, k, model.assignments)) {
        model.assignments = assign_nearest(points, model.centroids, k, options.threads);
    }
    model.wcss = compute_wcss(points, model.centroids, model.assignments);
    model.restarts_run = 1;
    return model;
}

ClusterModel best_of_restarts(const Points& points, std::size_t k, int restarts, std::uint64_t seed,
                              const LloydOptions& options) {
    if (restarts < 1) {
        throw Error(ErrorKind::InvalidArgument, "restarts must be >= 1");
    }
    std::vector<ClusterModel> runs(static_cast<std::size_t>(restarts));
    LloydOptions inner = options;
    inner.threads = 1;
    parallel_for(runs.size(), options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            runs[r] = lloyd(points, kmeans_pp_init(points, k, seed + r), inner);
        }
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].wcss < runs[best].wcss) {
            best = r;
        }
    }
    ClusterModel winner = std::move(runs[best]);
    winner.restarts_run = restarts;
    return winner;
}

ElbowCurve select_elbow(std::vector<std::size_t> k_values, std::vector<double> wcss_values) {
    if (k_values.size() != wcss_values.size()) {
        throw Error(ErrorKind::InvalidArgument, "elbow curve arrays differ in length");
    }
    if (k_values.size() < 3) {
        throw Error(ErrorKind::InvalidArgument, "elbow selection needs at least 3 k values");
    }
    ElbowCurve curve;
    curve.k_values = std::move(k_values);
    curve.wcss_values = std::move(wcss_values);

    const auto [lo_it, hi_it] = std::minmax_element(curve.wcss_values.begin(), curve.wcss_values.end());
    const double k_lo = static_cast<double>(curve.k_values.front());
    const double k_span = static_cast<double>(curve.k_values.back()) - k_lo;
    const double w_lo = *lo_it;
    const double w_span = *hi_it - *lo_it;

    std::size_t best = 0;
    double best_distance = 0.0;
    if (k_span > 0.0 && w_span > 0.0) {
        auto nx = [&](std::size_t i) { return (static_cast<double>(curve.k_values[i]) - k_lo) / k_span; };
        auto ny = [&](std::size_t i) { return (curve.wcss_values[i] - w_lo) / w_span; };
        const std::size_t last = curve.k_values.size() - 1;
        const double x0 = nx(0), y0 = ny(0), x1 = nx(last), y1 = ny(last);
        const double length = std::hypot(x1 - x0, y1 - y0);
        for (std::size_t i = 0; i <= last; ++i) {
            const double dist = std::abs((x1 - x0) * (y0 - ny(i)) - (x0 - nx(i)) * (y1 - y0)) / length;
            if (dist > best_distance) {
                best_distance = dist;
                best = i;
            }
        }
    }
    constexpr double kFlatThreshold = 1e-9;
    if (best_distance < kFlatThreshold) {
        curve.flat = true;
        curve.selected_k = curve.k_values.front();
        log_warning("elbow curve is flat; selecting k=" + std::to_string(curve.selected_k));
    } else {
        curve.selected_k = curve.k_values[best];
    }
    return curve;
}

ElbowCurve elbow_select(const Points& points, std::size_t k_min, std::size_t k_max, int restarts,
                        std::uint64_t seed, const LloydOptions& options) {
    if (k_min < 1 || k_min >= k_max || k_max > points.rows) {
        throw Error(ErrorKind::InvalidArgument, "elbow range requires 1 <= k_min < k_max <= n");
    }
    if (k_max - k_min + 1 < 3) {
        throw Error(ErrorKind::InvalidArgument, "elbow selection needs at least 3 k values");
    }
    std::vector<std::size_t> ks;
    std::vector<double> wcss;
    for (std::size_t k = k_min; k <= k_max; ++k) {
        ks.push_back(k);
        wcss.push_back(best_of_restarts(points, k, restarts, seed, options).wcss);
    }
    return select_elbow(std::move(ks), std::move(wcss));
}

}  // namespace topicforge
