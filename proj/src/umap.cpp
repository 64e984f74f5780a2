#include "topicforge/umap.hpp"

#include "topicforge/error.hpp"
#include "topicforge/log.hpp"
#include "topicforge/parallel.hpp"
#include "topicforge/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>

namespace topicforge {

Metric parse_metric(std::string_view name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "cosine") return Metric::Cosine;
    throw Error(ErrorKind::Config, "unknown metric '" + std::string(name) + "'");
}

InitMode parse_init_mode(std::string_view name) {
    if (name == "spectral") return InitMode::Spectral;
    if (name == "random") return InitMode::Random;
    throw Error(ErrorKind::Config, "unknown init mode '" + std::string(name) + "'");
}

std::string_view to_string(Metric metric) noexcept {
    return metric == Metric::Cosine ? "cosine" : "euclidean";
}

std::string_view to_string(InitMode mode) noexcept {
    return mode == InitMode::Spectral ? "spectral" : "random";
}

// ---------------------------------------------------------------------------
// k nearest neighbors

KnnGraph knn_graph(const EmbeddingMatrix& points, std::size_t k, Metric metric, int threads) {
    const std::size_t n = points.rows();
    const std::size_t dim = points.cols();
    if (k < 1 || k >= n) {
        throw Error(ErrorKind::InvalidArgument, "knn requires 1 <= k < rows (k=" + std::to_string(k) +
                                                    ", rows=" + std::to_string(n) + ")");
    }

    std::vector<double> norms;
    if (metric == Metric::Cosine) {
        norms.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (float v : points.row(i)) {
                s += static_cast<double>(v) * v;
            }
            norms[i] = std::sqrt(s);
        }
    }

    auto distance = [&](std::size_t i, std::size_t j) {
        const auto a = points.row(i);
        const auto b = points.row(j);
        if (metric == Metric::Euclidean) {
            double s = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double diff = static_cast<double>(a[c]) - b[c];
                s += diff * diff;
            }
            return std::sqrt(s);
        }
        if (norms[i] == 0.0 && norms[j] == 0.0) {
            return 0.0;
        }
        if (norms[i] == 0.0 || norms[j] == 0.0) {
            return 1.0;
        }
        double dot = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            dot += static_cast<double>(a[c]) * b[c];
        }
        return std::max(0.0, 1.0 - dot / (norms[i] * norms[j]));
    };

    KnnGraph graph;
    graph.n = n;
    graph.k = k;
    graph.indices.resize(n * k);
    graph.distances.resize(n * k);

    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::pair<double, std::uint32_t>> candidates;
        candidates.reserve(n - 1);
        for (std::size_t i = begin; i < end; ++i) {
            candidates.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) {
                    candidates.emplace_back(distance(i, j), static_cast<std::uint32_t>(j));
                }
            }
            std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k),
                              candidates.end());
            for (std::size_t r = 0; r < k; ++r) {
                graph.indices[i * k + r] = candidates[r].second;
                graph.distances[i * k + r] = static_cast<float>(candidates[r].first);
            }
        }
    });
    return graph;
}

// ---------------------------------------------------------------------------
// fuzzy simplicial set

namespace {

constexpr int kBandwidthIterations = 64;
constexpr double kBandwidthTolerance = 1e-5;
constexpr double kMinSigmaScale = 1e-3;

}  // namespace

Calibration smooth_knn_calibrate(std::span<const float> row_distances, std::size_t k) {
    const std::size_t count = std::min(k, row_distances.size());
    Calibration result;
    double mean = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
        mean += row_distances[j];
        if (result.rho == 0.0 && row_distances[j] > 0.0f) {
            result.rho = row_distances[j];
        }
    }
    mean = count > 0 ? mean / static_cast<double>(count) : 0.0;

    const double target = std::log2(static_cast<double>(k));
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    double mid = 1.0;
    for (int iter = 0; iter < kBandwidthIterations; ++iter) {
        double sum = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            const double d = static_cast<double>(row_distances[j]) - result.rho;
            sum += d > 0.0 ? std::exp(-d / mid) : 1.0;
        }
        if (std::abs(sum - target) < kBandwidthTolerance) {
            break;
        }
        if (sum > target) {
            hi = mid;
            mid = (lo + hi) / 2.0;
        } else {
            lo = mid;
            mid = std::isinf(hi) ? mid * 2.0 : (lo + hi) / 2.0;
        }
    }
    result.sigma = std::max(mid, kMinSigmaScale * mean);
    return result;
}

double membership_strength(double distance, const Calibration& calibration) {
    const double d = distance - calibration.rho;
    if (d <= 0.0) {
        return 1.0;
    }
    if (calibration.sigma <= 0.0) {
        return 0.0;
    }
    return std::exp(-d / calibration.sigma);
}

double FuzzyGraph::weight(std::size_t i, std::size_t j) const {
    const auto cols = neighbors(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(j));
    if (it == cols.end() || *it != j) {
        return 0.0;
    }
    return weights[row_offsets[i] + static_cast<std::size_t>(it - cols.begin())];
}

FuzzyGraph symmetrize(std::size_t n, std::vector<WeightedEdge> directed) {
    std::erase_if(directed, [](const WeightedEdge& e) { return e.from == e.to || e.weight <= 0.0; });
    for (const auto& e : directed) {
        if (e.from >= n || e.to >= n) {
            throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
        }
    }
    auto key_less = [](const WeightedEdge& x, const WeightedEdge& y) {
        return std::tie(x.from, x.to) < std::tie(y.from, y.to);
    };
    std::sort(directed.begin(), directed.end(), key_less);

    auto directed_weight = [&](std::uint32_t from, std::uint32_t to) {
        WeightedEdge probe{from, to, 0.0};
        auto it = std::lower_bound(directed.begin(), directed.end(), probe, key_less);
        return (it != directed.end() && it->from == from && it->to == to) ? it->weight : 0.0;
    };

    // Collect both orientations of every pair, then dedupe.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(directed.size() * 2);
    for (const auto& e : directed) {
        pairs.emplace_back(e.from, e.to);
        pairs.emplace_back(e.to, e.from);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    FuzzyGraph graph;
    graph.n = n;
    graph.row_offsets.assign(n + 1, 0);
    for (const auto& [i, j] : pairs) {
        const double a = directed_weight(i, j);
        const double at = directed_weight(j, i);
        const double w = a + at - a * at;
        if (w > 0.0) {
            graph.columns.push_back(j);
            graph.weights.push_back(std::min(w, 1.0));
            ++graph.row_offsets[i + 1];
        }
    }
    std::partial_sum(graph.row_offsets.begin(), graph.row_offsets.end(), graph.row_offsets.begin());
    return graph;
}

FuzzyGraph fuzzy_simplicial_set(const KnnGraph& knn) {
    std::vector<WeightedEdge> directed;
    directed.reserve(knn.n * knn.k);
    for (std::size_t i = 0; i < knn.n; ++i) {
        const auto dists = knn.row_distances(i);
        const auto nbrs = knn.neighbors(i);
        const auto cal = smooth_knn_calibrate(dists, knn.k);
        for (std::size_t r = 0; r < knn.k; ++r) {
            directed.push_back({static_cast<std::uint32_t>(i), nbrs[r], membership_strength(dists[r], cal)});
        }
    }
    return symmetrize(knn.n, std::move(directed));
}

// ---------------------------------------------------------------------------
// kernel curve

double CurveParams::kernel(double distance) const {
    return 1.0 / (1.0 + a * std::pow(distance, 2.0 * b));
}

double curve_target(double distance, double min_dist, double spread) {
    return distance <= min_dist ? 1.0 : std::exp(-(distance - min_dist) / spread);
}

CurveParams fit_curve_params(double min_dist, double spread) {
    if (!(spread > 0.0) || !(min_dist >= 0.0) || !(min_dist < 3.0 * spread)) {
        throw Error(ErrorKind::InvalidArgument, "curve fit needs spread > 0 and 0 <= min_dist < 3*spread");
    }
    std::vector<double> xs(kCurveFitSamples);
    std::vector<double> ys(kCurveFitSamples);
    for (std::size_t i = 0; i < kCurveFitSamples; ++i) {
        xs[i] = 3.0 * spread * static_cast<double>(i) / static_cast<double>(kCurveFitSamples - 1);
        ys[i] = curve_target(xs[i], min_dist, spread);
    }

    auto cost_at = [&](double a, double b) {
        double c = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = 1.0 / (1.0 + a * std::pow(xs[i], 2.0 * b)) - ys[i];
            c += r * r;
        }
        return c;
    };

    double a = 1.0;
    double b = 1.0;
    double lambda = 1e-3;
    double cost = cost_at(a, b);
    constexpr int kMaxIterations = 1000;
    bool converged = false;

    for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
        // Normal equations of the 2-parameter problem.
        double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double x = xs[i];
            const double p = x > 0.0 ? std::pow(x, 2.0 * b) : 0.0;
            const double denom = 1.0 + a * p;
            const double f = 1.0 / denom;
            const double r = f - ys[i];
            const double da = -p / (denom * denom);
            const double db = x > 0.0 ? -a * p * 2.0 * std::log(x) / (denom * denom) : 0.0;
            jaa += da * da;
            jab += da * db;
            jbb += db * db;
            ga += da * r;
            gb += db * r;
        }
        if (std::hypot(ga, gb) < 1e-14) {
            converged = true;
            break;
        }
        bool stepped = false;
        while (lambda < 1e12) {
            const double m00 = jaa * (1.0 + lambda);
            const double m11 = jbb * (1.0 + lambda);
            const double det = m00 * m11 - jab * jab;
            if (det == 0.0 || !std::isfinite(det)) {
                lambda *= 10.0;
                continue;
            }
            const double step_a = (-ga * m11 + gb * jab) / det;
            const double step_b = (-gb * m00 + ga * jab) / det;
            const double na = a + step_a;
            const double nb = b + step_b;
            const double ncost = (na > 0.0 && nb > 0.0) ? cost_at(na, nb) : std::numeric_limits<double>::infinity();
            if (ncost <= cost) {
                const double rel_change = (cost - ncost) / std::max(cost, 1e-300);
                const double step_size = std::hypot(step_a, step_b);
                a = na;
                b = nb;
                cost = ncost;
                lambda = std::max(lambda / 10.0, 1e-12);
                stepped = true;
                if (rel_change < 1e-14 && step_size < 1e-10 * (1.0 + std::hypot(a, b))) {
                    converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }
        if (!stepped) {
            // No descent direction at any damping: a stationary point.
            converged = true;
        }
    }
    if (!converged || !(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorKind::Numeric, "kernel curve fit did not converge");
    }
    return CurveParams{a, b, min_dist, spread};
}

// ---------------------------------------------------------------------------
// initialization

namespace {

LowDimLayout random_layout(std::size_t n, std::size_t n_components, std::uint64_t seed) {
    Rng rng(seed);
    LowDimLayout layout{n, n_components, std::vector<float>(n * n_components)};
    for (auto& v : layout.data) {
        v = static_cast<float>(rng.uniform(-kLayoutInitBound, kLayoutInitBound));
    }
    return layout;
}

std::size_t count_components(const FuzzyGraph& graph) {
    std::vector<bool> seen(graph.n, false);
    std::size_t components = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < graph.n; ++start) {
        if (seen[start]) continue;
        ++components;
        seen[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto u : graph.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = true;
                    stack.push_back(u);
                }
            }
        }
    }
    return components;
}

std::optional<LowDimLayout> spectral_layout(const FuzzyGraph& graph, std::size_t n_components,
                                            std::string& reason) {
    const std::size_t n = graph.n;
    if (n < n_components + 2) {
        reason = "graph has too few nodes for a spectral embedding";
        return std::nullopt;
    }
    if (n > kMaxDenseSpectralNodes) {
        reason = "graph exceeds the dense spectral solver limit of " + std::to_string(kMaxDenseSpectralNodes) +
                 " nodes";
        return std::nullopt;
    }
    if (const auto comps = count_components(graph); comps > 1) {
        reason = "graph has " + std::to_string(comps) + " connected components";
        return std::nullopt;
    }

    Eigen::VectorXd inv_sqrt_degree(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = graph.neighbor_weights(i);
        const double degree = std::accumulate(w.begin(), w.end(), 0.0);
        if (degree <= 0.0) {
            reason = "isolated node";
            return std::nullopt;
        }
        inv_sqrt_degree[static_cast<Eigen::Index>(i)] = 1.0 / std::sqrt(degree);
    }
    Eigen::MatrixXd laplacian = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const auto cols = graph.neighbors(i);
        const auto w = graph.neighbor_weights(i);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(cols[e]);
            laplacian(r, c) -= w[e] * inv_sqrt_degree[r] * inv_sqrt_degree[c];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
    if (solver.info() != Eigen::Success) {
        reason = "eigen solver failed";
        return std::nullopt;
    }
    const auto& values = solver.eigenvalues();
    if (!(values[1] > 1e-10)) {
        reason = "Laplacian has a repeated zero eigenvalue";
        return std::nullopt;
    }
    const auto vectors = solver.eigenvectors().middleCols(1, static_cast<Eigen::Index>(n_components));
    const double max_abs = vectors.cwiseAbs().maxCoeff();
    if (!(max_abs > 0.0) || !std::isfinite(max_abs)) {
        reason = "degenerate eigenvectors";
        return std::nullopt;
    }
    const double scale = kLayoutInitBound / max_abs;
    LowDimLayout layout{n, n_components, std::vector<float>(n * n_components)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < n_components; ++c) {
            const double v = vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) * scale;
            layout.data[i * n_components + c] =
                static_cast<float>(std::clamp(v, -kLayoutInitBound, kLayoutInitBound));
        }
    }
    return layout;
}

}  // namespace

InitializedLayout initialize_layout(const FuzzyGraph& graph, std::size_t n_components, std::uint64_t seed,
                                    InitMode mode) {
    if (graph.n == 0) {
        throw Error(ErrorKind::InvalidArgument, "cannot initialize a layout for an empty graph");
    }
    if (n_components == 0) {
        throw Error(ErrorKind::InvalidArgument, "n_components must be positive");
    }
    if (mode == InitMode::Spectral) {
        std::string reason;
        if (auto layout = spectral_layout(graph, n_components, reason)) {
            return {std::move(*layout), InitMode::Spectral};
        }
        log_warning("spectral initialization failed (" + reason + "); using random initialization");
    }
    return {random_layout(graph.n, n_components, seed), InitMode::Random};
}

// ---------------------------------------------------------------------------
// optimization

std::size_t edge_sample_count(double weight, double max_weight, int epochs) {
    if (weight <= 0.0 || max_weight <= 0.0 || epochs <= 0) {
        return 0;
    }
    const double scaled = static_cast<double>(epochs) * (weight / max_weight);
    return static_cast<std::size_t>(std::ceil(scaled - 1e-12));
}

namespace {

double clip(double g) { return std::clamp(g, -kGradientClip, kGradientClip); }

template <bool Concurrent>
struct Coordinates {
    double* data;

    double load(std::size_t idx) const {
        if constexpr (Concurrent) {
            return std::atomic_ref<double>(data[idx]).load(std::memory_order_relaxed);
        } else {
            return data[idx];
        }
    }
    void add(std::size_t idx, double delta) const {
        if constexpr (Concurrent) {
            std::atomic_ref<double> ref(data[idx]);
            ref.store(ref.load(std::memory_order_relaxed) + delta, std::memory_order_relaxed);
        } else {
            data[idx] += delta;
        }
    }
};

struct EdgeSchedule {
    std::vector<std::uint32_t> head;
    std::vector<std::uint32_t> tail;
    std::vector<std::uint64_t> total;  // updates owed over all epochs
    std::vector<std::uint64_t> done;
};

bool is_neighbor(const FuzzyGraph& graph, std::size_t i, std::size_t j) {
    const auto cols = graph.neighbors(i);
    return std::binary_search(cols.begin(), cols.end(), static_cast<std::uint32_t>(j));
}

template <bool Concurrent>
void update_edge(const FuzzyGraph& graph, const Coordinates<Concurrent>& y, std::size_t dim, std::size_t i,
                 std::size_t j, const CurveParams& params, double alpha, int neg_samples, Rng& rng,
                 std::vector<double>& current, std::vector<double>& other) {
    const std::size_t n = graph.n;
    for (std::size_t d = 0; d < dim; ++d) {
        current[d] = y.load(i * dim + d);
        other[d] = y.load(j * dim + d);
    }
    double dist_sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
        const double diff = current[d] - other[d];
        dist_sq += diff * diff;
    }
    if (dist_sq > 0.0) {
        const double coeff = -2.0 * params.a * params.b * std::pow(dist_sq, params.b - 1.0) /
                             (params.a * std::pow(dist_sq, params.b) + 1.0);
        for (std::size_t d = 0; d < dim; ++d) {
            const double g = clip(coeff * (current[d] - other[d])) * alpha;
            current[d] += g;
            y.add(i * dim + d, g);
            y.add(j * dim + d, -g);
        }
    }

    constexpr int kMaxDrawAttempts = 8;
    for (int s = 0; s < neg_samples; ++s) {
        std::size_t k = n;
        for (int attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
            const auto draw = static_cast<std::size_t>(rng.below(n));
            if (draw != i && !is_neighbor(graph, i, draw)) {
                k = draw;
                break;
            }
        }
        if (k == n) {
            continue;
        }
        double neg_sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            other[d] = y.load(k * dim + d);
            const double diff = current[d] - other[d];
            neg_sq += diff * diff;
        }
        const double coeff =
            neg_sq > 0.0 ? 2.0 * params.b / ((1e-3 + neg_sq) * (params.a * std::pow(neg_sq, params.b) + 1.0)) : 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double g = (coeff > 0.0 ? clip(coeff * (current[d] - other[d])) : kGradientClip) * alpha;
            current[d] += g;
            y.add(i * dim + d, g);
        }
    }
}

}  // namespace

LowDimLayout optimize_layout(const FuzzyGraph& graph, LowDimLayout layout, const CurveParams& params,
                             const OptimizeOptions& options) {
    if (options.epochs < 1) {
        throw Error(ErrorKind::InvalidArgument, "epochs must be >= 1");
    }
    if (options.neg_samples < 1) {
        throw Error(ErrorKind::InvalidArgument, "neg_samples must be >= 1");
    }
    if (layout.rows != graph.n) {
        throw Error(ErrorKind::DimensionMismatch, "layout rows do not match graph nodes");
    }
    const std::size_t dim = layout.cols;

    EdgeSchedule schedule;
    double max_weight = 0.0;
    for (double w : graph.weights) {
        max_weight = std::max(max_weight, w);
    }
    for (std::size_t i = 0; i < graph.n; ++i) {
        const auto cols = graph.neighbors(i);
        const auto w = graph.neighbor_weights(i);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            const auto count = edge_sample_count(w[e], max_weight, options.epochs);
            if (count == 0) continue;
            schedule.head.push_back(static_cast<std::uint32_t>(i));
            schedule.tail.push_back(cols[e]);
            schedule.total.push_back(count);
        }
    }
    schedule.done.assign(schedule.head.size(), 0);
    if (schedule.head.empty()) {
        return layout;
    }

    std::vector<double> y(layout.data.begin(), layout.data.end());
    const auto epochs = static_cast<std::uint64_t>(options.epochs);

    // Edge e is due at epoch n when done_e * epochs <= n * total_e, which
    // spreads exactly total_e updates evenly across the run.
    auto due = [&](std::size_t e, std::uint64_t epoch) {
        return schedule.done[e] < schedule.total[e] && schedule.done[e] * epochs <= epoch * schedule.total[e];
    };

    if (options.threads <= 1) {
        Rng rng(options.seed);
        Coordinates<false> coords{y.data()};
        std::vector<double> current(dim), other(dim);
        for (std::uint64_t epoch = 0; epoch < epochs; ++epoch) {
            const double alpha =
                options.learning_rate * (1.0 - static_cast<double>(epoch) / static_cast<double>(epochs));
            for (std::size_t e = 0; e < schedule.head.size(); ++e) {
                if (!due(e, epoch)) continue;
                update_edge(graph, coords, dim, schedule.head[e], schedule.tail[e], params, alpha,
                            options.neg_samples, rng, current, other);
                ++schedule.done[e];
            }
        }
    } else {
        Coordinates<true> coords{y.data()};
        for (std::uint64_t epoch = 0; epoch < epochs; ++epoch) {
            const double alpha =
                options.learning_rate * (1.0 - static_cast<double>(epoch) / static_cast<double>(epochs));
            parallel_for(schedule.head.size(), options.threads, [&](std::size_t begin, std::size_t end) {
                Rng rng(options.seed + epoch * 0x9E3779B97F4A7C15ull + begin);
                std::vector<double> current(dim), other(dim);
                for (std::size_t e = begin; e < end; ++e) {
                    if (!due(e, epoch)) continue;
                    update_edge(graph, coords, dim, schedule.head[e], schedule.tail[e], params, alpha,
                                options.neg_samples, rng, current, other);
                    ++schedule.done[e];
                }
            });
        }
    }

    for (std::size_t idx = 0; idx < y.size(); ++idx) {
        if (!std::isfinite(y[idx])) {
            throw Error(ErrorKind::Numeric, "layout optimization produced a non-finite coordinate");
        }
        layout.data[idx] = static_cast<float>(y[idx]);
    }
    return layout;
}

LowDimLayout reduce(const EmbeddingMatrix& points, const UmapConfig& config) {
    if (config.n_components < 1) {
        throw Error(ErrorKind::InvalidArgument, "n_components must be >= 1");
    }
    const auto knn = knn_graph(points, config.n_neighbors, config.metric, config.threads);
    const auto graph = fuzzy_simplicial_set(knn);
    const auto params = fit_curve_params(config.min_dist, config.spread);
    auto init = initialize_layout(graph, config.n_components, config.seed, config.init);
    OptimizeOptions opts;
    opts.epochs = config.epochs;
    opts.neg_samples = config.neg_samples;
    opts.learning_rate = config.learning_rate;
    opts.seed = config.seed;
    opts.threads = config.threads;
    return optimize_layout(graph, std::move(init.layout), params, opts);
}

}  // namespace topicforge
