#pragma once

#include "topicforge/embedding.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace topicforge {

enum class Metric { Euclidean, Cosine };
enum class InitMode { Spectral, Random };

Metric parse_metric(std::string_view name);
InitMode parse_init_mode(std::string_view name);
std::string_view to_string(Metric metric) noexcept;
std::string_view to_string(InitMode mode) noexcept;

/// Exact k nearest neighbors, self excluded. Row i occupies
/// [i*k, (i+1)*k) in both arrays, distances ascending, ties by lower index.
struct KnnGraph {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> indices;
    std::vector<float> distances;

    std::span<const std::uint32_t> neighbors(std::size_t i) const { return {indices.data() + i * k, k}; }
    std::span<const float> row_distances(std::size_t i) const { return {distances.data() + i * k, k}; }
};

/// Brute force O(n^2 d). Throws InvalidArgument unless 1 <= k < rows.
KnnGraph knn_graph(const EmbeddingMatrix& points, std::size_t k, Metric metric, int threads = 1);

struct Calibration {
    double rho = 0.0;
    double sigma = 0.0;
};

/// Per-point bandwidth: rho is the smallest positive distance and sigma is
/// bisected until sum_j exp(-max(0, d_j - rho) / sigma) hits log2(k), then
/// floored at 1e-3 times the mean row distance.
Calibration smooth_knn_calibrate(std::span<const float> row_distances, std::size_t k);

/// Membership strength exp(-max(0, d - rho) / sigma); exactly 1 when d <= rho.
double membership_strength(double distance, const Calibration& calibration);

struct WeightedEdge {
    std::uint32_t from;
    std::uint32_t to;
    double weight;
};

/// Sparse symmetric graph in CSR form. Every undirected edge is stored in
/// both rows; columns within a row are ascending.
struct FuzzyGraph {
    std::size_t n = 0;
    std::vector<std::size_t> row_offsets;  // n + 1 entries
    std::vector<std::uint32_t> columns;
    std::vector<double> weights;

    std::size_t edge_count() const noexcept { return columns.size(); }
    std::span<const std::uint32_t> neighbors(std::size_t i) const {
        return {columns.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
    }
    std::span<const double> neighbor_weights(std::size_t i) const {
        return {weights.data() + row_offsets[i], row_offsets[i + 1] - row_offsets[i]};
    }
    /// 0 when no edge.
    double weight(std::size_t i, std::size_t j) const;
};

/// Probabilistic union of directed memberships: b = a + a^T - a.*a^T.
/// Self-loops and zero-weight results are dropped. Duplicate directed
/// entries are not allowed.
FuzzyGraph symmetrize(std::size_t n, std::vector<WeightedEdge> directed);

/// Calibrates every row of the kNN graph and symmetrizes the memberships.
FuzzyGraph fuzzy_simplicial_set(const KnnGraph& knn);

/// Low-dimensional similarity kernel 1 / (1 + a d^(2b)).
struct CurveParams {
    double a = 0.0;
    double b = 0.0;
    double min_dist = 0.0;
    double spread = 1.0;

    double kernel(double distance) const;
};

/// Number of evenly spaced samples over [0, 3*spread] used by the fit.
inline constexpr std::size_t kCurveFitSamples = 300;

/// Target membership psi(d): 1 up to min_dist, then exp(-(d - min_dist) / spread).
double curve_target(double distance, double min_dist, double spread);

/// Levenberg-Marquardt least squares of the kernel against psi on the
/// fixed grid. Throws InvalidArgument for bad inputs and Numeric when the
/// iteration does not converge.
CurveParams fit_curve_params(double min_dist, double spread);

struct LowDimLayout {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> data;

    float operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
    EmbeddingMatrix to_matrix() const { return EmbeddingMatrix(rows, cols, data); }
    friend bool operator==(const LowDimLayout&, const LowDimLayout&) = default;
};

inline constexpr double kLayoutInitBound = 10.0;

struct InitializedLayout {
    LowDimLayout layout;
    /// Mode actually used; Random when spectral initialization fell back.
    InitMode used = InitMode::Random;
};

/// Largest graph handled by the dense spectral solver; bigger graphs fall
/// back to random initialization.
inline constexpr std::size_t kMaxDenseSpectralNodes = 4096;

/// Spectral mode takes the n_components eigenvectors of the symmetric
/// normalized Laplacian that follow the trivial one, scaled so the largest
/// absolute coordinate is 10. Disconnected or otherwise degenerate graphs
/// fall back to uniform [-10, 10] draws with a logged warning.
InitializedLayout initialize_layout(const FuzzyGraph& graph, std::size_t n_components, std::uint64_t seed,
                                    InitMode mode);

struct OptimizeOptions {
    int epochs = 200;
    int neg_samples = 5;
    double learning_rate = 1.0;
    std::uint64_t seed = 42;
    /// 1 gives the deterministic schedule; more threads update edges
    /// concurrently without locks.
    int threads = 1;
};

inline constexpr double kGradientClip = 4.0;

/// Number of times an edge of weight w is sampled: ceil(epochs * w / w_max).
std::size_t edge_sample_count(double weight, double max_weight, int epochs);

/// SGD on the fuzzy cross-entropy between `graph` and the layout's kernel
/// similarities.
LowDimLayout optimize_layout(const FuzzyGraph& graph, LowDimLayout layout, const CurveParams& params,
                             const OptimizeOptions& options);

struct UmapConfig {
    std::size_t n_neighbors = 15;
    std::size_t n_components = 2;
    double min_dist = 0.1;
    double spread = 1.0;
    int epochs = 200;
    int neg_samples = 5;
    double learning_rate = 1.0;
    Metric metric = Metric::Cosine;
    InitMode init = InitMode::Spectral;
    std::uint64_t seed = 42;
    int threads = 1;
};

/// Builds the fuzzy neighbor graph and optimizes a layout for it.
LowDimLayout reduce(const EmbeddingMatrix& points, const UmapConfig& config);

}  // namespace topicforge
