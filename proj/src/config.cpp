#include "topicforge/config.hpp"

#include "topicforge/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace topicforge {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw Error(ErrorKind::Config, fmt::format("{}: cannot parse '{}' as {}", key, value, expected));
}

template <typename T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        bad_value(key, value, "an integer");
    }
    return out;
}

/// Non-negative count; a leading '-' is a range error rather than a parse error.
template <typename T>
T parse_count(std::string_view key, std::string_view value) {
    if (!value.empty() && value.front() == '-') {
        throw Error(ErrorKind::Config, fmt::format("{} must be non-negative (got {})", key, value));
    }
    return parse_integer<T>(key, value);
}

double parse_double(std::string_view key, std::string_view value) {
    // from_chars for double is available in libstdc++ 11.
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        bad_value(key, value, "a number");
    }
    return out;
}

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir) {
    std::filesystem::path p{std::string(value)};
    if (value.empty() || p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

bool has_extension(const std::filesystem::path& p, std::string_view ext) { return p.extension() == ext; }

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view value, const std::filesystem::path& base_dir) {
    if (key == "texts") {
        texts = resolve(value, base_dir);
        if (has_extension(texts, ".csv")) texts_format = TextFormat::Csv;
    } else if (key == "texts_format") {
        if (value == "lines") texts_format = TextFormat::Lines;
        else if (value == "csv") texts_format = TextFormat::Csv;
        else bad_value(key, value, "'lines' or 'csv'");
    } else if (key == "csv_column") {
        csv_column = value;
    } else if (key == "stopwords") {
        stopwords = (value.starts_with("builtin:") || value == "none") ? std::string(value)
                                                                        : resolve(value, base_dir).string();
    } else if (key == "min_token_length") {
        min_token_length = parse_count<std::size_t>(key, value);
    } else if (key == "embeddings") {
        embeddings = resolve(value, base_dir);
        if (has_extension(embeddings, ".csv")) embeddings_format = EmbeddingFormat::Csv;
    } else if (key == "embeddings_format") {
        if (value == "tfemb") embeddings_format = EmbeddingFormat::Tfemb;
        else if (value == "csv") embeddings_format = EmbeddingFormat::Csv;
        else bad_value(key, value, "'tfemb' or 'csv'");
    } else if (key == "embedding_service") {
        embedding_service = value;
    } else if (key == "service_batch_size") {
        service_batch_size = parse_count<std::size_t>(key, value);
    } else if (key == "service_timeout") {
        service_timeout = parse_double(key, value);
    } else if (key == "service_retries") {
        service_retries = parse_integer<int>(key, value);
    } else if (key == "service_concurrency") {
        service_concurrency = parse_integer<int>(key, value);
    } else if (key == "umap_neighbors") {
        umap.n_neighbors = parse_count<std::size_t>(key, value);
    } else if (key == "umap_components") {
        umap.n_components = parse_count<std::size_t>(key, value);
    } else if (key == "umap_min_dist") {
        umap.min_dist = parse_double(key, value);
    } else if (key == "umap_spread") {
        umap.spread = parse_double(key, value);
    } else if (key == "umap_epochs") {
        umap.epochs = parse_integer<int>(key, value);
    } else if (key == "umap_neg_samples") {
        umap.neg_samples = parse_integer<int>(key, value);
    } else if (key == "umap_learning_rate") {
        umap.learning_rate = parse_double(key, value);
    } else if (key == "umap_metric") {
        umap.metric = parse_metric(value);
    } else if (key == "umap_init") {
        umap.init = parse_init_mode(value);
    } else if (key == "umap_seed") {
        umap.seed = parse_count<std::uint64_t>(key, value);
    } else if (key == "kmeans_k") {
        if (value == "auto") kmeans_k = 0;
        else kmeans_k = parse_count<std::size_t>(key, value);
    } else if (key == "kmeans_k_min") {
        kmeans_k_min = parse_count<std::size_t>(key, value);
    } else if (key == "kmeans_k_max") {
        kmeans_k_max = parse_count<std::size_t>(key, value);
    } else if (key == "kmeans_restarts") {
        kmeans_restarts = parse_integer<int>(key, value);
    } else if (key == "kmeans_seed") {
        kmeans_seed = parse_count<std::uint64_t>(key, value);
    } else if (key == "kmeans_max_iter") {
        kmeans_max_iter = parse_integer<int>(key, value);
    } else if (key == "kmeans_tol") {
        kmeans_tol = parse_double(key, value);
    } else if (key == "top_n") {
        top_n = parse_count<std::size_t>(key, value);
    } else if (key == "tfidf_tf") {
        tfidf_tf = parse_tf_mode(value);
    } else if (key == "tfidf_idf") {
        tfidf_idf = parse_idf_mode(value);
    } else if (key == "coherence_epsilon") {
        coherence_epsilon = parse_double(key, value);
    } else if (key == "output_dir") {
        output_dir = resolve(value, base_dir);
    } else if (key == "threads") {
        threads = parse_integer<int>(key, value);
    } else {
        throw Error(ErrorKind::Config, fmt::format("unknown config key '{}'", key));
    }
}

void PipelineConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::Config, msg); };
    if (texts.empty()) fail("missing required key 'texts'");
    const bool has_file = !embeddings.empty();
    const bool has_service = !embedding_service.empty();
    if (has_file == has_service) {
        fail("exactly one embedding source ('embeddings' or 'embedding_service') must be configured");
    }
    if (service_batch_size < 1) fail("service_batch_size must be >= 1");
    if (!(service_timeout > 0.0)) fail("service_timeout must be > 0");
    if (service_retries < 0) fail("service_retries must be >= 0");
    if (service_concurrency < 1) fail("service_concurrency must be >= 1");
    if (umap.n_neighbors < 1) fail("umap_neighbors must be >= 1");
    if (umap.n_components < 2) fail("umap_components must be >= 2");
    if (!(umap.spread > 0.0)) fail("umap_spread must be > 0");
    if (!(umap.min_dist >= 0.0) || !(umap.min_dist < 3.0 * umap.spread)) fail("umap_min_dist must be in [0, 3*spread)");
    if (umap.epochs < 1) fail("umap_epochs must be >= 1");
    if (umap.neg_samples < 1) fail("umap_neg_samples must be >= 1");
    if (!(umap.learning_rate > 0.0)) fail("umap_learning_rate must be > 0");
    if (kmeans_k == 0) {
        if (kmeans_k_min < 1) fail("kmeans_k_min must be >= 1");
        if (kmeans_k_min >= kmeans_k_max) fail("kmeans_k_min must be < kmeans_k_max");
        if (kmeans_k_max - kmeans_k_min < 2) fail("the elbow scan needs at least 3 values of k");
    }
    if (kmeans_restarts < 1) fail("kmeans_restarts must be >= 1");
    if (kmeans_max_iter < 1) fail("kmeans_max_iter must be >= 1");
    if (!(kmeans_tol >= 0.0)) fail("kmeans_tol must be >= 0");
    if (top_n < 2) fail("top_n must be >= 2");
    if (!(coherence_epsilon > 0.0)) fail("coherence_epsilon must be > 0");
    if (threads < 1) fail("threads must be >= 1");
    if (output_dir.empty()) fail("output_dir must not be empty");
}

std::vector<std::pair<std::string, std::string>> PipelineConfig::snapshot() const {
    auto num = [](double v) { return fmt::format("{}", v); };
    return {
        {"texts", texts.string()},
        {"texts_format", texts_format == TextFormat::Csv ? "csv" : "lines"},
        {"csv_column", csv_column},
        {"stopwords", stopwords},
        {"min_token_length", std::to_string(min_token_length)},
        {"embeddings", embeddings.string()},
        {"embeddings_format", embeddings_format == EmbeddingFormat::Csv ? "csv" : "tfemb"},
        {"embedding_service", embedding_service},
        {"service_batch_size", std::to_string(service_batch_size)},
        {"service_timeout", num(service_timeout)},
        {"service_retries", std::to_string(service_retries)},
        {"service_concurrency", std::to_string(service_concurrency)},
        {"umap_neighbors", std::to_string(umap.n_neighbors)},
        {"umap_components", std::to_string(umap.n_components)},
        {"umap_min_dist", num(umap.min_dist)},
        {"umap_spread", num(umap.spread)},
        {"umap_epochs", std::to_string(umap.epochs)},
        {"umap_neg_samples", std::to_string(umap.neg_samples)},
        {"umap_learning_rate", num(umap.learning_rate)},
        {"umap_metric", std::string(to_string(umap.metric))},
        {"umap_init", std::string(to_string(umap.init))},
        {"umap_seed", std::to_string(umap.seed)},
        {"kmeans_k", kmeans_k == 0 ? "auto" : std::to_string(kmeans_k)},
        {"kmeans_k_min", std::to_string(kmeans_k_min)},
        {"kmeans_k_max", std::to_string(kmeans_k_max)},
        {"kmeans_restarts", std::to_string(kmeans_restarts)},
        {"kmeans_seed", std::to_string(kmeans_seed)},
        {"kmeans_max_iter", std::to_string(kmeans_max_iter)},
        {"kmeans_tol", num(kmeans_tol)},
        {"top_n", std::to_string(top_n)},
        {"tfidf_tf", std::string(to_string(tfidf_tf))},
        {"tfidf_idf", std::string(to_string(tfidf_idf))},
        {"coherence_epsilon", num(coherence_epsilon)},
        {"output_dir", output_dir.string()},
        {"threads", std::to_string(threads)},
    };
}

PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    PipelineConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        auto line = trim(text.substr(start, end - start));
        start = end + 1;
        if (line.empty() || line.front() == '#') continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::Config, fmt::format("line {}: expected 'key = value'", line_no));
        }
        const auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw Error(ErrorKind::Config, fmt::format("line {}: empty key", line_no));
        }
        if (!seen.emplace(key).second) {
            throw Error(ErrorKind::Config, fmt::format("line {}: duplicate key '{}'", line_no, key));
        }
        try {
            config.set(key, value, base_dir);
        } catch (const Error& e) {
            throw Error(ErrorKind::Config, fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    // The default output directory sits next to the config file too.
    if (!seen.contains("output_dir")) config.output_dir = resolve("out", base_dir);
    return config;
}

PipelineConfig validate_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Config, "cannot open config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto config = parse_config(buffer.str(), path.parent_path());
    config.validate();
    return config;
}

}  // namespace topicforge
