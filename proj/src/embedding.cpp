#include "topicforge/embedding.hpp"

#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <future>
#include <optional>

namespace topicforge {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_u32(unsigned char* out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFFu);
    }
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0) {
        throw Error(ErrorKind::EmptyInput, "embedding matrix has zero rows");
    }
    if (cols_ == 0) {
        throw Error(ErrorKind::EmptyInput, "embedding matrix has zero columns");
    }
    if (data_.size() != rows_ * cols_) {
        throw Error(ErrorKind::Validation, "embedding payload size does not match rows*cols");
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            throw Error(ErrorKind::Validation, "non-finite embedding value at row " +
                                                   std::to_string(i / cols_) + ", column " +
                                                   std::to_string(i % cols_));
        }
    }
}

std::vector<unsigned char> encode_tfemb(const EmbeddingMatrix& matrix) {
    if (matrix.rows() > UINT32_MAX || matrix.cols() > UINT32_MAX) {
        throw Error(ErrorKind::InvalidArgument, "matrix too large for TFEMB1");
    }
    std::vector<unsigned char> out(kTfembHeaderBytes + matrix.data().size() * 4);
    std::memcpy(out.data(), kTfembMagic, 8);
    put_u32(out.data() + 8, static_cast<std::uint32_t>(matrix.rows()));
    put_u32(out.data() + 12, static_cast<std::uint32_t>(matrix.cols()));
    unsigned char* cursor = out.data() + kTfembHeaderBytes;
    for (float v : matrix.data()) {
        put_u32(cursor, std::bit_cast<std::uint32_t>(v));
        cursor += 4;
    }
    return out;
}

EmbeddingMatrix decode_tfemb(std::span<const unsigned char> bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kTfembMagic, 8) != 0) {
        throw Error(ErrorKind::Format, "bad TFEMB1 magic");
    }
    if (bytes.size() < kTfembHeaderBytes) {
        throw Error(ErrorKind::Corruption, "truncated TFEMB1 header");
    }
    const std::uint64_t rows = get_u32(bytes.data() + 8);
    const std::uint64_t cols = get_u32(bytes.data() + 12);
    if (rows == 0) {
        throw Error(ErrorKind::EmptyInput, "TFEMB1 file declares zero rows");
    }
    if (cols == 0) {
        throw Error(ErrorKind::EmptyInput, "TFEMB1 file declares zero columns");
    }
    const std::uint64_t count = rows * cols;
    if (bytes.size() - kTfembHeaderBytes < count * 4) {
        throw Error(ErrorKind::Corruption, "truncated TFEMB1 payload: expected " +
                                               std::to_string(count * 4) + " bytes, found " +
                                               std::to_string(bytes.size() - kTfembHeaderBytes));
    }
    if (bytes.size() - kTfembHeaderBytes > count * 4) {
        throw Error(ErrorKind::Corruption, "trailing bytes after TFEMB1 payload");
    }
    std::vector<float> data(count);
    const unsigned char* p = bytes.data() + kTfembHeaderBytes;
    for (std::size_t i = 0; i < count; ++i, p += 4) {
        data[i] = std::bit_cast<float>(get_u32(p));
    }
    return EmbeddingMatrix(rows, cols, std::move(data));
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_tfemb(bytes);
}

void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path) {
    const auto bytes = encode_tfemb(matrix);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::Io, "cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorKind::Io, "write failed for " + path.string());
    }
}

EmbeddingMatrix load_embeddings_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::vector<float> data;
    for (const auto& row : parse_csv(content)) {
        if (row.size() == 1 && row[0].empty()) {
            continue;
        }
        if (rows == 0) {
            cols = row.size();
        } else if (row.size() != cols) {
            throw Error(ErrorKind::Format, "ragged embedding CSV at row " + std::to_string(rows));
        }
        for (const auto& field : row) {
            float v = 0.0f;
            const char* first = field.data();
            const char* last = field.data() + field.size();
            while (first < last && *first == ' ') {
                ++first;
            }
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last) {
                throw Error(ErrorKind::Format, "bad number '" + field + "' in " + path.string());
            }
            data.push_back(v);
        }
        ++rows;
    }
    return EmbeddingMatrix(rows, cols, std::move(data));
}

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http") {
        throw Error(ErrorKind::InvalidArgument, "embedding endpoint must be an http:// URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        return {url, "/"};
    }
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::vector<std::vector<float>> fetch_batch(const Endpoint& endpoint, std::span<const std::string> texts,
                                            const FetchOptions& options) {
    nlohmann::json body;
    body["texts"] = std::vector<std::string>(texts.begin(), texts.end());
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= options.retries; ++attempt) {
        httplib::Client client(endpoint.origin);
        const auto timeout_us = static_cast<long>(options.timeout_seconds * 1e6);
        client.set_connection_timeout(0, timeout_us);
        client.set_read_timeout(0, timeout_us);
        client.set_write_timeout(0, timeout_us);
        auto res = client.Post(endpoint.path, payload, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "status " + std::to_string(res->status);
            continue;
        }
        nlohmann::json reply;
        try {
            reply = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Format, std::string("embedding service returned invalid JSON: ") + e.what());
        }
        if (!reply.contains("embeddings") || !reply["embeddings"].is_array()) {
            throw Error(ErrorKind::Format, "embedding service reply lacks an 'embeddings' array");
        }
        std::vector<std::vector<float>> rows;
        try {
            rows = reply["embeddings"].get<std::vector<std::vector<float>>>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::Format, std::string("malformed embeddings array: ") + e.what());
        }
        if (rows.size() != texts.size()) {
            throw Error(ErrorKind::Validation, "embedding service returned " + std::to_string(rows.size()) +
                                                   " rows for " + std::to_string(texts.size()) + " texts");
        }
        return rows;
    }
    throw Error(ErrorKind::Http, "embedding request to " + endpoint.origin + endpoint.path + " failed after " +
                                     std::to_string(options.retries + 1) + " attempts: " + last_error);
}

}  // namespace

EmbeddingMatrix fetch_embeddings(const std::string& endpoint, const std::vector<std::string>& texts,
                                 const FetchOptions& options) {
    if (texts.empty()) {
        throw Error(ErrorKind::EmptyInput, "no texts to embed");
    }
    if (options.batch_size == 0) {
        throw Error(ErrorKind::InvalidArgument, "batch_size must be >= 1");
    }
    const auto target = split_endpoint(endpoint);
    const std::size_t batches = (texts.size() + options.batch_size - 1) / options.batch_size;
    const std::size_t window = static_cast<std::size_t>(std::max(options.concurrency, 1));
    std::vector<std::vector<std::vector<float>>> results(batches);

    for (std::size_t first = 0; first < batches; first += window) {
        const std::size_t last = std::min(batches, first + window);
        std::vector<std::future<std::vector<std::vector<float>>>> inflight;
        for (std::size_t b = first; b < last; ++b) {
            const std::size_t begin = b * options.batch_size;
            const std::size_t len = std::min(options.batch_size, texts.size() - begin);
            std::span<const std::string> slice(texts.data() + begin, len);
            auto launch = window > 1 ? std::launch::async : std::launch::deferred;
            inflight.push_back(std::async(launch, fetch_batch, std::cref(target), slice, std::cref(options)));
        }
        for (std::size_t b = first; b < last; ++b) {
            results[b] = inflight[b - first].get();
        }
    }

    std::optional<std::size_t> dim;
    std::vector<float> data;
    for (const auto& batch : results) {
        for (const auto& row : batch) {
            if (!dim) {
                dim = row.size();
                data.reserve(texts.size() * *dim);
            } else if (row.size() != *dim) {
                throw Error(ErrorKind::DimensionMismatch, "embedding dimension changed from " +
                                                              std::to_string(*dim) + " to " +
                                                              std::to_string(row.size()));
            }
            data.insert(data.end(), row.begin(), row.end());
        }
    }
    return EmbeddingMatrix(texts.size(), dim.value_or(0), std::move(data));
}

}  // namespace topicforge
