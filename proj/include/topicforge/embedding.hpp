#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace topicforge {

/// Dense row-major float matrix. Constructed only through validating paths:
/// Both dimensions are at least 1 and every value is finite.
class EmbeddingMatrix {
public:
    EmbeddingMatrix(std::size_t rows, std::size_t cols, std::vector<float> data);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const float> data() const noexcept { return data_; }
    std::span<const float> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    float operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    friend bool operator==(const EmbeddingMatrix&, const EmbeddingMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<float> data_;
};

/// Byte layout of TFEMB1: 8-byte magic, u32 rows, u32 cols (little-endian),
/// then rows*cols little-endian f32 values.
inline constexpr char kTfembMagic[8] = {'T', 'F', 'E', 'M', 'B', '1', '\0', '\0'};
inline constexpr std::size_t kTfembHeaderBytes = 16;

EmbeddingMatrix load_embeddings(const std::filesystem::path& path);
void save_embeddings(const EmbeddingMatrix& matrix, const std::filesystem::path& path);

/// Decodes an in-memory TFEMB1 image.
EmbeddingMatrix decode_tfemb(std::span<const unsigned char> bytes);
std::vector<unsigned char> encode_tfemb(const EmbeddingMatrix& matrix);

/// Headerless CSV of numbers, one row per document. For small fixtures.
EmbeddingMatrix load_embeddings_csv(const std::filesystem::path& path);

struct FetchOptions {
    std::size_t batch_size = 32;
    double timeout_seconds = 30.0;
    /// Extra attempts after the first failure of a batch.
    int retries = 2;
    /// Maximum batches in flight.
    int concurrency = 1;
};

/// POSTs {"texts": [...]} to `endpoint` in batches and reassembles the
/// returned {"embeddings": [[...]...]} rows in input order. Plain http only.
EmbeddingMatrix fetch_embeddings(const std::string& endpoint, const std::vector<std::string>& texts,
                                 const FetchOptions& options = {});

}  // namespace topicforge
