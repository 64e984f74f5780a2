#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace topicforge {

using StopwordSet = std::unordered_set<std::string>;

struct PreprocessOptions {
    /// Tokens shorter than this many code points are dropped.
    std::size_t min_token_length = 1;
};

/// True for code points removed before tokenization: Unicode punctuation,
/// symbols ($, #, %, & and friends) and non-whitespace control/format
/// characters. Digits and letters are kept.
bool is_stripped_codepoint(char32_t cp);

/// Lowercases and strips punctuation or special characters, then splits on
/// whitespace and drops stopwords. Token order follows the input. Invalid UTF-8 bytes
/// are discarded.
std::vector<std::string> preprocess(std::string_view raw_text, const StopwordSet& stopwords,
                                    const PreprocessOptions& options = {});

/// Unicode simple lowercase of a UTF-8 string. Accents are preserved.
std::string to_lower_utf8(std::string_view text);

/// Number of code points in a valid UTF-8 string.
std::size_t utf8_length(std::string_view text);

struct Document {
    std::size_t id = 0;
    std::string raw_text;
    std::vector<std::string> tokens;
};

struct Corpus {
    std::vector<Document> documents;
    StopwordSet stopwords;
    /// Empty, or one label per document.
    std::vector<std::string> language_tags;

    std::size_t size() const noexcept { return documents.size(); }
};

/// One Document per text with ids 0..n-1 in input order. Throws
/// Error(EmptyInput) when `texts` is empty.
Corpus build_corpus(const std::vector<std::string>& texts, StopwordSet stopwords,
                    const PreprocessOptions& options = {}, int threads = 1);

/// Term <-> id map plus per-term document frequency. Ids are assigned in
/// first-occurrence order over the corpus.
class Vocabulary {
public:
    using TermId = std::size_t;

    std::size_t size() const noexcept { return terms_.size(); }
    std::optional<TermId> find(std::string_view term) const;
    const std::string& term(TermId id) const { return terms_.at(id); }
    std::size_t document_frequency(TermId id) const { return document_frequency_.at(id); }
    /// 0 for unknown terms.
    std::size_t document_frequency(std::string_view term) const;

    const std::vector<std::string>& terms() const noexcept { return terms_; }

private:
    friend Vocabulary build_vocabulary(const Corpus& corpus);

    std::vector<std::string> terms_;
    std::vector<std::size_t> document_frequency_;
    std::unordered_map<std::string, TermId> index_;
};

/// Throws Error(EmptyInput) for an empty corpus.
Vocabulary build_vocabulary(const Corpus& corpus);

/// One document per line; a trailing newline does not add an empty document.
/// CR before LF is dropped.
std::vector<std::string> load_texts_lines(const std::filesystem::path& path);

/// RFC 4180 CSV with a header row. `column` is a header name, or a zero-based
/// index when it parses as an integer and no header matches.
std::vector<std::string> load_texts_csv(const std::filesystem::path& path, std::string_view column);

/// Minimal RFC 4180 reader that handles quoted fields with embedded quotes
/// or newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

/// One UTF-8 term per line; '#' comment lines and blank lines are skipped.
/// Entries are lowercased.
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Built-in lists: "es", "en". Combine with '+', e.g. "es+en".
StopwordSet builtin_stopwords(std::string_view languages);

}  // namespace topicforge
