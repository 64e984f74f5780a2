#include "topicforge/corpus.hpp"

#include "topicforge/error.hpp"
#include "topicforge/parallel.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace topicforge {

namespace {

void append_utf8(std::string& out, UChar32 cp) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, cp, error);
    if (!error) {
        out.append(buf, static_cast<std::size_t>(len));
    }
}

template <typename Fn>
void for_each_codepoint(std::string_view text, Fn&& fn) {
    const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 cp = 0;
        U8_NEXT(bytes, i, length, cp);
        if (cp >= 0) {
            fn(cp);
        }
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

bool is_stripped_codepoint(char32_t cp) {
    const auto c = static_cast<UChar32>(cp);
    if (u_isUWhiteSpace(c)) {
        return false;
    }
    switch (u_charType(c)) {
        case U_DASH_PUNCTUATION:
        case U_START_PUNCTUATION:
        case U_END_PUNCTUATION:
        case U_CONNECTOR_PUNCTUATION:
        case U_OTHER_PUNCTUATION:
        case U_INITIAL_PUNCTUATION:
        case U_FINAL_PUNCTUATION:
        case U_MATH_SYMBOL:
        case U_CURRENCY_SYMBOL:
        case U_MODIFIER_SYMBOL:
        case U_OTHER_SYMBOL:
        case U_CONTROL_CHAR:
        case U_FORMAT_CHAR:
        case U_UNASSIGNED:
        case U_PRIVATE_USE_CHAR:
        case U_SURROGATE:
            return true;
        default:
            return false;
    }
}

std::string to_lower_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for_each_codepoint(text, [&](UChar32 cp) { append_utf8(out, u_tolower(cp)); });
    return out;
}

std::size_t utf8_length(std::string_view text) {
    std::size_t n = 0;
    for_each_codepoint(text, [&](UChar32) { ++n; });
    return n;
}

std::vector<std::string> preprocess(std::string_view raw_text, const StopwordSet& stopwords,
                                    const PreprocessOptions& options) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t current_len = 0;

    auto flush = [&] {
        if (!current.empty() && current_len >= options.min_token_length &&
            !stopwords.contains(current)) {
            tokens.push_back(std::move(current));
        }
        current.clear();
        current_len = 0;
    };

    for_each_codepoint(raw_text, [&](UChar32 cp) {
        if (u_isUWhiteSpace(cp)) {
            flush();
        } else if (!is_stripped_codepoint(static_cast<char32_t>(cp))) {
            append_utf8(current, u_tolower(cp));
            ++current_len;
        }
    });
    flush();
    return tokens;
}

Corpus build_corpus(const std::vector<std::string>& texts, StopwordSet stopwords,
                    const PreprocessOptions& options, int threads) {
    if (texts.empty()) {
        throw Error(ErrorKind::EmptyInput, "corpus needs at least one text");
    }
    Corpus corpus;
    corpus.stopwords = std::move(stopwords);
    corpus.documents.resize(texts.size());
    parallel_for(texts.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto& doc = corpus.documents[i];
            doc.id = i;
            doc.raw_text = texts[i];
            doc.tokens = preprocess(texts[i], corpus.stopwords, options);
        }
    });
    return corpus;
}

std::optional<Vocabulary::TermId> Vocabulary::find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t Vocabulary::document_frequency(std::string_view term) const {
    auto id = find(term);
    return id ? document_frequency_[*id] : 0;
}

Vocabulary build_vocabulary(const Corpus& corpus) {
    if (corpus.documents.empty()) {
        throw Error(ErrorKind::EmptyInput, "vocabulary needs a nonempty corpus");
    }
    Vocabulary vocab;
    std::vector<std::size_t> last_seen;  // doc id + 1 of the last document counted
    for (const auto& doc : corpus.documents) {
        for (const auto& token : doc.tokens) {
            auto [it, inserted] = vocab.index_.try_emplace(token, vocab.terms_.size());
            if (inserted) {
                vocab.terms_.push_back(token);
                vocab.document_frequency_.push_back(0);
                last_seen.push_back(0);
            }
            const auto id = it->second;
            if (last_seen[id] != doc.id + 1) {
                last_seen[id] = doc.id + 1;
                ++vocab.document_frequency_[id];
            }
        }
    }
    return vocab;
}

std::vector<std::string> load_texts_lines(const std::filesystem::path& path) {
    const std::string content = read_file(path);
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < content.size()) {
        auto end = content.find('\n', start);
        if (end == std::string::npos) {
            end = content.size();
        }
        std::string_view line(content.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.emplace_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < content.size(); ++i) {
        const char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                break;
            default:
                field.push_back(c);
                field_started = true;
        }
    }
    if (in_quotes) {
        throw Error(ErrorKind::Format, "unterminated quoted CSV field");
    }
    if (field_started || !row.empty()) {
        end_row();
    }
    return rows;
}

std::vector<std::string> load_texts_csv(const std::filesystem::path& path, std::string_view column) {
    auto rows = parse_csv(read_file(path));
    if (rows.empty()) {
        throw Error(ErrorKind::EmptyInput, "CSV file has no header: " + path.string());
    }
    const auto& header = rows.front();
    std::optional<std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == column) {
            col = i;
            break;
        }
    }
    if (!col) {
        std::size_t index = 0;
        auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), index);
        if (ec != std::errc{} || ptr != column.data() + column.size() || index >= header.size()) {
            throw Error(ErrorKind::Format, "CSV column '" + std::string(column) + "' not found in " +
                                               path.string());
        }
        col = index;
    }
    std::vector<std::string> texts;
    texts.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (*col >= rows[r].size()) {
            throw Error(ErrorKind::Format,
                        "CSV row " + std::to_string(r) + " is missing column " + std::to_string(*col));
        }
        texts.push_back(std::move(rows[r][*col]));
    }
    return texts;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    StopwordSet words;
    for (const auto& line : load_texts_lines(path)) {
        auto term = trim(line);
        if (term.empty() || term.front() == '#') {
            continue;
        }
        words.insert(to_lower_utf8(term));
    }
    return words;
}

}  // namespace topicforge
