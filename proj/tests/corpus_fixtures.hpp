#pragma once

#include "topicforge/corpus.hpp"

#include <string>
#include <vector>

namespace topicforge::testing {

/// Corpus built straight from token lists, bypassing preprocessing.
inline Corpus corpus_from_tokens(const std::vector<std::vector<std::string>>& docs) {
    Corpus corpus;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        std::string raw;
        for (const auto& t : docs[i]) raw += (raw.empty() ? "" : " ") + t;
        corpus.documents.push_back(Document{i, raw, docs[i]});
    }
    return corpus;
}

}  // namespace topicforge::testing
