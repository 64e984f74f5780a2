#include "topicforge/corpus.hpp"
#include "topicforge/error.hpp"
#include "topicforge/random.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace topicforge;
using topicforge::testing::TempDir;

using Tokens = std::vector<std::string>;

TEST(Preprocess, StripsSpecialCharactersAndStopwords) {
    EXPECT_EQ(preprocess("El $mercado% creció.", {"el"}), (Tokens{"mercado", "creció"}));
}

TEST(Preprocess, EmptyInput) { EXPECT_TRUE(preprocess("", {}).empty()); }

TEST(Preprocess, AllStopwords) { EXPECT_TRUE(preprocess("el la los", {"el", "la", "los"}).empty()); }

TEST(Preprocess, KeepsDigitsAndAccents) {
    EXPECT_EQ(preprocess("Año 2023: ¡ÉXITO! #1 & 50%", {}), (Tokens{"año", "2023", "éxito", "1", "50"}));
}

TEST(Preprocess, UnicodePunctuationAndWhitespace) {
    EXPECT_EQ(preprocess("«hola» —mundo…\tfin", {}), (Tokens{"hola", "mundo", "fin"}));
}

TEST(Preprocess, MinTokenLength) {
    PreprocessOptions opts;
    opts.min_token_length = 3;
    EXPECT_EQ(preprocess("a ab abc ñañ", {}, opts), (Tokens{"abc", "ñañ"}));
}

TEST(Preprocess, InvalidUtf8BytesDropped) {
    EXPECT_EQ(preprocess(std::string("ab\xff" "c d"), {}), (Tokens{"abc", "d"}));
}

TEST(Preprocess, IdempotentOnRandomText) {
    const std::vector<std::string> pieces = {"El", "mercado", "$", "%", "creció", ".", ",", "LA", "  ", "ÁRBOL",
                                             "¿qué?", "x-y", "100", "é", "\t", "#tag", "don't", "—", "la"};
    const StopwordSet stop = {"el", "la", "qué"};
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const auto len = rng.below(12);
        for (std::uint64_t i = 0; i < len; ++i) {
            text += pieces[rng.below(pieces.size())];
            if (rng.uniform() < 0.6) text += ' ';
        }
        const auto once = preprocess(text, stop);
        std::string joined;
        for (const auto& t : once) joined += t + " ";
        EXPECT_EQ(preprocess(joined, stop), once) << text;
        for (const auto& t : once) {
            EXPECT_FALSE(t.empty());
            EXPECT_FALSE(stop.contains(t));
            EXPECT_EQ(t.find_first_of(".,$%#-'?"), std::string::npos) << t;
        }
    }
}

TEST(BuildCorpus, AssignsIdsInOrder) {
    const auto corpus = build_corpus({"a b", "c", "d e f"}, {});
    ASSERT_EQ(corpus.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(corpus.documents[i].id, i);
    EXPECT_EQ(corpus.documents[2].raw_text, "d e f");
}

TEST(BuildCorpus, LargeCorpusCount) {
    std::vector<std::string> texts(2183, "noticia de economía");
    EXPECT_EQ(build_corpus(texts, {"de"}, {}, 4).size(), 2183u);
}

TEST(BuildCorpus, DuplicatesKept) {
    const auto corpus = build_corpus({"hola mundo", "hola mundo"}, {});
    ASSERT_EQ(corpus.size(), 2u);
    EXPECT_EQ(corpus.documents[0].tokens, corpus.documents[1].tokens);
    EXPECT_NE(corpus.documents[0].id, corpus.documents[1].id);
}

TEST(BuildCorpus, RejectsEmptyList) {
    try {
        build_corpus({}, {});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyInput);
    }
}

TEST(Vocabulary, CountsDocumentsNotOccurrences) {
    const auto corpus = build_corpus({"a a b", "b"}, {});
    const auto vocab = build_vocabulary(corpus);
    EXPECT_EQ(vocab.size(), 2u);
    EXPECT_EQ(vocab.document_frequency("a"), 1u);
    EXPECT_EQ(vocab.document_frequency("b"), 2u);
    EXPECT_EQ(vocab.document_frequency("zzz"), 0u);
}

TEST(Vocabulary, SingleDocument) {
    const auto vocab = build_vocabulary(build_corpus({"x"}, {}));
    ASSERT_EQ(vocab.size(), 1u);
    EXPECT_EQ(vocab.term(0), "x");
    EXPECT_EQ(vocab.document_frequency(0), 1u);
}

TEST(Vocabulary, DisjointDocuments) {
    const auto vocab = build_vocabulary(build_corpus({"a b b", "c d", "e"}, {}));
    EXPECT_EQ(vocab.size(), 5u);
}

TEST(Vocabulary, BijectiveAndBounded) {
    const auto corpus = build_corpus({"uno dos tres", "dos tres", "tres", "cuatro uno"}, {});
    const auto vocab = build_vocabulary(corpus);
    for (std::size_t id = 0; id < vocab.size(); ++id) {
        EXPECT_EQ(vocab.find(vocab.term(id)), id);
        EXPECT_GE(vocab.document_frequency(id), 1u);
        EXPECT_LE(vocab.document_frequency(id), corpus.size());
    }
}

TEST(Vocabulary, DocumentFrequencyMonotoneUnderAppend) {
    std::vector<std::string> texts = {"a b", "b c"};
    auto before = build_vocabulary(build_corpus(texts, {}));
    texts.push_back("c d a");
    auto after = build_vocabulary(build_corpus(texts, {}));
    for (const auto& term : before.terms()) {
        EXPECT_GE(after.document_frequency(term), before.document_frequency(term));
    }
}

TEST(Loaders, LinesFile) {
    TempDir dir("corpus");
    topicforge::testing::write_file(dir / "t.txt", "first doc\r\nsecond doc\n\nfourth\n");
    const auto lines = load_texts_lines(dir / "t.txt");
    EXPECT_EQ(lines, (Tokens{"first doc", "second doc", "", "fourth"}));
}

TEST(Loaders, CsvColumnByNameAndIndex) {
    TempDir dir("corpus");
    topicforge::testing::write_file(dir / "t.csv", "id,text\n1,\"hola, mundo\"\n2,\"dijo \"\"sí\"\"\nfin\"\n");
    EXPECT_EQ(load_texts_csv(dir / "t.csv", "text"), (Tokens{"hola, mundo", "dijo \"sí\"\nfin"}));
    EXPECT_EQ(load_texts_csv(dir / "t.csv", "0"), (Tokens{"1", "2"}));
    EXPECT_THROW(load_texts_csv(dir / "t.csv", "body"), Error);
}

TEST(Loaders, StopwordFileIgnoresComments) {
    TempDir dir("corpus");
    topicforge::testing::write_file(dir / "s.txt", "# comment\nEl\n\n  la \n#los\n");
    EXPECT_EQ(load_stopwords(dir / "s.txt"), (StopwordSet{"el", "la"}));
}

TEST(Loaders, MissingFileIsIoError) {
    try {
        load_texts_lines("/nonexistent/texts.txt");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

TEST(Stopwords, BuiltinLists) {
    const auto es = builtin_stopwords("es");
    EXPECT_TRUE(es.contains("el"));
    EXPECT_TRUE(es.contains("también"));
    const auto both = builtin_stopwords("es+en");
    EXPECT_TRUE(both.contains("the"));
    EXPECT_TRUE(both.contains("los"));
    EXPECT_THROW(builtin_stopwords("fr"), Error);
}
