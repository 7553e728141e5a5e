#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "orthoclass/tfidf.hpp"

using namespace ortho;

namespace {

std::map<std::string, std::size_t> count_tokens(const std::vector<std::string>& toks) {
    std::map<std::string, std::size_t> m;
    for (const auto& t : toks) ++m[t];
    return m;
}

// Independent dense recomputation of the whole tf-idf path from token
// multisets: df counting, smoothed idf, raw tf, L2 normalization. No
// vocabulary cap, so only valid when the corpus stays under max_features.
std::map<std::string, double> dense_tfidf_oracle(const std::vector<std::string>& corpus,
                                                 const std::string& text,
                                                 const ngram_config& cfg) {
    std::map<std::string, std::size_t> df;
    for (const auto& doc : corpus) {
        for (const auto& [tok, n] : count_tokens(tokenize(doc, cfg))) {
            (void)n;
            ++df[tok];
        }
    }
    const double big_n = static_cast<double>(corpus.size());
    std::map<std::string, double> vec;
    for (const auto& [tok, tf] : count_tokens(tokenize(text, cfg))) {
        const auto it = df.find(tok);
        if (it == df.end()) continue;
        const double idf = std::log((1.0 + big_n) / (1.0 + it->second)) + 1.0;
        vec[tok] = static_cast<double>(tf) * idf;
    }
    double norm = 0.0;
    for (const auto& [tok, v] : vec) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
        for (auto& [tok, v] : vec) v /= norm;
    }
    return vec;
}

ngram_config make_cfg(analyzer_kind a, std::size_t lo, std::size_t hi) {
    ngram_config cfg;
    cfg.analyzer = a;
    cfg.n_min = lo;
    cfg.n_max = hi;
    return cfg;
}

} // namespace

TEST_CASE("char n-grams of 'abc' for n in 1..2") {
    const auto toks = count_tokens(tokenize("abc", make_cfg(analyzer_kind::chr, 1, 2)));
    CHECK(toks == std::map<std::string, std::size_t>{
                      {"a", 1}, {"b", 1}, {"c", 1}, {"ab", 1}, {"bc", 1}});
}

TEST_CASE("byte unigrams see UTF-8 bytes, char unigrams see codepoints") {
    const auto bytes = tokenize("né", make_cfg(analyzer_kind::byte, 1, 1));
    CHECK(bytes.size() == 3);
    CHECK(bytes[0] == "n");
    CHECK(bytes[1] == std::string("\xC3", 1));
    CHECK(bytes[2] == std::string("\xA9", 1));

    const auto chars = tokenize("né", make_cfg(analyzer_kind::chr, 1, 1));
    CHECK(chars.size() == 2);
    CHECK(chars[1] == "é");
}

TEST_CASE("word bigrams join tokens with one space") {
    const auto toks = count_tokens(tokenize("el vent el vent", make_cfg(analyzer_kind::word, 2, 2)));
    CHECK(toks == std::map<std::string, std::size_t>{{"el vent", 2}, {"vent el", 1}});
}

TEST_CASE("char unigram count equals codepoint count of the lowercased text") {
    for (const std::string text : {"Milàn l'è 'na CITAA", "ö ü œ É", "", "a\tb\nc"}) {
        const auto toks = tokenize(text, make_cfg(analyzer_kind::chr, 1, 1));
        CHECK(toks.size() == utf8::decode(utf8::lowercase(text)).size());
    }
}

TEST_CASE("lowercase toggle is honored") {
    auto cfg = make_cfg(analyzer_kind::word, 1, 1);
    cfg.lowercase = false;
    const auto raw = tokenize("Milàn MILÀN", cfg);
    CHECK(count_tokens(raw).size() == 2);
    cfg.lowercase = true;
    const auto folded = count_tokens(tokenize("Milàn MILÀN", cfg));
    CHECK(folded == std::map<std::string, std::size_t>{{"milàn", 2}});
}

TEST_CASE("fit_vectorizer reproduces the hand-computed two-document fixture") {
    const std::vector<std::string> corpus = {"a b", "a c"};
    const auto cfg = make_cfg(analyzer_kind::word, 1, 1);
    const auto v = fit_vectorizer(corpus, cfg);

    REQUIRE(v.dim() == 3);
    // columns in lexicographic order: a, b, c
    CHECK(v.vocabulary.at("a") == 0);
    CHECK(v.vocabulary.at("b") == 1);
    CHECK(v.vocabulary.at("c") == 2);
    CHECK(v.idf[0] == doctest::Approx(1.0).epsilon(1e-12));
    const double idf_rare = std::log(3.0 / 2.0) + 1.0; // 1.4054651081081644
    CHECK(v.idf[1] == doctest::Approx(idf_rare).epsilon(1e-12));
    CHECK(v.idf[2] == doctest::Approx(idf_rare).epsilon(1e-12));

    const auto vec = transform(v, "a b");
    REQUIRE(vec.indices == std::vector<std::uint32_t>{0, 1});
    const double norm = std::sqrt(1.0 + idf_rare * idf_rare);
    CHECK(vec.values[0] == doctest::Approx(1.0 / norm).epsilon(1e-9));
    CHECK(vec.values[1] == doctest::Approx(idf_rare / norm).epsilon(1e-9));
    // frozen from the dense oracle
    CHECK(vec.values[0] == doctest::Approx(0.5797386715376657).epsilon(1e-9));
    CHECK(vec.values[1] == doctest::Approx(0.8148024746671689).epsilon(1e-9));
}

TEST_CASE("single-document corpus gives idf 1 everywhere") {
    const auto v = fit_vectorizer({"el vent el"}, make_cfg(analyzer_kind::word, 1, 2));
    for (double idf : v.idf) CHECK(idf == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("idf decreases strictly as df grows") {
    // 4 docs: 'a' in all, 'b' in 3, 'c' in 2, 'd' in 1
    const std::vector<std::string> corpus = {"a b c d", "a b c", "a b", "a"};
    const auto v = fit_vectorizer(corpus, make_cfg(analyzer_kind::word, 1, 1));
    CHECK(v.idf[v.vocabulary.at("a")] < v.idf[v.vocabulary.at("b")]);
    CHECK(v.idf[v.vocabulary.at("b")] < v.idf[v.vocabulary.at("c")]);
    CHECK(v.idf[v.vocabulary.at("c")] < v.idf[v.vocabulary.at("d")]);
}

TEST_CASE("vocabulary cap keeps exactly max_features entries") {
    // 15000 distinct char trigrams, one per document
    std::vector<std::string> corpus;
    corpus.reserve(15000);
    for (int i = 0; i < 15000; ++i) {
        std::string t(3, 'a');
        t[0] = static_cast<char>('a' + (i / (26 * 26)) % 26);
        t[1] = static_cast<char>('a' + (i / 26) % 26);
        t[2] = static_cast<char>('a' + i % 26);
        corpus.push_back(t);
    }
    auto cfg = make_cfg(analyzer_kind::chr, 3, 3);
    cfg.max_features = 10000;
    const auto v = fit_vectorizer(corpus, cfg);
    CHECK(v.dim() == 10000);
    // equal term frequencies everywhere: the lexicographically smallest survive
    CHECK(v.vocabulary.contains("aaa"));
    CHECK(!v.vocabulary.contains(corpus.back()));
}

TEST_CASE("vocabulary cap prefers higher total term frequency") {
    auto cfg = make_cfg(analyzer_kind::word, 1, 1);
    cfg.max_features = 2;
    const auto v = fit_vectorizer({"zz zz zz yy yy xx", "zz yy xx"}, cfg);
    CHECK(v.vocabulary.contains("zz"));
    CHECK(v.vocabulary.contains("yy"));
    CHECK(!v.vocabulary.contains("xx"));
}

TEST_CASE("fitting is deterministic") {
    const std::vector<std::string> corpus = {"ab ba ac", "ba ab", "ca ab ab"};
    const auto cfg = make_cfg(analyzer_kind::chr, 1, 3);
    const auto a = fit_vectorizer(corpus, cfg);
    const auto b = fit_vectorizer(corpus, cfg);
    CHECK(a.vocabulary == b.vocabulary);
    CHECK(a.idf == b.idf);
}

TEST_CASE("transform of empty or all-OOV text is the zero vector") {
    const auto v = fit_vectorizer({"a b", "a c"}, make_cfg(analyzer_kind::word, 1, 1));
    const auto zero = transform(v, "");
    CHECK(zero.dim == 3);
    CHECK(zero.nnz() == 0);
    const auto oov = transform(v, "q r s");
    CHECK(oov.nnz() == 0);
}

TEST_CASE("transform output norm is 0 or 1") {
    const std::vector<std::string> corpus = {"el vent de Milan", "la piova de Lecch",
                                             "el sô de estaa"};
    const auto v = fit_vectorizer(corpus, make_cfg(analyzer_kind::chr, 1, 3));
    for (const std::string text : {"el vent", "", "zzz", "la piova la piova"}) {
        const double n = l2_norm(transform(v, text));
        CHECK((n == 0.0 || std::abs(n - 1.0) <= 1e-9));
    }
}

TEST_CASE("transform matches the dense oracle on small corpora") {
    const std::vector<std::string> corpus = {"el vent el vent", "la piova", "el sô",
                                             "vent e piova", "sô de estaa"};
    for (auto kind : {analyzer_kind::byte, analyzer_kind::chr, analyzer_kind::word}) {
        const auto cfg = make_cfg(kind, 1, 2);
        const auto v = fit_vectorizer(corpus, cfg);
        REQUIRE(v.dim() <= 10000); // oracle assumes no cap was hit
        for (const auto& text : corpus) {
            const auto got = transform(v, text);
            const auto expected = dense_tfidf_oracle(corpus, text, cfg);
            REQUIRE(got.nnz() == expected.size());
            // map columns back to n-grams
            std::vector<std::string> by_col(v.dim());
            for (const auto& [tok, col] : v.vocabulary) by_col[col] = tok;
            for (std::size_t k = 0; k < got.indices.size(); ++k) {
                const auto& tok = by_col[got.indices[k]];
                REQUIRE(expected.contains(tok));
                CHECK(got.values[k] == doctest::Approx(expected.at(tok)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("union concatenates blocks with per-member normalization") {
    const std::vector<std::string> corpus = {"ab cd", "cd ef", "ab ef gh"};
    const std::vector<ngram_config> configs = {make_cfg(analyzer_kind::byte, 1, 2),
                                               make_cfg(analyzer_kind::chr, 1, 2),
                                               make_cfg(analyzer_kind::word, 1, 2)};
    const auto u = fit_union(corpus, configs);
    REQUIRE(u.members.size() == 3);
    CHECK(u.total_dim() == u.members[0].dim() + u.members[1].dim() + u.members[2].dim());

    const std::string text = "ab cd ef";
    const auto joint = transform_union(u, text);
    CHECK(joint.dim == u.total_dim());

    // block i equals the standalone member transform, shifted exactly
    std::size_t offset = 0;
    std::size_t cursor = 0;
    for (const auto& member : u.members) {
        const auto alone = transform(member, text);
        for (std::size_t k = 0; k < alone.indices.size(); ++k, ++cursor) {
            REQUIRE(cursor < joint.indices.size());
            CHECK(joint.indices[cursor] == alone.indices[k] + offset);
            CHECK(joint.values[cursor] == alone.values[k]); // bit-exact
        }
        offset += member.dim();
    }
    CHECK(cursor == joint.indices.size());

    // per-member unit blocks make the joint norm sqrt(#nonzero blocks)
    CHECK(l2_norm(joint) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

    // empty text: zero vector of total_dim
    const auto zero = transform_union(u, "");
    CHECK(zero.dim == u.total_dim());
    CHECK(zero.nnz() == 0);
}

TEST_CASE("union of one member behaves like the plain vectorizer") {
    const std::vector<std::string> corpus = {"a b", "a c"};
    const auto cfg = make_cfg(analyzer_kind::word, 1, 1);
    const auto u = fit_union(corpus, {cfg});
    const auto v = fit_vectorizer(corpus, cfg);
    CHECK(transform_union(u, "a b") == transform(v, "a b"));
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(fit_vectorizer({"x"}, make_cfg(analyzer_kind::chr, 3, 2)), config_error);
    CHECK_THROWS_AS(fit_vectorizer({}, make_cfg(analyzer_kind::chr, 1, 1)), error);
    auto cfg = make_cfg(analyzer_kind::chr, 1, 2);
    cfg.max_features = 0;
    CHECK_THROWS_AS(fit_vectorizer({"x"}, cfg), config_error);
    CHECK_THROWS_AS(fit_union({"x"}, {}), config_error);
}
