#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "orthoclass/errors.hpp"
#include "orthoclass/ngram.hpp"
#include "orthoclass/sparse.hpp"

namespace ortho {

// Fitted n-gram vocabulary with smoothed IDF weights,
// idf(t) = ln((1+N)/(1+df(t))) + 1. Immutable once fitted.
struct vectorizer {
    ngram_config config;
    std::unordered_map<std::string, std::uint32_t> vocabulary; // n-gram -> column
    std::vector<double> idf;                                   // per column

    std::size_t dim() const { return idf.size(); }
};

// When distinct n-grams exceed max_features, the cap keeps the ones with
// highest corpus-wide term frequency; ties prefer the byte-wise smaller
// n-gram. Columns are then assigned in byte-wise lexicographic order.
inline vectorizer fit_vectorizer(const std::vector<std::string>& corpus, const ngram_config& cfg) {
    validate(cfg);
    if (corpus.empty()) throw error("fit_vectorizer: empty corpus");

    struct term_stats {
        std::uint64_t tf = 0;
        std::uint32_t df = 0;
    };
    std::unordered_map<std::string, term_stats> stats;
    std::unordered_map<std::string, std::uint32_t> doc_counts;
    for (const auto& doc : corpus) {
        doc_counts.clear();
        for (auto& tok : tokenize(doc, cfg)) ++doc_counts[std::move(tok)];
        for (const auto& [tok, count] : doc_counts) {
            auto& st = stats[tok];
            st.tf += count;
            st.df += 1;
        }
    }

    std::vector<const std::string*> kept;
    kept.reserve(stats.size());
    for (const auto& kv : stats) kept.push_back(&kv.first);

    if (kept.size() > cfg.max_features) {
        auto by_tf = [&](const std::string* a, const std::string* b) {
            const auto ta = stats.at(*a).tf, tb = stats.at(*b).tf;
            if (ta != tb) return ta > tb;
            return *a < *b;
        };
        std::nth_element(kept.begin(), kept.begin() + cfg.max_features, kept.end(), by_tf);
        kept.resize(cfg.max_features);
    }
    std::sort(kept.begin(), kept.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });

    vectorizer v;
    v.config = cfg;
    v.vocabulary.reserve(kept.size());
    v.idf.resize(kept.size());
    const double n_docs = static_cast<double>(corpus.size());
    for (std::uint32_t col = 0; col < kept.size(); ++col) {
        v.vocabulary.emplace(*kept[col], col);
        v.idf[col] = std::log((1.0 + n_docs) / (1.0 + stats.at(*kept[col]).df)) + 1.0;
    }
    return v;
}

// tf(t) * idf(t) for in-vocabulary n-grams, L2-normalized. Out-of-vocabulary
// tokens are dropped; all-OOV or empty text gives the zero vector.
inline sparse_vector transform(const vectorizer& v, std::string_view text) {
    std::unordered_map<std::uint32_t, std::uint32_t> counts;
    for (const auto& tok : tokenize(text, v.config)) {
        auto it = v.vocabulary.find(tok);
        if (it != v.vocabulary.end()) ++counts[it->second];
    }
    sparse_vector out;
    out.dim = v.dim();
    out.indices.reserve(counts.size());
    for (const auto& [col, _] : counts) out.indices.push_back(col);
    std::sort(out.indices.begin(), out.indices.end());
    out.values.reserve(out.indices.size());
    for (auto col : out.indices) out.values.push_back(counts.at(col) * v.idf[col]);
    l2_normalize(out);
    return out;
}

// Concatenation of independently fitted vectorizers; each member block is
// L2-normalized on its own before concatenation.
struct feature_union {
    std::vector<vectorizer> members;

    std::size_t total_dim() const {
        std::size_t d = 0;
        for (const auto& m : members) d += m.dim();
        return d;
    }
};

inline feature_union fit_union(const std::vector<std::string>& corpus,
                               const std::vector<ngram_config>& configs) {
    if (configs.empty()) throw config_error("fit_union: need at least one config");
    feature_union u;
    u.members.reserve(configs.size());
    for (const auto& cfg : configs) u.members.push_back(fit_vectorizer(corpus, cfg));
    return u;
}

inline sparse_vector transform_union(const feature_union& u, std::string_view text) {
    sparse_vector out;
    out.dim = u.total_dim();
    std::size_t offset = 0;
    for (const auto& m : u.members) {
        const sparse_vector block = transform(m, text);
        for (std::size_t k = 0; k < block.indices.size(); ++k) {
            out.indices.push_back(static_cast<std::uint32_t>(block.indices[k] + offset));
            out.values.push_back(block.values[k]);
        }
        offset += m.dim();
    }
    return out;
}

} // namespace ortho
