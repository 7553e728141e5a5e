#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "orthoclass/errors.hpp"
#include "orthoclass/utf8.hpp"

namespace ortho {

enum class analyzer_kind { byte, chr, word };

inline std::string_view to_string(analyzer_kind a) {
    switch (a) {
        case analyzer_kind::byte: return "byte";
        case analyzer_kind::chr:  return "char";
        case analyzer_kind::word: return "word";
    }
    return "byte";
}

inline analyzer_kind parse_analyzer(std::string_view s) {
    if (s == "byte") return analyzer_kind::byte;
    if (s == "char") return analyzer_kind::chr;
    if (s == "word") return analyzer_kind::word;
    throw config_error("unknown analyzer '" + std::string(s) + "' (expected byte, char or word)");
}

struct ngram_config {
    analyzer_kind analyzer = analyzer_kind::byte;
    std::size_t n_min = 1;
    std::size_t n_max = 4;
    std::size_t max_features = 10000;
    bool lowercase = true;
};

inline void validate(const ngram_config& cfg) {
    if (cfg.n_min < 1 || cfg.n_min > cfg.n_max) {
        throw config_error("ngram_config: need 1 <= n_min <= n_max");
    }
    if (cfg.max_features < 1) throw config_error("ngram_config: max_features must be >= 1");
}

namespace detail {

inline void byte_ngrams(std::string_view text, std::size_t n_min, std::size_t n_max,
                        std::vector<std::string>& out) {
    for (std::size_t n = n_min; n <= n_max; ++n) {
        if (text.size() < n) break;
        for (std::size_t i = 0; i + n <= text.size(); ++i) {
            out.emplace_back(text.substr(i, n));
        }
    }
}

inline void char_ngrams(std::string_view text, std::size_t n_min, std::size_t n_max,
                        std::vector<std::string>& out) {
    // Codepoint boundaries, so a window of n chars is a byte substring.
    std::vector<std::size_t> bounds;
    bounds.push_back(0);
    std::size_t pos = 0;
    while (pos < text.size()) {
        utf8::decode_next(text, pos);
        bounds.push_back(pos);
    }
    const std::size_t n_chars = bounds.size() - 1;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        if (n_chars < n) break;
        for (std::size_t i = 0; i + n <= n_chars; ++i) {
            out.emplace_back(text.substr(bounds[i], bounds[i + n] - bounds[i]));
        }
    }
}

inline std::vector<std::string_view> whitespace_tokens(std::string_view text) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
                                   text[i] == '\n' || text[i] == '\f' || text[i] == '\v')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\r' ||
                                    text[i] == '\n' || text[i] == '\f' || text[i] == '\v')) {
            ++i;
        }
        if (i > start) words.push_back(text.substr(start, i - start));
    }
    return words;
}

inline void word_ngrams(std::string_view text, std::size_t n_min, std::size_t n_max,
                        std::vector<std::string>& out) {
    const auto words = whitespace_tokens(text);
    for (std::size_t n = n_min; n <= n_max; ++n) {
        if (words.size() < n) break;
        for (std::size_t i = 0; i + n <= words.size(); ++i) {
            std::string key(words[i]);
            for (std::size_t k = 1; k < n; ++k) {
                key.push_back(' ');
                key.append(words[i + k]);
            }
            out.push_back(std::move(key));
        }
    }
}

} // namespace detail

// Sliding n-grams for every n in [n_min, n_max]. Text is lowercased first
// when the config says so; the byte analyzer then runs over the UTF-8 bytes
// of that same lowercased text. Word n-gram keys join tokens with a single
// space.
inline std::vector<std::string> tokenize(std::string_view text, const ngram_config& cfg) {
    std::string lowered;
    if (cfg.lowercase) {
        lowered = utf8::lowercase(text);
        text = lowered;
    }
    std::vector<std::string> out;
    switch (cfg.analyzer) {
        case analyzer_kind::byte: detail::byte_ngrams(text, cfg.n_min, cfg.n_max, out); break;
        case analyzer_kind::chr:  detail::char_ngrams(text, cfg.n_min, cfg.n_max, out); break;
        case analyzer_kind::word: detail::word_ngrams(text, cfg.n_min, cfg.n_max, out); break;
    }
    return out;
}

} // namespace ortho
