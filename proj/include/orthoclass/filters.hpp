#pragma once

#include <regex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "orthoclass/corpus.hpp"
#include "orthoclass/errors.hpp"
#include "orthoclass/ngram.hpp"
#include "orthoclass/orthography.hpp"
#include "orthoclass/utf8.hpp"

namespace ortho {

// Quality thresholds for the corpus cleaning pass. Word lists and regex
// patterns are configuration, not code: wiki conventions drift.
struct filter_config {
    std::size_t min_words = 4; // lines with fewer words are dropped
    bool dedup = true;
    double latin_ratio_threshold = 0.5;    // min fraction of Latin letters among letters
    double stopword_ratio_threshold = 0.6; // max fraction of known-foreign tokens
    std::vector<std::string> boilerplate_patterns;
    std::vector<std::string> stopwords_italian;
    std::vector<std::string> stopwords_english;
    bool collect_borderline = false; // gather near-threshold lines for review
    double borderline_margin = 0.1;
};

inline void validate(const filter_config& cfg) {
    if (cfg.min_words < 1) throw config_error("filter: min_words must be >= 1");
    if (cfg.latin_ratio_threshold < 0.0 || cfg.latin_ratio_threshold > 1.0 ||
        cfg.stopword_ratio_threshold < 0.0 || cfg.stopword_ratio_threshold > 1.0) {
        throw config_error("filter: thresholds must lie in [0, 1]");
    }
}

struct filter_report {
    std::size_t input = 0;
    std::size_t kept = 0;
    std::size_t no_tag = 0;
    std::size_t duplicate = 0;
    std::size_t too_short = 0;
    std::size_t non_latin = 0;
    std::size_t foreign_language = 0;
    std::size_t boilerplate = 0;

    std::size_t removed_total() const {
        return no_tag + duplicate + too_short + non_latin + foreign_language + boilerplate;
    }
};

struct filter_result {
    std::vector<sample> kept;
    std::vector<std::string> untagged; // NO_TAG lines, passed through unfiltered
    filter_report report;
    std::vector<std::pair<std::string, std::string>> borderline; // (line, reason)
};

namespace detail {

struct compiled_filters {
    std::vector<std::regex> patterns;
    std::unordered_set<std::string> stopwords;
};

inline compiled_filters compile_filters(const filter_config& cfg) {
    validate(cfg);
    compiled_filters out;
    for (const auto& p : cfg.boilerplate_patterns) {
        try {
            out.patterns.emplace_back(p, std::regex::ECMAScript);
        } catch (const std::regex_error& e) {
            throw config_error("invalid boilerplate pattern '" + p + "': " + e.what());
        }
    }
    for (const auto& w : cfg.stopwords_italian) out.stopwords.insert(utf8::lowercase(w));
    for (const auto& w : cfg.stopwords_english) out.stopwords.insert(utf8::lowercase(w));
    return out;
}

// Fraction of Latin letters among all letters; lines with no letters pass.
inline double latin_letter_ratio(std::string_view line) {
    std::size_t letters = 0, latin = 0;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const char32_t cp = utf8::decode_next(line, pos);
        if (utf8::is_letter(cp)) {
            ++letters;
            if (utf8::is_latin_letter(cp)) ++latin;
        }
    }
    if (letters == 0) return 1.0;
    return static_cast<double>(latin) / static_cast<double>(letters);
}

// Lowercased token with non-letter characters trimmed from both ends.
inline std::string normalize_token(std::string_view tok) {
    const std::string lowered = utf8::lowercase(tok);
    const auto cps = utf8::decode(lowered);
    std::size_t b = 0, e = cps.size();
    while (b < e && !utf8::is_letter(cps[b])) ++b;
    while (e > b && !utf8::is_letter(cps[e - 1])) --e;
    std::string out;
    for (std::size_t i = b; i < e; ++i) utf8::encode(cps[i], out);
    return out;
}

inline double stopword_ratio(std::string_view line,
                             const std::unordered_set<std::string>& stopwords) {
    const auto tokens = whitespace_tokens(line);
    if (tokens.empty()) return 0.0;
    std::size_t hits = 0;
    for (const auto& tok : tokens) {
        if (stopwords.contains(normalize_token(tok))) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

} // namespace detail

// Applies the cleanup stages in order: untagged routing, deduplication,
// length, script, language, boilerplate. The untagged lines come back
// unfiltered for later bulk classification. Idempotent: filtering kept
// output again removes nothing.
inline filter_result filter_lines(const std::vector<std::pair<std::string, orthography>>& lines,
                                  const filter_config& cfg) {
    const auto compiled = detail::compile_filters(cfg); // config errors surface here
    filter_result res;
    res.report.input = lines.size();
    std::unordered_set<std::string> seen;

    for (const auto& [text, tag] : lines) {
        if (tag == orthography::no_tag) {
            ++res.report.no_tag;
            res.untagged.push_back(text);
            continue;
        }
        if (cfg.dedup && !seen.insert(text).second) {
            ++res.report.duplicate;
            continue;
        }
        if (detail::whitespace_tokens(text).size() < cfg.min_words) {
            ++res.report.too_short;
            continue;
        }
        const double latin = detail::latin_letter_ratio(text);
        if (latin < cfg.latin_ratio_threshold) {
            ++res.report.non_latin;
            continue;
        }
        const double stop = detail::stopword_ratio(text, compiled.stopwords);
        if (stop >= cfg.stopword_ratio_threshold) {
            ++res.report.foreign_language;
            continue;
        }
        bool matched = false;
        for (const auto& re : compiled.patterns) {
            if (std::regex_search(text, re)) {
                matched = true;
                break;
            }
        }
        if (matched) {
            ++res.report.boilerplate;
            continue;
        }
        if (cfg.collect_borderline) {
            if (stop >= cfg.stopword_ratio_threshold - cfg.borderline_margin) {
                res.borderline.emplace_back(text, "stopword ratio near threshold");
            } else if (latin < cfg.latin_ratio_threshold + cfg.borderline_margin) {
                res.borderline.emplace_back(text, "latin ratio near threshold");
            }
        }
        ++res.report.kept;
        res.kept.push_back(sample{text, tag});
    }
    return res;
}

inline std::string format_filter_report(const filter_report& r) {
    std::string out;
    auto line = [&out](std::string_view key, std::size_t value) {
        out += key;
        out += ' ';
        out += std::to_string(value);
        out += '\n';
    };
    line("input", r.input);
    line("kept", r.kept);
    line("removed.no_tag", r.no_tag);
    line("removed.duplicate", r.duplicate);
    line("removed.too_short", r.too_short);
    line("removed.non_latin", r.non_latin);
    line("removed.foreign_language", r.foreign_language);
    line("removed.boilerplate", r.boilerplate);
    line("removed.total", r.removed_total());
    return out;
}

} // namespace ortho
