#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoclass/errors.hpp"
#include "orthoclass/orthography.hpp"

namespace ortho {

// One corpus line with its orthography tag.
struct sample {
    std::string text;
    orthography tag = orthography::no_tag;

    bool operator==(const sample&) const = default;
};

namespace detail {

inline std::string trim_copy(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace detail

// Parses one JSONL corpus line. line_no is 1-based and only used in messages.
inline sample parse_jsonl_line(const std::string& line, std::size_t line_no) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error("malformed line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("text") || !obj.contains("tag") ||
        !obj["text"].is_string() || !obj["tag"].is_string()) {
        throw parse_error("malformed line " + std::to_string(line_no) +
                          ": expected object with string fields \"text\" and \"tag\"");
    }
    const std::string tag_str = obj["tag"].get<std::string>();
    const auto tag = parse_orthography(tag_str);
    if (!tag) {
        throw parse_error("unknown tag " + tag_str + " at line " + std::to_string(line_no));
    }
    std::string text = obj["text"].get<std::string>();
    if (detail::trim_copy(text).empty()) {
        throw parse_error("malformed line " + std::to_string(line_no) + ": empty text");
    }
    if (text.find('\n') != std::string::npos) {
        throw parse_error("malformed line " + std::to_string(line_no) +
                          ": text contains a newline");
    }
    return sample{std::move(text), *tag};
}

inline std::vector<sample> load_jsonl(std::istream& in) {
    std::vector<sample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (detail::trim_copy(line).empty()) continue;
        samples.push_back(parse_jsonl_line(line, line_no));
    }
    return samples;
}

inline std::vector<sample> load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    return load_jsonl(in);
}

// Canonical record layout: fields "text" then "tag", one space after each
// colon, no trailing whitespace. Reading back a file written here reproduces
// it byte for byte (modulo the final newline).
inline std::string format_jsonl_line(const sample& s) {
    std::string out = "{\"text\": ";
    out += nlohmann::json(s.text).dump();
    out += ", \"tag\": \"";
    out += to_string(s.tag);
    out += "\"}";
    return out;
}

inline void write_jsonl(std::ostream& out, const std::vector<sample>& samples) {
    for (const auto& s : samples) out << format_jsonl_line(s) << '\n';
}

inline void write_jsonl(const std::filesystem::path& path, const std::vector<sample>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    write_jsonl(out, samples);
    out.flush();
    if (!out) throw io_error("write failed for " + path.string());
}

struct split_ratios {
    double train = 0.8;
    double valid = 0.1;
    double test = 0.1;
};

struct split_set {
    std::vector<sample> train;
    std::vector<sample> valid;
    std::vector<sample> test;
    std::uint64_t seed = 0;
    split_ratios ratios;
};

namespace detail {

// Deterministic Fisher-Yates; std::shuffle's draw pattern is not pinned by
// the standard, this one is.
template <typename T>
void fy_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

inline std::mt19937_64 class_rng(std::uint64_t seed, std::size_t class_ordinal) {
    return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + class_ordinal + 1);
}

} // namespace detail

// Per-class shuffle + cumulative-floor partition: a class of n samples
// contributes floor(r_train*n) to train, floor((r_train+r_valid)*n) -
// floor(r_train*n) to valid and the rest to test. Every split lands within
// one sample of its exact quota; a 3-sample class under 80/10/10 yields
// (2, 0, 1).
inline split_set stratified_split(const std::vector<sample>& samples, split_ratios ratios,
                                  std::uint64_t seed) {
    if (samples.empty()) throw error("stratified_split: empty input");
    const double sum = ratios.train + ratios.valid + ratios.test;
    if (ratios.train < 0 || ratios.valid < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9) {
        throw config_error("stratified_split: ratios must be non-negative and sum to 1");
    }

    std::array<std::vector<std::size_t>, n_taggable_classes + 1> by_class;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        by_class[static_cast<std::size_t>(samples[i].tag)].push_back(i);
    }

    split_set out;
    out.seed = seed;
    out.ratios = ratios;
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        auto& idx = by_class[c];
        if (idx.empty()) continue;
        auto rng = detail::class_rng(seed, c);
        detail::fy_shuffle(idx, rng);
        const double n = static_cast<double>(idx.size());
        const auto cut1 = static_cast<std::size_t>(std::floor(ratios.train * n + 1e-9));
        const auto cut2 = static_cast<std::size_t>(std::floor((ratios.train + ratios.valid) * n + 1e-9));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            auto& dst = k < cut1 ? out.train : k < cut2 ? out.valid : out.test;
            dst.push_back(samples[idx[k]]);
        }
    }
    return out;
}

// Per-class counts and fractions. fraction is count/total, 0 when the input
// is empty.
struct class_distribution_report {
    std::map<orthography, std::size_t> counts;
    std::map<orthography, double> fractions;
    std::size_t total = 0;
};

inline class_distribution_report class_distribution(const std::vector<sample>& samples) {
    class_distribution_report rep;
    for (auto c : taggable_classes) rep.counts[c] = 0;
    rep.counts[orthography::no_tag] = 0;
    for (const auto& s : samples) ++rep.counts[s.tag];
    rep.total = samples.size();
    for (const auto& [c, n] : rep.counts) {
        rep.fractions[c] = rep.total == 0 ? 0.0 : static_cast<double>(n) / rep.total;
    }
    return rep;
}

} // namespace ortho
