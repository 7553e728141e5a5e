#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoclass/errors.hpp"
#include "orthoclass/model.hpp"
#include "orthoclass/version.hpp"

namespace ortho {

namespace detail {

inline std::string hex_encode(std::string_view bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

inline std::string hex_decode(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (hex.size() % 2 != 0) throw corrupt_error("odd-length hex string in vocabulary");
    std::string out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw corrupt_error("invalid hex digit in vocabulary");
        out.push_back(static_cast<char>((hi << 4) | lo));
    }
    return out;
}

// Vocabulary entries are hex-encoded: byte n-grams are arbitrary byte
// strings and must survive the trip losslessly.
inline nlohmann::json vectorizer_to_json(const vectorizer& v) {
    nlohmann::json j;
    j["analyzer"] = std::string(to_string(v.config.analyzer));
    j["n_min"] = v.config.n_min;
    j["n_max"] = v.config.n_max;
    j["max_features"] = v.config.max_features;
    j["lowercase"] = v.config.lowercase;
    std::vector<std::string> vocab(v.dim());
    for (const auto& [ngram, col] : v.vocabulary) vocab[col] = hex_encode(ngram);
    j["vocab"] = vocab;
    j["idf"] = v.idf;
    return j;
}

inline vectorizer vectorizer_from_json(const nlohmann::json& j) {
    vectorizer v;
    v.config.analyzer = parse_analyzer(j.at("analyzer").get<std::string>());
    v.config.n_min = j.at("n_min").get<std::size_t>();
    v.config.n_max = j.at("n_max").get<std::size_t>();
    v.config.max_features = j.at("max_features").get<std::size_t>();
    v.config.lowercase = j.at("lowercase").get<bool>();
    const auto& vocab = j.at("vocab");
    v.idf = j.at("idf").get<std::vector<double>>();
    if (!vocab.is_array() || vocab.size() != v.idf.size()) {
        throw corrupt_error("vocabulary/idf size mismatch");
    }
    v.vocabulary.reserve(vocab.size());
    for (std::uint32_t col = 0; col < vocab.size(); ++col) {
        v.vocabulary.emplace(hex_decode(vocab[col].get<std::string>()), col);
    }
    return v;
}

inline nlohmann::json classes_to_json(const std::vector<orthography>& classes) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto c : classes) arr.push_back(std::string(to_string(c)));
    return arr;
}

inline std::vector<orthography> classes_from_json(const nlohmann::json& arr) {
    std::vector<orthography> classes;
    for (const auto& s : arr) {
        const auto c = parse_orthography(s.get<std::string>());
        if (!c) throw corrupt_error("unknown class label '" + s.get<std::string>() + "'");
        classes.push_back(*c);
    }
    return classes;
}

} // namespace detail

inline nlohmann::json model_to_json(const trained_model& m) {
    nlohmann::json j;
    j["format_version"] = model_format_version;
    j["model_kind"] = std::string(to_string(m.kind()));
    j["classes"] = detail::classes_to_json(m.classes());

    nlohmann::json members = nlohmann::json::array();
    for (const auto& v : m.features.members) members.push_back(detail::vectorizer_to_json(v));
    j["feature_space"] = {{"members", members}};

    nlohmann::json params;
    if (const auto* lin = std::get_if<linear_model>(&m.impl)) {
        params["weights"] = lin->weights;
        params["bias"] = lin->bias;
    } else if (const auto* nb = std::get_if<nb_model>(&m.impl)) {
        params["alpha"] = nb->alpha;
        params["log_prior"] = nb->log_prior;
        params["log_likelihood"] = nb->log_likelihood;
    } else {
        const auto& rf = std::get<forest_model>(m.impl);
        params["n_trees"] = rf.n_trees;
        params["seed"] = rf.seed;
        params["feature_dim"] = rf.feature_dim;
        nlohmann::json trees = nlohmann::json::array();
        for (const auto& tree : rf.trees) {
            nlohmann::json t;
            std::vector<std::int32_t> feature, left, right;
            std::vector<double> threshold;
            nlohmann::json counts = nlohmann::json::array();
            for (const auto& nd : tree.nodes) {
                feature.push_back(nd.feature);
                threshold.push_back(nd.threshold);
                left.push_back(nd.left);
                right.push_back(nd.right);
                counts.push_back(nd.counts);
            }
            t["feature"] = feature;
            t["threshold"] = threshold;
            t["left"] = left;
            t["right"] = right;
            t["counts"] = counts;
            trees.push_back(std::move(t));
        }
        params["trees"] = std::move(trees);
    }
    j["parameters"] = std::move(params);
    return j;
}

inline void save_model(const trained_model& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path.string());
    out << model_to_json(m).dump() << '\n';
    out.flush();
    if (!out) throw io_error("write failed for " + path.string());
}

inline trained_model model_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("format_version") ||
        !j.at("format_version").is_number_integer()) {
        throw corrupt_error("model file carries no format_version");
    }
    const auto ver = j.at("format_version").get<int>();
    if (ver != model_format_version) {
        throw version_error("unsupported model format version " + std::to_string(ver) +
                            " (this build reads version " +
                            std::to_string(model_format_version) + ")");
    }
    try {
        trained_model m;
        const auto kind = parse_model_kind(j.at("model_kind").get<std::string>());
        const auto classes = detail::classes_from_json(j.at("classes"));
        for (const auto& member : j.at("feature_space").at("members")) {
            m.features.members.push_back(detail::vectorizer_from_json(member));
        }
        const auto& params = j.at("parameters");
        if (kind == model_kind::logreg || kind == model_kind::svm) {
            linear_model lin;
            lin.kind = kind == model_kind::logreg ? linear_kind::logreg : linear_kind::svm;
            lin.classes = classes;
            lin.weights = params.at("weights").get<std::vector<std::vector<double>>>();
            lin.bias = params.at("bias").get<std::vector<double>>();
            if (lin.weights.size() != classes.size() || lin.bias.size() != classes.size()) {
                throw corrupt_error("linear parameter shape mismatch");
            }
            m.impl = std::move(lin);
        } else if (kind == model_kind::nb) {
            nb_model nb;
            nb.classes = classes;
            nb.alpha = params.at("alpha").get<double>();
            nb.log_prior = params.at("log_prior").get<std::vector<double>>();
            nb.log_likelihood = params.at("log_likelihood").get<std::vector<std::vector<double>>>();
            if (nb.log_prior.size() != classes.size() ||
                nb.log_likelihood.size() != classes.size()) {
                throw corrupt_error("naive bayes parameter shape mismatch");
            }
            m.impl = std::move(nb);
        } else {
            forest_model rf;
            rf.classes = classes;
            rf.n_trees = params.at("n_trees").get<std::size_t>();
            rf.seed = params.at("seed").get<std::uint64_t>();
            rf.feature_dim = params.at("feature_dim").get<std::size_t>();
            for (const auto& t : params.at("trees")) {
                decision_tree tree;
                const auto feature = t.at("feature").get<std::vector<std::int32_t>>();
                const auto threshold = t.at("threshold").get<std::vector<double>>();
                const auto left = t.at("left").get<std::vector<std::int32_t>>();
                const auto right = t.at("right").get<std::vector<std::int32_t>>();
                const auto& counts = t.at("counts");
                if (threshold.size() != feature.size() || left.size() != feature.size() ||
                    right.size() != feature.size() || counts.size() != feature.size()) {
                    throw corrupt_error("forest node array shape mismatch");
                }
                tree.nodes.resize(feature.size());
                for (std::size_t i = 0; i < feature.size(); ++i) {
                    tree.nodes[i].feature = feature[i];
                    tree.nodes[i].threshold = threshold[i];
                    tree.nodes[i].left = left[i];
                    tree.nodes[i].right = right[i];
                    tree.nodes[i].counts = counts[i].get<std::vector<double>>();
                }
                rf.trees.push_back(std::move(tree));
            }
            m.impl = std::move(rf);
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw corrupt_error(std::string("model file structure invalid: ") + e.what());
    }
}

inline trained_model load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string content = buf.str();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        if (e.byte >= content.size()) {
            throw truncated_error("model file " + path.string() + " is truncated");
        }
        throw corrupt_error("model file " + path.string() + " is not valid JSON: " + e.what());
    }
    return model_from_json(j);
}

} // namespace ortho
