#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "orthoclass/errors.hpp"
#include "orthoclass/linear.hpp"
#include "orthoclass/naive_bayes.hpp"
#include "orthoclass/random_forest.hpp"
#include "orthoclass/sparse.hpp"
#include "orthoclass/tfidf.hpp"

namespace ortho {

struct prediction {
    orthography label = orthography::no_tag;
    std::vector<double> scores; // one per model class, same order as classes()
    double confidence = 0.0;    // in [0,1]
};

enum class model_kind { logreg, svm, nb, rf };

inline std::string_view to_string(model_kind k) {
    switch (k) {
        case model_kind::logreg: return "logreg";
        case model_kind::svm:    return "svm";
        case model_kind::nb:     return "nb";
        case model_kind::rf:     return "rf";
    }
    return "logreg";
}

inline model_kind parse_model_kind(std::string_view s) {
    if (s == "logreg") return model_kind::logreg;
    if (s == "svm")    return model_kind::svm;
    if (s == "nb")     return model_kind::nb;
    if (s == "rf")     return model_kind::rf;
    throw config_error("unknown model kind '" + std::string(s) + "'");
}

// A fitted classifier together with the feature space it was trained on.
// Immutable after training; safe for concurrent prediction.
struct trained_model {
    std::variant<linear_model, nb_model, forest_model> impl;
    feature_union features;

    model_kind kind() const {
        if (const auto* lin = std::get_if<linear_model>(&impl)) {
            return lin->kind == linear_kind::logreg ? model_kind::logreg : model_kind::svm;
        }
        if (std::holds_alternative<nb_model>(impl)) return model_kind::nb;
        return model_kind::rf;
    }

    const std::vector<orthography>& classes() const {
        if (const auto* lin = std::get_if<linear_model>(&impl)) return lin->classes;
        if (const auto* nb = std::get_if<nb_model>(&impl)) return nb->classes;
        return std::get<forest_model>(impl).classes;
    }

    std::size_t dim() const {
        if (const auto* lin = std::get_if<linear_model>(&impl)) return lin->dim();
        if (const auto* nb = std::get_if<nb_model>(&impl)) return nb->dim();
        return std::get<forest_model>(impl).dim();
    }
};

namespace detail {

inline std::vector<double> softmax(const std::vector<double>& z) {
    std::vector<double> p(z.size());
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        p[i] = std::exp(z[i] - zmax);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

// First maximum wins, so ties resolve to the lowest class index.
inline std::size_t argmax(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

} // namespace detail

// Scores per kind: logreg = softmax probabilities; svm = raw one-vs-rest
// decision values (confidence is their softmax, uncalibrated); nb = log joint
// scores (confidence likewise softmaxed); rf = averaged leaf distributions.
inline prediction predict(const trained_model& m, const sparse_vector& x) {
    if (x.dim != m.dim()) {
        throw error("predict: feature dimension " + std::to_string(x.dim) +
                    " does not match model dimension " + std::to_string(m.dim()));
    }
    prediction out;
    if (const auto* lin = std::get_if<linear_model>(&m.impl)) {
        std::vector<double> z(lin->classes.size());
        for (std::size_t c = 0; c < z.size(); ++c) z[c] = dot(lin->weights[c], x) + lin->bias[c];
        const auto probs = detail::softmax(z);
        if (lin->kind == linear_kind::logreg) {
            out.scores = probs;
        } else {
            out.scores = z;
        }
        out.confidence = probs[detail::argmax(out.scores)];
    } else if (const auto* nb = std::get_if<nb_model>(&m.impl)) {
        std::vector<double> z(nb->classes.size());
        for (std::size_t c = 0; c < z.size(); ++c) {
            z[c] = nb->log_prior[c] + dot(nb->log_likelihood[c], x);
        }
        out.scores = z;
        out.confidence = detail::softmax(z)[detail::argmax(z)];
    } else {
        const auto& rf = std::get<forest_model>(m.impl);
        out.scores = forest_scores(rf, x);
        out.confidence = out.scores[detail::argmax(out.scores)];
    }
    out.label = m.classes()[detail::argmax(out.scores)];
    return out;
}

inline prediction predict_text(const trained_model& m, std::string_view text) {
    return predict(m, transform_union(m.features, text));
}

} // namespace ortho
