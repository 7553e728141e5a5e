#pragma once

#include <cmath>
#include <vector>

#include "orthoclass/class_weights.hpp"
#include "orthoclass/errors.hpp"
#include "orthoclass/linear.hpp"
#include "orthoclass/orthography.hpp"
#include "orthoclass/sparse.hpp"

namespace ortho {

// Multinomial Naive Bayes over non-negative feature values.
//   theta_{c,t} = (count_{c,t} + alpha) / (sum_t count_{c,t} + alpha*D)
//   score(c|x)  = log P(c) + sum_t x_t * log theta_{c,t}
struct nb_model {
    std::vector<orthography> classes;               // K, sorted label order
    std::vector<double> log_prior;                  // K
    std::vector<std::vector<double>> log_likelihood; // K x D
    double alpha = 1.0;

    std::size_t dim() const { return log_likelihood.empty() ? 0 : log_likelihood[0].size(); }
};

struct nb_options {
    double alpha = 1.0;
    // The weighted variant multiplies each sample's feature contribution by
    // its balanced class weight. Off by default: priors follow raw counts.
    bool balanced = false;
};

inline nb_model train_nb(const std::vector<sparse_vector>& x, const std::vector<orthography>& y,
                         const nb_options& opts = {}) {
    detail::check_training_input(x, y);
    for (const auto& v : x) {
        for (double val : v.values) {
            if (val < 0.0) throw train_error("naive bayes requires non-negative feature values");
        }
    }
    nb_model m;
    m.alpha = opts.alpha;
    m.classes = sorted_label_order(y);
    const std::size_t k = m.classes.size();
    const std::size_t d = x[0].dim;

    std::map<orthography, double> cw;
    if (opts.balanced) cw = balanced_class_weights(y);

    const auto y_idx = detail::class_index_of(y, m.classes);
    std::vector<std::vector<double>> counts(k, std::vector<double>(d, 0.0));
    std::vector<double> class_n(k, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = opts.balanced ? cw.at(y[i]) : 1.0;
        class_n[y_idx[i]] += 1.0;
        axpy(w, x[i], counts[y_idx[i]]);
    }

    m.log_prior.resize(k);
    m.log_likelihood.assign(k, std::vector<double>(d));
    const double n = static_cast<double>(x.size());
    for (std::size_t c = 0; c < k; ++c) {
        m.log_prior[c] = std::log(class_n[c] / n);
        double total = 0.0;
        for (double v : counts[c]) total += v;
        const double denom = total + opts.alpha * static_cast<double>(d);
        for (std::size_t t = 0; t < d; ++t) {
            m.log_likelihood[c][t] = std::log((counts[c][t] + opts.alpha) / denom);
        }
    }
    return m;
}

} // namespace ortho
