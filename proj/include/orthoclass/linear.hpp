#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "orthoclass/class_weights.hpp"
#include "orthoclass/errors.hpp"
#include "orthoclass/lbfgs.hpp"
#include "orthoclass/orthography.hpp"
#include "orthoclass/sparse.hpp"

namespace ortho {

enum class linear_kind { logreg, svm };

// Multiclass linear classifier: decision_k(x) = weights[k].x + bias[k].
// logreg scores are softmaxed at prediction time, svm scores are the raw
// one-vs-rest decisions.
struct linear_model {
    linear_kind kind = linear_kind::logreg;
    std::vector<orthography> classes; // K entries, sorted label order
    std::vector<std::vector<double>> weights; // K x D
    std::vector<double> bias;                 // K

    std::size_t dim() const { return weights.empty() ? 0 : weights[0].size(); }
};

namespace detail {

inline void check_training_input(const std::vector<sparse_vector>& x,
                                 const std::vector<orthography>& y) {
    if (x.empty() || x.size() != y.size()) {
        throw train_error("training needs a non-empty X with |X| == |y|");
    }
    for (const auto& v : x) {
        for (double val : v.values) {
            if (!std::isfinite(val)) throw train_error("non-finite feature value");
        }
    }
}

inline std::vector<std::size_t> class_index_of(const std::vector<orthography>& y,
                                               const std::vector<orthography>& classes) {
    std::vector<std::size_t> idx(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto it = std::find(classes.begin(), classes.end(), y[i]);
        idx[i] = static_cast<std::size_t>(it - classes.begin());
    }
    return idx;
}

} // namespace detail

// Weighted multinomial cross-entropy with an L2 penalty on the weights
// (bias unpenalized):
//   J(W,b) = sum_i w_{y_i} * (logsumexp_k z_ik - z_iy_i) + (l2/2) * ||W||^2
// Parameter layout: theta = [W row-major (K*D), b (K)].
struct logreg_objective {
    const std::vector<sparse_vector>& x;
    const std::vector<std::size_t>& y_idx;      // class index per sample
    const std::vector<double>& sample_weights;  // balanced weight per sample
    std::size_t n_classes;
    std::size_t dim;
    double l2;

    double operator()(const std::vector<double>& theta, std::vector<double>& grad) const {
        const std::size_t k = n_classes, d = dim;
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        std::vector<double> z(k), p(k);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto& xi = x[i];
            for (std::size_t c = 0; c < k; ++c) {
                double s = theta[k * d + c]; // bias
                const double* w = theta.data() + c * d;
                for (std::size_t t = 0; t < xi.indices.size(); ++t) {
                    s += w[xi.indices[t]] * xi.values[t];
                }
                z[c] = s;
            }
            const double zmax = *std::max_element(z.begin(), z.end());
            double sum = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                p[c] = std::exp(z[c] - zmax);
                sum += p[c];
            }
            const double wi = sample_weights[i];
            loss += wi * (std::log(sum) + zmax - z[y_idx[i]]);
            for (std::size_t c = 0; c < k; ++c) {
                const double g = wi * (p[c] / sum - (c == y_idx[i] ? 1.0 : 0.0));
                double* gw = grad.data() + c * d;
                for (std::size_t t = 0; t < xi.indices.size(); ++t) {
                    gw[xi.indices[t]] += g * xi.values[t];
                }
                grad[k * d + c] += g;
            }
        }
        for (std::size_t j = 0; j < k * d; ++j) {
            loss += 0.5 * l2 * theta[j] * theta[j];
            grad[j] += l2 * theta[j];
        }
        return loss;
    }
};

struct logreg_options {
    std::size_t max_iter = 1000;
    double tol = 1e-4;
    double l2 = 1.0;
};

inline linear_model train_logreg(const std::vector<sparse_vector>& x,
                                 const std::vector<orthography>& y,
                                 const logreg_options& opts = {}) {
    detail::check_training_input(x, y);
    linear_model m;
    m.kind = linear_kind::logreg;
    m.classes = sorted_label_order(y);
    if (m.classes.size() < 2) throw train_error("logistic regression needs at least 2 classes");

    const std::size_t k = m.classes.size();
    const std::size_t d = x[0].dim;
    const auto y_idx = detail::class_index_of(y, m.classes);
    const auto cw = balanced_class_weights(y);
    std::vector<double> sw(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) sw[i] = cw.at(y[i]);

    logreg_objective obj{x, y_idx, sw, k, d, opts.l2};
    lbfgs_options lopts;
    lopts.max_iter = opts.max_iter;
    lopts.grad_tol = opts.tol;
    auto res = lbfgs_minimize([&obj](const std::vector<double>& t, std::vector<double>& g) {
        return obj(t, g);
    }, std::vector<double>(k * d + k, 0.0), lopts);

    m.weights.assign(k, std::vector<double>(d));
    m.bias.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::copy(res.x.begin() + c * d, res.x.begin() + (c + 1) * d, m.weights[c].begin());
        m.bias[c] = res.x[k * d + c];
    }
    return m;
}

// One-vs-rest hinge objective for class k with targets s_i = +/-1:
//   F(w,b) = 0.5*||w||^2 + C * sum_i w_{y_i} * max(0, 1 - s_i*(w.x_i+b))^p
// p = 2 (squared hinge, default) or 1. Layout: theta = [w (D), b].
struct svm_objective {
    const std::vector<sparse_vector>& x;
    const std::vector<double>& targets;         // +1 / -1
    const std::vector<double>& sample_weights;
    std::size_t dim;
    double c;
    bool squared;

    double operator()(const std::vector<double>& theta, std::vector<double>& grad) const {
        const std::size_t d = dim;
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            loss += 0.5 * theta[j] * theta[j];
            grad[j] += theta[j];
        }
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto& xi = x[i];
            double f = theta[d];
            for (std::size_t t = 0; t < xi.indices.size(); ++t) {
                f += theta[xi.indices[t]] * xi.values[t];
            }
            const double margin = 1.0 - targets[i] * f;
            if (margin <= 0.0) continue;
            const double wi = sample_weights[i];
            double dcoef;
            if (squared) {
                loss += c * wi * margin * margin;
                dcoef = -2.0 * c * wi * margin * targets[i];
            } else {
                loss += c * wi * margin;
                dcoef = -c * wi * targets[i];
            }
            for (std::size_t t = 0; t < xi.indices.size(); ++t) {
                grad[xi.indices[t]] += dcoef * xi.values[t];
            }
            grad[d] += dcoef;
        }
        return loss;
    }
};

struct svm_options {
    std::size_t max_iter = 4000;
    double c = 1.0;
    double tol = 1e-4;
    bool squared_hinge = true;
};

inline linear_model train_svm(const std::vector<sparse_vector>& x,
                              const std::vector<orthography>& y,
                              const svm_options& opts = {}) {
    detail::check_training_input(x, y);
    linear_model m;
    m.kind = linear_kind::svm;
    m.classes = sorted_label_order(y);
    if (m.classes.size() < 2) throw train_error("SVM needs at least 2 classes");

    const std::size_t k = m.classes.size();
    const std::size_t d = x[0].dim;
    const auto cw = balanced_class_weights(y);
    std::vector<double> sw(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) sw[i] = cw.at(y[i]);

    m.weights.assign(k, std::vector<double>(d));
    m.bias.resize(k);
    std::vector<double> targets(y.size());
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            targets[i] = (y[i] == m.classes[c]) ? 1.0 : -1.0;
        }
        svm_objective obj{x, targets, sw, d, opts.c, opts.squared_hinge};
        lbfgs_options lopts;
        lopts.max_iter = opts.max_iter;
        lopts.grad_tol = opts.tol;
        auto res = lbfgs_minimize([&obj](const std::vector<double>& t, std::vector<double>& g) {
            return obj(t, g);
        }, std::vector<double>(d + 1, 0.0), lopts);
        std::copy(res.x.begin(), res.x.begin() + d, m.weights[c].begin());
        m.bias[c] = res.x[d];
    }
    return m;
}

} // namespace ortho
