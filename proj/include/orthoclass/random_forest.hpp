#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "orthoclass/class_weights.hpp"
#include "orthoclass/errors.hpp"
#include "orthoclass/linear.hpp"
#include "orthoclass/orthography.hpp"
#include "orthoclass/sparse.hpp"

namespace ortho {

struct tree_node {
    std::int32_t feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::vector<double> counts; // leaf only: weighted class counts
};

struct decision_tree {
    std::vector<tree_node> nodes; // nodes[0] is the root

    bool operator==(const decision_tree&) const = default;
};

inline bool operator==(const tree_node& a, const tree_node& b) {
    return a.feature == b.feature && a.threshold == b.threshold && a.left == b.left &&
           a.right == b.right && a.counts == b.counts;
}

// Bagged Gini decision trees. Each tree sees its own bootstrap sample and
// ceil(sqrt(D)) candidate features per node; class weights are the balanced
// weights of the full training set, applied to both split selection and leaf
// counts.
struct forest_model {
    std::vector<orthography> classes; // K, sorted label order
    std::vector<decision_tree> trees;
    std::size_t n_trees = 100;
    std::uint64_t seed = 0;
    std::size_t feature_dim = 0;

    std::size_t dim() const { return feature_dim; }
};

struct rf_options {
    std::size_t n_trees = 100;
    std::uint64_t seed = 0;
};

namespace detail {

inline double feature_value(const sparse_vector& x, std::uint32_t f) {
    const auto it = std::lower_bound(x.indices.begin(), x.indices.end(), f);
    if (it == x.indices.end() || *it != f) return 0.0;
    return x.values[static_cast<std::size_t>(it - x.indices.begin())];
}

inline double gini(const std::vector<double>& counts, double total) {
    if (total <= 0.0) return 0.0;
    double s = 0.0;
    for (double c : counts) {
        const double p = c / total;
        s += p * p;
    }
    return 1.0 - s;
}

struct tree_builder {
    const std::vector<sparse_vector>& x;
    const std::vector<std::size_t>& y_idx;
    const std::vector<double>& weight_of_sample;
    std::size_t n_classes;
    std::size_t dim;
    std::mt19937_64& rng;
    std::vector<std::uint32_t> feature_order; // persistent partial-shuffle buffer

    decision_tree build(std::vector<std::uint32_t> ids) {
        decision_tree tree;
        grow(tree, std::move(ids));
        return tree;
    }

    // Returns the index of the node built from `ids`.
    std::int32_t grow(decision_tree& tree, std::vector<std::uint32_t> ids) {
        const auto node_id = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();

        std::vector<double> counts(n_classes, 0.0);
        double total = 0.0;
        for (auto i : ids) {
            counts[y_idx[i]] += weight_of_sample[i];
            total += weight_of_sample[i];
        }
        std::size_t present = 0;
        for (double c : counts) present += c > 0.0 ? 1 : 0;
        if (present <= 1) {
            tree.nodes[node_id].counts = std::move(counts);
            return node_id;
        }

        const auto m = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(dim))));
        for (std::size_t t = 0; t < m && t < dim; ++t) {
            const std::size_t j = t + static_cast<std::size_t>(rng() % (dim - t));
            std::swap(feature_order[t], feature_order[j]);
        }

        const double parent_gini = gini(counts, total);
        double best_decrease = 1e-12;
        std::uint32_t best_feature = 0;
        double best_threshold = 0.0;
        bool found = false;

        std::vector<std::pair<double, std::size_t>> vals(ids.size());
        std::vector<double> left_counts(n_classes);
        for (std::size_t t = 0; t < m && t < dim; ++t) {
            const std::uint32_t f = feature_order[t];
            for (std::size_t r = 0; r < ids.size(); ++r) {
                vals[r] = {feature_value(x[ids[r]], f), ids[r]};
            }
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (vals.front().first == vals.back().first) continue;

            std::fill(left_counts.begin(), left_counts.end(), 0.0);
            double left_total = 0.0;
            for (std::size_t r = 0; r + 1 < vals.size(); ++r) {
                const auto i = static_cast<std::uint32_t>(vals[r].second);
                left_counts[y_idx[i]] += weight_of_sample[i];
                left_total += weight_of_sample[i];
                if (vals[r].first == vals[r + 1].first) continue;
                const double right_total = total - left_total;
                const double child =
                    (left_total / total) * gini(left_counts, left_total) +
                    (right_total / total) * gini(right_counts(counts, left_counts), right_total);
                const double decrease = parent_gini - child;
                if (decrease > best_decrease) {
                    best_decrease = decrease;
                    best_feature = f;
                    best_threshold = 0.5 * (vals[r].first + vals[r + 1].first);
                    found = true;
                }
            }
        }

        if (!found) {
            tree.nodes[node_id].counts = std::move(counts);
            return node_id;
        }

        std::vector<std::uint32_t> left_ids, right_ids;
        for (auto i : ids) {
            (feature_value(x[i], best_feature) <= best_threshold ? left_ids : right_ids)
                .push_back(i);
        }
        ids.clear();
        ids.shrink_to_fit();

        tree.nodes[node_id].feature = static_cast<std::int32_t>(best_feature);
        tree.nodes[node_id].threshold = best_threshold;
        const auto left = grow(tree, std::move(left_ids));
        tree.nodes[node_id].left = left;
        const auto right = grow(tree, std::move(right_ids));
        tree.nodes[node_id].right = right;
        return node_id;
    }

    std::vector<double> scratch; // right = parent - left
    const std::vector<double>& right_counts(const std::vector<double>& parent,
                                            const std::vector<double>& left) {
        scratch.resize(parent.size());
        for (std::size_t c = 0; c < parent.size(); ++c) scratch[c] = parent[c] - left[c];
        return scratch;
    }
};

} // namespace detail

inline forest_model train_rf(const std::vector<sparse_vector>& x,
                             const std::vector<orthography>& y, const rf_options& opts = {}) {
    detail::check_training_input(x, y);
    if (opts.n_trees < 1) throw config_error("train_rf: need at least one tree");

    forest_model m;
    m.classes = sorted_label_order(y);
    m.n_trees = opts.n_trees;
    m.seed = opts.seed;
    m.feature_dim = x[0].dim;

    const auto y_idx = detail::class_index_of(y, m.classes);
    const auto cw = balanced_class_weights(y);
    std::vector<double> sw(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) sw[i] = cw.at(y[i]);

    const std::size_t n = x.size();
    m.trees.reserve(opts.n_trees);
    for (std::size_t tree_i = 0; tree_i < opts.n_trees; ++tree_i) {
        std::mt19937_64 rng(m.seed + tree_i);
        std::vector<std::uint32_t> bootstrap(n);
        for (auto& id : bootstrap) id = static_cast<std::uint32_t>(rng() % n);

        detail::tree_builder builder{x, y_idx, sw, m.classes.size(), m.feature_dim, rng, {}, {}};
        builder.feature_order.resize(m.feature_dim);
        for (std::uint32_t f = 0; f < m.feature_dim; ++f) builder.feature_order[f] = f;
        m.trees.push_back(builder.build(std::move(bootstrap)));
    }
    return m;
}

// Per-tree leaf distribution (weighted counts normalized to sum 1), averaged
// over trees.
inline std::vector<double> forest_scores(const forest_model& m, const sparse_vector& x) {
    std::vector<double> scores(m.classes.size(), 0.0);
    for (const auto& tree : m.trees) {
        std::int32_t node = 0;
        while (tree.nodes[node].feature >= 0) {
            const auto& nd = tree.nodes[node];
            node = detail::feature_value(x, static_cast<std::uint32_t>(nd.feature)) <= nd.threshold
                       ? nd.left
                       : nd.right;
        }
        const auto& counts = tree.nodes[node].counts;
        double total = 0.0;
        for (double c : counts) total += c;
        if (total > 0.0) {
            for (std::size_t c = 0; c < counts.size(); ++c) scores[c] += counts[c] / total;
        }
    }
    for (double& s : scores) s /= static_cast<double>(m.trees.size());
    return scores;
}

} // namespace ortho
