#pragma once

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoclass/corpus.hpp"
#include "orthoclass/errors.hpp"
#include "orthoclass/model.hpp"
#include "orthoclass/orthography.hpp"

namespace ortho {

// Rows are gold labels, columns predictions, in sorted label order.
struct confusion_matrix {
    std::vector<orthography> classes;
    std::vector<std::vector<std::size_t>> counts; // K x K

    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& row : counts) {
            for (auto c : row) t += c;
        }
        return t;
    }

    std::size_t index_of(orthography c) const {
        return static_cast<std::size_t>(
            std::find(classes.begin(), classes.end(), c) - classes.begin());
    }
};

// Class order is the sorted union of observed labels and any extra classes
// the caller wants rows for (typically the model's class list).
inline confusion_matrix make_confusion_matrix(const std::vector<orthography>& gold,
                                              const std::vector<orthography>& pred,
                                              const std::vector<orthography>& extra_classes = {}) {
    if (gold.empty() || gold.size() != pred.size()) {
        throw error("confusion matrix needs |gold| == |pred| >= 1");
    }
    std::vector<orthography> all(gold);
    all.insert(all.end(), pred.begin(), pred.end());
    all.insert(all.end(), extra_classes.begin(), extra_classes.end());
    confusion_matrix cm;
    cm.classes = sorted_label_order(all);
    cm.counts.assign(cm.classes.size(), std::vector<std::size_t>(cm.classes.size(), 0));
    for (std::size_t i = 0; i < gold.size(); ++i) {
        ++cm.counts[cm.index_of(gold[i])][cm.index_of(pred[i])];
    }
    return cm;
}

struct metrics_report {
    double overall_accuracy = 0.0;
    double avg_class_accuracy = 0.0; // macro recall over classes with gold samples
    std::map<orthography, double> per_class_accuracy;
    std::size_t n_correct = 0;
    std::size_t n_total = 0;
};

// per_class_accuracy holds entries only for classes with at least one gold
// sample; classes absent from the gold set do not enter the macro average.
inline metrics_report metrics(const confusion_matrix& cm) {
    metrics_report rep;
    rep.n_total = cm.total();
    if (rep.n_total == 0) throw error("metrics: empty confusion matrix");
    double recall_sum = 0.0;
    std::size_t present = 0;
    for (std::size_t g = 0; g < cm.classes.size(); ++g) {
        std::size_t row_sum = 0;
        for (auto c : cm.counts[g]) row_sum += c;
        if (row_sum == 0) continue;
        rep.n_correct += cm.counts[g][g];
        const double recall = static_cast<double>(cm.counts[g][g]) / row_sum;
        rep.per_class_accuracy[cm.classes[g]] = recall;
        recall_sum += recall;
        ++present;
    }
    rep.overall_accuracy = static_cast<double>(rep.n_correct) / rep.n_total;
    rep.avg_class_accuracy = present == 0 ? 0.0 : recall_sum / present;
    return rep;
}

// Highest validation accuracy wins; ties keep the earliest candidate.
inline std::string select_best(
    const std::vector<std::pair<std::string, const trained_model*>>& candidates,
    const std::vector<sample>& valid) {
    if (candidates.empty()) throw error("select_best: no candidates");
    if (valid.empty()) throw error("select_best: empty validation set");
    std::string best_id;
    double best_acc = -1.0;
    for (const auto& [id, model] : candidates) {
        std::size_t correct = 0;
        for (const auto& s : valid) {
            if (predict_text(*model, s.text).label == s.tag) ++correct;
        }
        const double acc = static_cast<double>(correct) / valid.size();
        if (acc > best_acc) {
            best_acc = acc;
            best_id = id;
        }
    }
    return best_id;
}

inline constexpr const char* unknown_label = "UNKNOWN";

struct bulk_line {
    std::string label; // class name, or UNKNOWN under the confidence floor
    double confidence = 0.0;
};

struct bulk_report {
    std::map<std::string, std::size_t> counts; // per predicted label
    std::map<std::string, double> percentages; // fractions of all lines
    double mean_confidence = 0.0;
    std::vector<bulk_line> lines; // one per input line, input order
};

// Classifies every line; with min_confidence set, lines under the floor are
// labeled UNKNOWN (the reported confidence is still the model's).
inline bulk_report bulk_classify(const trained_model& m, const std::vector<std::string>& lines,
                                 std::optional<double> min_confidence = std::nullopt) {
    bulk_report rep;
    double conf_sum = 0.0;
    rep.lines.reserve(lines.size());
    for (const auto& line : lines) {
        const auto p = predict_text(m, line);
        bulk_line bl;
        bl.confidence = p.confidence;
        bl.label = (min_confidence && p.confidence < *min_confidence)
                       ? unknown_label
                       : std::string(to_string(p.label));
        conf_sum += p.confidence;
        ++rep.counts[bl.label];
        rep.lines.push_back(std::move(bl));
    }
    for (const auto& [label, n] : rep.counts) {
        rep.percentages[label] = static_cast<double>(n) / lines.size();
    }
    rep.mean_confidence = lines.empty() ? 0.0 : conf_sum / lines.size();
    return rep;
}

struct class_accuracy_range {
    double best = 0.0;
    double worst = 0.0;
    double range = 0.0;
};

// Per-class best/worst/spread over a sweep of models.
inline std::map<orthography, class_accuracy_range> accuracy_range(
    const std::vector<std::map<orthography, double>>& per_model_class_accuracy) {
    if (per_model_class_accuracy.empty()) throw error("accuracy_range: no models");
    std::map<orthography, class_accuracy_range> out;
    for (const auto& model_acc : per_model_class_accuracy) {
        for (const auto& [c, acc] : model_acc) {
            auto it = out.find(c);
            if (it == out.end()) {
                out[c] = {acc, acc, 0.0};
            } else {
                it->second.best = std::max(it->second.best, acc);
                it->second.worst = std::min(it->second.worst, acc);
            }
        }
    }
    for (auto& [c, r] : out) r.range = r.best - r.worst;
    return out;
}

// Ranked gold->pred error pairs, most frequent first.
struct error_pair {
    orthography gold;
    orthography pred;
    std::size_t count = 0;
};

inline std::vector<error_pair> ranked_errors(const confusion_matrix& cm) {
    std::vector<error_pair> errors;
    for (std::size_t g = 0; g < cm.classes.size(); ++g) {
        for (std::size_t p = 0; p < cm.classes.size(); ++p) {
            if (g != p && cm.counts[g][p] > 0) {
                errors.push_back({cm.classes[g], cm.classes[p], cm.counts[g][p]});
            }
        }
    }
    std::sort(errors.begin(), errors.end(), [](const error_pair& a, const error_pair& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.gold != b.gold) return to_string(a.gold) < to_string(b.gold);
        return to_string(a.pred) < to_string(b.pred);
    });
    return errors;
}

inline std::string confusion_to_csv(const confusion_matrix& cm) {
    std::ostringstream out;
    out << "class";
    for (auto c : cm.classes) out << ',' << to_string(c);
    out << '\n';
    for (std::size_t g = 0; g < cm.classes.size(); ++g) {
        out << to_string(cm.classes[g]);
        for (auto n : cm.counts[g]) out << ',' << n;
        out << '\n';
    }
    return out.str();
}

inline std::string metrics_table(const metrics_report& rep) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "class              accuracy\n";
    for (const auto& [c, acc] : rep.per_class_accuracy) {
        out << std::left << std::setw(19) << to_string(c) << std::right << std::setw(6)
            << acc * 100.0 << "%\n";
    }
    out << std::left << std::setw(19) << "overall" << std::right << std::setw(6)
        << rep.overall_accuracy * 100.0 << "%\n";
    out << std::left << std::setw(19) << "avg class" << std::right << std::setw(6)
        << rep.avg_class_accuracy * 100.0 << "%\n";
    out << "correct " << rep.n_correct << " of " << rep.n_total << '\n';
    return out.str();
}

inline nlohmann::json metrics_to_json(const std::string& model_id, const metrics_report& rep,
                                      const confusion_matrix& cm) {
    nlohmann::json j;
    j["model"] = model_id;
    j["overall_accuracy"] = rep.overall_accuracy;
    j["avg_class_accuracy"] = rep.avg_class_accuracy;
    nlohmann::json per_class;
    for (const auto& [c, acc] : rep.per_class_accuracy) per_class[std::string(to_string(c))] = acc;
    j["per_class_accuracy"] = per_class;
    j["n_correct"] = rep.n_correct;
    j["n_total"] = rep.n_total;
    nlohmann::json classes = nlohmann::json::array();
    for (auto c : cm.classes) classes.push_back(std::string(to_string(c)));
    j["confusion"] = {{"classes", classes}, {"counts", cm.counts}};
    return j;
}

} // namespace ortho
