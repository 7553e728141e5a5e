#pragma once

#include <map>
#include <vector>

#include "orthoclass/errors.hpp"
#include "orthoclass/orthography.hpp"

namespace ortho {

// w_c = N / (K * N_c) over the classes actually present, so each class
// contributes equal total weight: sum_c w_c * N_c = N.
inline std::map<orthography, double> balanced_class_weights(const std::vector<orthography>& labels) {
    if (labels.empty()) throw error("balanced_class_weights: empty label list");
    std::map<orthography, std::size_t> counts;
    for (auto c : labels) ++counts[c];
    const double n = static_cast<double>(labels.size());
    const double k = static_cast<double>(counts.size());
    std::map<orthography, double> weights;
    for (const auto& [c, nc] : counts) weights[c] = n / (k * static_cast<double>(nc));
    return weights;
}

} // namespace ortho
