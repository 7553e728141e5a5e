#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthoclass/errors.hpp"

namespace ortho {

// The nine orthographic systems a line can be tagged with, plus no_tag for
// lines whose article carries no orthography template. no_tag is never a
// training label.
enum class orthography {
    milclass,
    locc,
    lorunif,
    sl,
    nol,
    cres,
    bremod,
    bergduc,
    lsi,
    no_tag,
};

inline constexpr std::size_t n_taggable_classes = 9;

inline constexpr std::array<orthography, n_taggable_classes> taggable_classes = {
    orthography::milclass, orthography::locc,    orthography::lorunif,
    orthography::sl,       orthography::nol,     orthography::cres,
    orthography::bremod,   orthography::bergduc, orthography::lsi,
};

inline std::string_view to_string(orthography c) {
    switch (c) {
        case orthography::milclass: return "MILCLASS";
        case orthography::locc:     return "LOCC";
        case orthography::lorunif:  return "LORUNIF";
        case orthography::sl:       return "SL";
        case orthography::nol:      return "NOL";
        case orthography::cres:     return "CRES";
        case orthography::bremod:   return "BREMOD";
        case orthography::bergduc:  return "BERGDUC";
        case orthography::lsi:      return "LSI";
        case orthography::no_tag:   return "NO_TAG";
    }
    return "NO_TAG";
}

// Unique labels in lexicographic name order; the canonical class ordering
// fixed at training time.
inline std::vector<orthography> sorted_label_order(const std::vector<orthography>& labels) {
    std::vector<orthography> classes(labels);
    std::sort(classes.begin(), classes.end(),
              [](orthography a, orthography b) { return to_string(a) < to_string(b); });
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    return classes;
}

// Case-sensitive: tag strings are machine-generated and silent folding would
// hide corpus defects.
inline std::optional<orthography> parse_orthography(std::string_view s) {
    if (s == "MILCLASS") return orthography::milclass;
    if (s == "LOCC")     return orthography::locc;
    if (s == "LORUNIF")  return orthography::lorunif;
    if (s == "SL")       return orthography::sl;
    if (s == "NOL")      return orthography::nol;
    if (s == "CRES")     return orthography::cres;
    if (s == "BREMOD")   return orthography::bremod;
    if (s == "BERGDUC")  return orthography::bergduc;
    if (s == "LSI")      return orthography::lsi;
    if (s == "NO_TAG")   return orthography::no_tag;
    return std::nullopt;
}

} // namespace ortho
