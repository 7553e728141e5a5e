#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orthoclass/errors.hpp"
#include "orthoclass/filters.hpp"
#include "orthoclass/wikitext.hpp"

namespace ortho {

struct ingest_config {
    tag_map tags;
    filter_config filters;
};

// Template names mirror the orthography template conventions on the live
// wiki (GrafCat family plus the long-form orthography names). They are
// expected to need maintenance as conventions drift; override via the
// config file rather than editing code.
inline ingest_config default_ingest_config() {
    ingest_config cfg;
    const std::vector<std::pair<std::string, orthography>> tags = {
        {"GrafMIL", orthography::milclass},
        {"Ortografia milanesa", orthography::milclass},
        {"Grafia classega", orthography::milclass},
        {"GrafLOCC", orthography::locc},
        {"Urtugrafia insübrica ünificada", orthography::locc},
        {"Grafia insubrica unificada", orthography::locc},
        {"GrafLORUNIF", orthography::lorunif},
        {"Ortograféa orientàl ünificàda", orthography::lorunif},
        {"Grafia oriental unificada", orthography::lorunif},
        {"GrafSL", orthography::sl},
        {"Scriver Lombard", orthography::sl},
        {"GrafNOL", orthography::nol},
        {"Noeuva Ortografia Lombarda", orthography::nol},
        {"GrafCRES", orthography::cres},
        {"Urtugrafìa Cremàsca", orthography::cres},
        {"GrafBREMOD", orthography::bremod},
        {"Ortografìa bresàna modèrna", orthography::bremod},
        {"GrafBERGDUC", orthography::bergduc},
        {"Ortograféa del Dücat", orthography::bergduc},
        {"GrafLSI", orthography::lsi},
        {"Grafia LSI", orthography::lsi},
    };
    for (const auto& [name, cls] : tags) cfg.tags.add(name, cls);

    cfg.filters.boilerplate_patterns = {
        // bot-generated year articles ("... l'è 'n ann del secol ...")
        "ann del secol",
        "a l'è on ann",
        // town/municipality stubs
        "l'è (on|un|'n) comun",
        "l'è (ona|una|'na) (citaa|cità|sità)",
        // railway/station stubs
        "stazion (del tren|ferroviaria)",
    };
    cfg.filters.stopwords_italian = {
        "della", "delle", "degli", "dello", "nella", "nelle", "negli", "dalla", "dallo",
        "dalle", "sulla", "sulle", "sugli", "anche", "sono",  "essere", "stato", "stata",
        "questo", "questa", "questi", "queste", "quale", "quali", "più",  "città", "dove",
        "molto", "dopo",  "viene", "però",  "già",   "ancora", "sempre", "tutti", "tutte",
        "altro", "altri", "altre", "secondo", "durante", "contro", "presso", "verso",
        "quindi", "inoltre", "infatti", "mentre", "ogni", "loro", "quando", "perché",
        "foriginariamente", "attualmente",
    };
    cfg.filters.stopwords_english = {
        "the",  "and",  "of",    "to",    "is",    "was",   "for",   "with", "that",
        "this", "from", "are",   "were",  "has",   "have",  "been",  "its",  "also",
        "which", "their", "other", "into", "after", "first", "second", "new", "used",
        "known", "called", "during", "between", "about", "where", "when", "they",
    };
    return cfg;
}

inline nlohmann::json ingest_config_to_json(const ingest_config& cfg) {
    nlohmann::json j;
    nlohmann::json tag_obj = nlohmann::json::object();
    for (const auto& [name, cls] : cfg.tags.entries()) {
        tag_obj[name] = std::string(to_string(cls));
    }
    j["tag_map"] = tag_obj;
    j["filter"] = {
        {"min_words", cfg.filters.min_words},
        {"dedup", cfg.filters.dedup},
        {"latin_ratio_threshold", cfg.filters.latin_ratio_threshold},
        {"stopword_ratio_threshold", cfg.filters.stopword_ratio_threshold},
        {"boilerplate_patterns", cfg.filters.boilerplate_patterns},
        {"stopwords", {{"italian", cfg.filters.stopwords_italian},
                       {"english", cfg.filters.stopwords_english}}},
    };
    return j;
}

inline ingest_config ingest_config_from_json(const nlohmann::json& j) {
    ingest_config cfg;
    try {
        for (const auto& [name, cls_str] : j.at("tag_map").items()) {
            const auto cls = parse_orthography(cls_str.get<std::string>());
            if (!cls) {
                throw config_error("tag_map maps '" + name + "' to unknown class '" +
                                   cls_str.get<std::string>() + "'");
            }
            cfg.tags.add(name, *cls);
        }
        const auto& f = j.at("filter");
        cfg.filters.min_words = f.at("min_words").get<std::size_t>();
        cfg.filters.dedup = f.at("dedup").get<bool>();
        cfg.filters.latin_ratio_threshold = f.at("latin_ratio_threshold").get<double>();
        cfg.filters.stopword_ratio_threshold = f.at("stopword_ratio_threshold").get<double>();
        cfg.filters.boilerplate_patterns =
            f.at("boilerplate_patterns").get<std::vector<std::string>>();
        cfg.filters.stopwords_italian =
            f.at("stopwords").at("italian").get<std::vector<std::string>>();
        cfg.filters.stopwords_english =
            f.at("stopwords").at("english").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("ingest config structure invalid: ") + e.what());
    }
    validate(cfg.filters);
    detail::compile_filters(cfg.filters); // reject bad regexes at load time
    return cfg;
}

inline ingest_config load_ingest_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return ingest_config_from_json(j);
}

} // namespace ortho
