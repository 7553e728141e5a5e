#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "orthoclass/linear.hpp"
#include "orthoclass/model_io.hpp"
#include "orthoclass/naive_bayes.hpp"
#include "orthoclass/random_forest.hpp"
#include "orthoclass/tfidf.hpp"

using namespace ortho;
namespace fs = std::filesystem;

namespace {

struct temp_dir {
    fs::path path;
    temp_dir() {
        path = fs::temp_directory_path() /
               ("orthoclass_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~temp_dir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

// Small text problem with enough signal for every trainer.
struct fixture {
    std::vector<std::string> texts;
    std::vector<orthography> labels;
    feature_union features;
    std::vector<sparse_vector> x;

    fixture() {
        const std::vector<std::string> base_a = {"oeugg del coeur", "foeura del oeuv",
                                                 "coeur e oeugg", "el oeuv del coeur",
                                                 "oeugg foeura oeuv"};
        const std::vector<std::string> base_b = {"ögg del cör", "föra del öv", "cör e ögg",
                                                 "el öv del cör", "ögg föra öv"};
        for (std::size_t i = 0; i < base_a.size(); ++i) {
            texts.push_back(base_a[i]);
            labels.push_back(orthography::milclass);
            texts.push_back(base_b[i]);
            labels.push_back(orthography::locc);
        }
        ngram_config cfg;
        cfg.analyzer = analyzer_kind::chr;
        cfg.n_min = 1;
        cfg.n_max = 3;
        features = fit_union(texts, {cfg});
        for (const auto& t : texts) x.push_back(transform_union(features, t));
    }
};

std::vector<std::string> probe_texts() {
    std::mt19937_64 rng(8);
    const std::vector<std::string> words = {"oeugg", "ögg",  "coeur", "cör", "oeuv",
                                            "öv",    "del",  "foeura", "föra", "el"};
    std::vector<std::string> out;
    for (int i = 0; i < 100; ++i) {
        std::string t;
        const int len = 2 + static_cast<int>(rng() % 5);
        for (int w = 0; w < len; ++w) {
            if (w) t += ' ';
            t += words[rng() % words.size()];
        }
        out.push_back(t);
    }
    return out;
}

} // namespace

TEST_CASE("save/load round-trips all four model kinds bit-exactly") {
    fixture fx;
    temp_dir dir;
    const auto probes = probe_texts();

    std::vector<trained_model> models;
    {
        trained_model m;
        m.features = fx.features;
        m.impl = train_logreg(fx.x, fx.labels);
        models.push_back(std::move(m));
    }
    {
        trained_model m;
        m.features = fx.features;
        m.impl = train_svm(fx.x, fx.labels);
        models.push_back(std::move(m));
    }
    {
        trained_model m;
        m.features = fx.features;
        m.impl = train_nb(fx.x, fx.labels);
        models.push_back(std::move(m));
    }
    {
        trained_model m;
        m.features = fx.features;
        rf_options opts;
        opts.n_trees = 6;
        opts.seed = 3;
        m.impl = train_rf(fx.x, fx.labels, opts);
        models.push_back(std::move(m));
    }

    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto path = dir.path / ("model_" + std::to_string(i) + ".json");
        save_model(models[i], path);
        const auto loaded = load_model(path);
        CHECK(loaded.kind() == models[i].kind());
        CHECK(loaded.classes() == models[i].classes());
        for (const auto& text : probes) {
            const auto a = predict_text(models[i], text);
            const auto b = predict_text(loaded, text);
            CHECK(a.label == b.label);
            REQUIRE(a.scores.size() == b.scores.size());
            for (std::size_t c = 0; c < a.scores.size(); ++c) {
                CHECK(a.scores[c] == b.scores[c]); // bit-exact
            }
            CHECK(a.confidence == b.confidence);
        }
    }
}

TEST_CASE("byte n-gram vocabularies with non-UTF8 keys survive serialization") {
    // byte bigrams of multi-byte codepoints are not valid UTF-8 on their own
    const std::vector<std::string> corpus = {"öööab", "üüücd", "ab cd öü"};
    ngram_config cfg;
    cfg.analyzer = analyzer_kind::byte;
    cfg.n_min = 2;
    cfg.n_max = 3;
    trained_model m;
    m.features = fit_union(corpus, {cfg});
    std::vector<sparse_vector> x;
    for (const auto& t : corpus) x.push_back(transform_union(m.features, t));
    m.impl = train_nb(x, {orthography::locc, orthography::lorunif, orthography::milclass});

    temp_dir dir;
    const auto path = dir.path / "bytes.json";
    save_model(m, path);
    const auto loaded = load_model(path);
    REQUIRE(loaded.features.members.size() == 1);
    CHECK(loaded.features.members[0].vocabulary == m.features.members[0].vocabulary);
    CHECK(loaded.features.members[0].idf == m.features.members[0].idf);
}

TEST_CASE("unknown format version is a version error, not a partial model") {
    temp_dir dir;
    const auto path = dir.path / "future.json";
    {
        std::ofstream out(path);
        out << "{\"format_version\": 999, \"model_kind\": \"logreg\"}";
    }
    CHECK_THROWS_AS(load_model(path), version_error);
}

TEST_CASE("corrupt and truncated files raise distinct errors") {
    temp_dir dir;
    fixture fx;
    trained_model m;
    m.features = fx.features;
    m.impl = train_nb(fx.x, fx.labels);
    const auto good = dir.path / "good.json";
    save_model(m, good);

    // truncation: cut the file in half
    std::ifstream in(good, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const auto cut = dir.path / "cut.json";
    {
        std::ofstream out(cut, std::ios::binary);
        out << content.substr(0, content.size() / 2);
    }
    CHECK_THROWS_AS(load_model(cut), truncated_error);

    // corruption: valid JSON, wrong structure
    const auto broken = dir.path / "broken.json";
    {
        std::ofstream out(broken);
        out << "{\"format_version\": 1, \"model_kind\": \"nb\", \"classes\": [\"SL\"]}";
    }
    CHECK_THROWS_AS(load_model(broken), corrupt_error);

    // not JSON at all, error space cut mid-token
    const auto garbage = dir.path / "garbage.json";
    {
        std::ofstream out(garbage);
        out << "{\"format_version\": oops}";
    }
    CHECK_THROWS_AS(load_model(garbage), corrupt_error);

    CHECK_THROWS_AS(load_model(dir.path / "missing.json"), io_error);
}
