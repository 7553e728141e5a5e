// orthoclass: build an orthography-tagged corpus from a MediaWiki dump,
// train n-gram classifiers on it, and tag new text.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orthoclass/corpus.hpp"
#include "orthoclass/filters.hpp"
#include "orthoclass/ingest_config.hpp"
#include "orthoclass/linear.hpp"
#include "orthoclass/metrics.hpp"
#include "orthoclass/model.hpp"
#include "orthoclass/model_io.hpp"
#include "orthoclass/naive_bayes.hpp"
#include "orthoclass/random_forest.hpp"
#include "orthoclass/tfidf.hpp"
#include "orthoclass/version.hpp"
#include "orthoclass/wiki_xml.hpp"
#include "orthoclass/wikitext.hpp"

namespace fs = std::filesystem;

namespace {

struct ingest_args {
    std::string dump;
    std::string config;
    std::string out_dir;
    bool review = false;
};

struct split_args {
    std::string in;
    std::string out_dir;
    std::string ratios = "0.8,0.1,0.1";
    std::uint64_t seed = 42;
};

struct train_args {
    std::string model;
    std::string features;
    std::string train_path;
    std::string valid_path;
    std::string out;
    std::size_t ngram_min = 1;
    std::size_t ngram_max = 4;
    std::size_t max_features = 10000;
    bool no_lowercase = false;
    std::uint64_t seed = 42;
    std::size_t max_iter = 0; // 0 = per-model default
    double tol = 1e-4;
    double l2 = 1.0;
    double svm_c = 1.0;
    bool plain_hinge = false;
    double alpha = 1.0;
    bool weighted_nb = false;
    std::size_t trees = 100;
};

struct evaluate_args {
    std::string model;
    std::string test;
    std::string confusion;
    std::string json;
};

struct classify_args {
    std::string model;
    std::string input;
    double min_confidence = -1.0;
    bool jsonl = false;
    bool echo = false;
};

ortho::ingest_config resolve_ingest_config(const std::string& flag_path) {
    if (!flag_path.empty()) return ortho::load_ingest_config(flag_path);
    if (const char* env = std::getenv("ORTHOCLASS_CONFIG"); env && *env) {
        return ortho::load_ingest_config(env);
    }
    return ortho::default_ingest_config();
}

int cmd_ingest(const ingest_args& args) {
    const auto cfg_base = resolve_ingest_config(args.config);
    std::ifstream dump(args.dump, std::ios::binary);
    if (!dump) throw ortho::io_error("cannot open dump " + args.dump);

    fs::create_directories(args.out_dir);
    const fs::path corpus_path = fs::path(args.out_dir) / "corpus.jsonl";
    const fs::path untagged_path = fs::path(args.out_dir) / "untagged.jsonl";
    const fs::path report_path = fs::path(args.out_dir) / "filter_report.txt";
    const fs::path review_path = fs::path(args.out_dir) / "review.txt";

    try {
        std::vector<std::pair<std::string, ortho::orthography>> lines;
        ortho::page_reader reader(dump);
        std::size_t pages = 0, multi_tag_pages = 0;
        while (auto page = reader.next()) {
            ++pages;
            bool multiple = false;
            const auto cls = ortho::detect_orthography_tag(page->wikitext, cfg_base.tags, &multiple);
            if (multiple) {
                ++multi_tag_pages;
                std::cerr << "warning: multiple orthography templates in '" << page->title
                          << "', keeping the first\n";
            }
            for (auto& line : ortho::strip_markup(page->wikitext)) {
                lines.emplace_back(std::move(line), cls);
            }
        }

        ortho::filter_config fcfg = cfg_base.filters;
        fcfg.collect_borderline = args.review;
        const auto result = ortho::filter_lines(lines, fcfg);

        ortho::write_jsonl(corpus_path, result.kept);
        std::vector<ortho::sample> untagged;
        untagged.reserve(result.untagged.size());
        for (const auto& text : result.untagged) {
            untagged.push_back(ortho::sample{text, ortho::orthography::no_tag});
        }
        ortho::write_jsonl(untagged_path, untagged);
        {
            std::ofstream rep(report_path, std::ios::binary);
            if (!rep) throw ortho::io_error("cannot write " + report_path.string());
            rep << "pages " << pages << '\n' << ortho::format_filter_report(result.report);
        }
        if (args.review) {
            std::ofstream rev(review_path, std::ios::binary);
            if (!rev) throw ortho::io_error("cannot write " + review_path.string());
            for (const auto& [line, reason] : result.borderline) {
                rev << reason << '\t' << line << '\n';
            }
        }

        std::cout << "pages " << pages << '\n'
                  << ortho::format_filter_report(result.report);
        if (multi_tag_pages > 0) {
            std::cerr << multi_tag_pages << " page(s) carried more than one orthography template\n";
        }
        return 0;
    } catch (...) {
        // no partial outputs on failure
        std::error_code ec;
        fs::remove(corpus_path, ec);
        fs::remove(untagged_path, ec);
        fs::remove(report_path, ec);
        fs::remove(review_path, ec);
        throw;
    }
}

ortho::split_ratios parse_ratios(const std::string& text) {
    std::array<double, 3> r{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const auto comma = text.find(',', pos);
        const std::string part = comma == std::string::npos ? text.substr(pos)
                                                            : text.substr(pos, comma - pos);
        try {
            r[i] = std::stod(part);
        } catch (const std::exception&) {
            throw ortho::config_error("cannot parse ratio '" + part + "'");
        }
        if (comma == std::string::npos) {
            if (i != 2) throw ortho::config_error("--ratios needs three comma-separated values");
            pos = text.size();
        } else {
            pos = comma + 1;
        }
    }
    if (pos < text.size()) throw ortho::config_error("--ratios needs exactly three values");
    return ortho::split_ratios{r[0], r[1], r[2]};
}

int cmd_split(const split_args& args) {
    const auto samples = ortho::load_jsonl(args.in);
    const auto split = ortho::stratified_split(samples, parse_ratios(args.ratios), args.seed);
    fs::create_directories(args.out_dir);
    ortho::write_jsonl(fs::path(args.out_dir) / "train.jsonl", split.train);
    ortho::write_jsonl(fs::path(args.out_dir) / "valid.jsonl", split.valid);
    ortho::write_jsonl(fs::path(args.out_dir) / "test.jsonl", split.test);
    std::cout << "train " << split.train.size() << '\n'
              << "valid " << split.valid.size() << '\n'
              << "test " << split.test.size() << '\n';
    return 0;
}

std::vector<ortho::ngram_config> parse_feature_list(const train_args& args) {
    std::vector<ortho::ngram_config> configs;
    std::size_t pos = 0;
    while (pos <= args.features.size()) {
        const auto comma = args.features.find(',', pos);
        const std::string name = comma == std::string::npos
                                     ? args.features.substr(pos)
                                     : args.features.substr(pos, comma - pos);
        ortho::ngram_config cfg;
        cfg.analyzer = ortho::parse_analyzer(name);
        cfg.n_min = args.ngram_min;
        cfg.n_max = args.ngram_max;
        cfg.max_features = args.max_features;
        cfg.lowercase = !args.no_lowercase;
        for (const auto& existing : configs) {
            if (existing.analyzer == cfg.analyzer) {
                throw ortho::config_error("duplicate feature '" + name + "' in --features");
            }
        }
        configs.push_back(cfg);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (configs.empty()) throw ortho::config_error("--features must name at least one analyzer");
    return configs;
}

int cmd_train(const train_args& args) {
    const auto configs = parse_feature_list(args);
    const auto train_samples = ortho::load_jsonl(args.train_path);
    const auto valid_samples = ortho::load_jsonl(args.valid_path);
    if (train_samples.empty()) throw ortho::train_error("training file has no samples");

    std::vector<std::string> texts;
    std::vector<ortho::orthography> labels;
    texts.reserve(train_samples.size());
    for (const auto& s : train_samples) {
        texts.push_back(s.text);
        labels.push_back(s.tag);
    }

    ortho::trained_model model;
    model.features = ortho::fit_union(texts, configs);
    std::vector<ortho::sparse_vector> x;
    x.reserve(texts.size());
    for (const auto& t : texts) x.push_back(ortho::transform_union(model.features, t));

    if (args.model == "logreg") {
        ortho::logreg_options opts;
        opts.max_iter = args.max_iter ? args.max_iter : 1000;
        opts.tol = args.tol;
        opts.l2 = args.l2;
        model.impl = ortho::train_logreg(x, labels, opts);
    } else if (args.model == "svm") {
        ortho::svm_options opts;
        opts.max_iter = args.max_iter ? args.max_iter : 4000;
        opts.tol = args.tol;
        opts.c = args.svm_c;
        opts.squared_hinge = !args.plain_hinge;
        model.impl = ortho::train_svm(x, labels, opts);
    } else if (args.model == "nb") {
        ortho::nb_options opts;
        opts.alpha = args.alpha;
        opts.balanced = args.weighted_nb;
        model.impl = ortho::train_nb(x, labels, opts);
    } else if (args.model == "rf") {
        ortho::rf_options opts;
        opts.n_trees = args.trees;
        opts.seed = args.seed;
        model.impl = ortho::train_rf(x, labels, opts);
    } else {
        throw ortho::config_error("unknown model '" + args.model + "'");
    }

    ortho::save_model(model, args.out);

    std::size_t correct = 0;
    for (const auto& s : valid_samples) {
        if (ortho::predict_text(model, s.text).label == s.tag) ++correct;
    }
    if (!valid_samples.empty()) {
        std::cout << "validation accuracy " << std::fixed << std::setprecision(2)
                  << 100.0 * correct / valid_samples.size() << "% (" << correct << "/"
                  << valid_samples.size() << ")\n";
    }
    std::cout << "model written to " << args.out << '\n';
    return 0;
}

std::string feature_summary(const ortho::trained_model& m) {
    std::string out;
    for (const auto& member : m.features.members) {
        if (!out.empty()) out += "+";
        out += to_string(member.config.analyzer);
    }
    return out;
}

int cmd_evaluate(const evaluate_args& args) {
    const auto model = ortho::load_model(args.model);
    const auto test_samples = ortho::load_jsonl(args.test);
    if (test_samples.empty()) throw ortho::io_error("test file has no samples");

    std::vector<ortho::orthography> gold, pred;
    gold.reserve(test_samples.size());
    pred.reserve(test_samples.size());
    for (const auto& s : test_samples) {
        gold.push_back(s.tag);
        pred.push_back(ortho::predict_text(model, s.text).label);
    }
    const auto cm = ortho::make_confusion_matrix(gold, pred, model.classes());
    const auto rep = ortho::metrics(cm);
    std::cout << ortho::metrics_table(rep);

    const auto errors = ortho::ranked_errors(cm);
    if (!errors.empty()) {
        std::cout << "top errors (gold -> predicted):\n";
        for (std::size_t i = 0; i < errors.size() && i < 5; ++i) {
            std::cout << "  " << to_string(errors[i].gold) << " -> "
                      << to_string(errors[i].pred) << " x" << errors[i].count << '\n';
        }
    }

    if (!args.confusion.empty()) {
        std::ofstream out(args.confusion, std::ios::binary);
        if (!out) throw ortho::io_error("cannot write " + args.confusion);
        out << ortho::confusion_to_csv(cm);
    }
    if (!args.json.empty()) {
        std::ofstream out(args.json, std::ios::binary);
        if (!out) throw ortho::io_error("cannot write " + args.json);
        const std::string id = std::string(to_string(model.kind())) + "." + feature_summary(model);
        auto doc = ortho::metrics_to_json(id, rep, cm);
        nlohmann::json feats = nlohmann::json::array();
        for (const auto& member : model.features.members) {
            feats.push_back({{"analyzer", std::string(to_string(member.config.analyzer))},
                             {"n_min", member.config.n_min},
                             {"n_max", member.config.n_max},
                             {"max_features", member.config.max_features},
                             {"lowercase", member.config.lowercase},
                             {"dim", member.dim()}});
        }
        doc["feature_config"] = std::move(feats);
        out << doc.dump(2) << '\n';
    }
    return 0;
}

int cmd_classify(const classify_args& args) {
    const auto model = ortho::load_model(args.model);

    std::istream* in = &std::cin;
    std::ifstream file;
    if (!args.input.empty()) {
        file.open(args.input, std::ios::binary);
        if (!file) throw ortho::io_error("cannot open " + args.input);
        in = &file;
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(*in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }

    std::optional<double> min_conf;
    if (args.min_confidence >= 0.0) min_conf = args.min_confidence;
    const auto report = ortho::bulk_classify(model, lines, min_conf);

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& bl = report.lines[i];
        if (args.jsonl) {
            std::cout << "{\"text\": " << nlohmann::json(lines[i]).dump() << ", \"tag\": \""
                      << bl.label << "\"}\n";
        } else {
            std::cout << bl.label << '\t' << std::fixed << std::setprecision(4) << bl.confidence;
            if (args.echo) std::cout << '\t' << lines[i];
            std::cout << '\n';
        }
    }

    std::cerr << std::fixed << std::setprecision(2);
    for (const auto& [label, frac] : report.percentages) {
        std::cerr << label << ' ' << report.counts.at(label) << " (" << frac * 100.0 << "%)\n";
    }
    std::cerr << "mean confidence " << report.mean_confidence << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthography classification toolkit for Lombard text"};
    app.require_subcommand(1);
    const std::string version = std::string("orthoclass ") + ortho::version_string +
                                " (model format " +
                                std::to_string(ortho::model_format_version) + ")";
    app.set_version_flag("--version", version);

    ingest_args ingest;
    auto* ingest_cmd = app.add_subcommand(
        "ingest", "extract, tag and filter corpus lines from a MediaWiki XML dump");
    ingest_cmd->add_option("--dump", ingest.dump, "pages-articles XML export (decompressed)")
        ->required();
    ingest_cmd->add_option("--config", ingest.config,
                           "tag map + filter config JSON (default: $ORTHOCLASS_CONFIG, "
                           "then built-in defaults)");
    ingest_cmd->add_option("--out", ingest.out_dir, "output directory")->required();
    ingest_cmd->add_flag("--review", ingest.review, "also write borderline lines to review.txt");

    split_args split;
    auto* split_cmd = app.add_subcommand("split", "stratified train/valid/test split");
    split_cmd->add_option("--in", split.in, "corpus JSONL")->required();
    split_cmd->add_option("--out-dir", split.out_dir, "output directory")->required();
    split_cmd->add_option("--ratios", split.ratios, "train,valid,test fractions (default 0.8,0.1,0.1)");
    split_cmd->add_option("--seed", split.seed, "shuffle seed (default 42)");

    train_args train;
    auto* train_cmd = app.add_subcommand("train", "fit a classifier on a tagged corpus");
    train_cmd->add_option("--model", train.model, "logreg | svm | nb | rf")->required();
    train_cmd->add_option("--features", train.features, "comma list of byte,char,word")->required();
    train_cmd->add_option("--train", train.train_path, "training JSONL")->required();
    train_cmd->add_option("--valid", train.valid_path, "validation JSONL")->required();
    train_cmd->add_option("--out", train.out, "model output path")->required();
    train_cmd->add_option("--ngram-min", train.ngram_min, "smallest n (default 1)");
    train_cmd->add_option("--ngram-max", train.ngram_max, "largest n (default 4)");
    train_cmd->add_option("--max-features", train.max_features,
                          "vocabulary cap per vectorizer (default 10000)");
    train_cmd->add_flag("--no-lowercase", train.no_lowercase, "skip lowercasing");
    train_cmd->add_option("--seed", train.seed, "random forest seed (default 42)");
    train_cmd->add_option("--max-iter", train.max_iter,
                          "optimizer iteration cap (default: logreg 1000, svm 4000)");
    train_cmd->add_option("--tol", train.tol, "optimizer gradient tolerance (default 1e-4)");
    train_cmd->add_option("--l2", train.l2, "logreg L2 strength (default 1.0)");
    train_cmd->add_option("--C", train.svm_c, "SVM hinge cost (default 1.0)");
    train_cmd->add_flag("--plain-hinge", train.plain_hinge, "SVM: plain instead of squared hinge");
    train_cmd->add_option("--alpha", train.alpha, "NB smoothing (default 1.0)");
    train_cmd->add_flag("--weighted-nb", train.weighted_nb, "NB: apply balanced class weights");
    train_cmd->add_option("--trees", train.trees, "forest size (default 100)");

    evaluate_args evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "score a model on a held-out set");
    eval_cmd->add_option("--model", evaluate.model, "model file")->required();
    eval_cmd->add_option("--test", evaluate.test, "test JSONL")->required();
    eval_cmd->add_option("--confusion", evaluate.confusion, "write confusion matrix CSV here");
    eval_cmd->add_option("--json", evaluate.json, "write machine-readable metrics here");

    classify_args classify;
    auto* classify_cmd = app.add_subcommand("classify", "label new text, one line at a time");
    classify_cmd->add_option("--model", classify.model, "model file")->required();
    classify_cmd->add_option("--input", classify.input, "input text file (default: stdin)");
    classify_cmd->add_option("--min-confidence", classify.min_confidence,
                             "label lines under this confidence UNKNOWN");
    classify_cmd->add_flag("--jsonl", classify.jsonl, "emit corpus-format JSONL records");
    classify_cmd->add_flag("--echo", classify.echo, "append the input text to each record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(ingest_cmd)) return cmd_ingest(ingest);
        if (app.got_subcommand(split_cmd)) return cmd_split(split);
        if (app.got_subcommand(train_cmd)) return cmd_train(train);
        if (app.got_subcommand(eval_cmd)) return cmd_evaluate(evaluate);
        if (app.got_subcommand(classify_cmd)) return cmd_classify(classify);
    } catch (const ortho::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const ortho::train_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ortho::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
