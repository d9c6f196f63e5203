// Command-line front end: train a classifier on a text,label CSV, explain a
// single review with either explainer, sweep benchmark configurations, and
// generate synthetic corpora.
//
// Exit codes: 0 success, 1 usage error, 2 data/ingestion error, 3 internal
// invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlime/qlime.hpp"

namespace {

std::optional<int> parse_shots(const std::string& text) {
    if (text == "none" || text == "None") return std::nullopt;
    try {
        const int value = std::stoi(text);
        if (value < 1) throw CLI::ValidationError("--shots", "shot count must be >= 1");
        return value;
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--shots", "expected a positive integer or 'none'");
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

bool parse_on_off(const std::string& text, const std::string& flag) {
    if (text == "on" || text == "true" || text == "True") return true;
    if (text == "off" || text == "false" || text == "False") return false;
    throw CLI::ValidationError(flag, "expected on or off");
}

std::ostream& open_sink(const std::string& path, std::ofstream& file, std::ostream& fallback) {
    if (path.empty()) return fallback;
    file.open(path);
    if (!file) throw qlime::DataError("cannot write to " + path);
    return file;
}

struct TrainArgs {
    std::string data;
    std::size_t limit = 0;
    int max_features = 15;
    std::string stopwords = "on";
    std::uint64_t seed = 0;
    std::string out;
};

int run_train(const TrainArgs& args) {
    const bool remove_stopwords = parse_on_off(args.stopwords, "--stopwords");
    const std::optional<std::size_t> limit =
        args.limit > 0 ? std::optional<std::size_t>(args.limit) : std::nullopt;
    const qlime::LabeledCorpus corpus =
        qlime::load_dataset(args.data, limit, qlime::mix_seed(args.seed, 1));
    const qlime::Vocabulary vocab = qlime::build_vocabulary(
        corpus, static_cast<std::size_t>(args.max_features), remove_stopwords);

    std::vector<qlime::BitVector> X_train, X_test;
    std::vector<int> y_train, y_test;
    for (std::size_t idx : corpus.train_indices) {
        X_train.push_back(qlime::vectorize(
            qlime::preprocess(corpus.documents[idx].text, remove_stopwords), vocab));
        y_train.push_back(corpus.documents[idx].label);
    }
    for (std::size_t idx : corpus.test_indices) {
        X_test.push_back(qlime::vectorize(
            qlime::preprocess(corpus.documents[idx].text, remove_stopwords), vocab));
        y_test.push_back(corpus.documents[idx].label);
    }

    const qlime::LogisticModel model = qlime::train_logistic(X_train, y_train);
    qlime::save_model(args.out, model, vocab);

    std::cerr << "trained on " << X_train.size() << " documents, vocabulary "
              << vocab.tokens.size() << " tokens";
    if (!X_test.empty()) {
        std::cerr << ", test accuracy "
                  << qlime::detail::format_fixed(qlime::accuracy(model, X_test, y_test), 2);
    }
    std::cerr << "; model written to " << args.out << "\n";
    return 0;
}

struct ExplainArgs {
    std::string model;
    std::string text;
    std::string method = "both";
    std::string shots = "none";
    int top_k = 5;
    std::uint64_t seed = 0;
};

int run_explain(const ExplainArgs& args) {
    const std::optional<int> shots = parse_shots(args.shots);
    auto [model, vocab] = qlime::load_model(args.model);
    const qlime::BitVector x =
        qlime::vectorize(qlime::preprocess(args.text, false), vocab);

    auto with_top = [&](const qlime::Explanation& e) {
        nlohmann::json j = qlime::explanation_to_json(e);
        j["top_tokens"] = qlime::top_k(e, args.top_k);
        return j;
    };

    nlohmann::json out;
    if (args.method == "qlime" || args.method == "both") {
        qlime::QlimeConfig cfg;
        cfg.shots = shots;
        cfg.seed = args.seed;
        const qlime::Explanation e = qlime::qlime_explain(model, x, vocab, cfg);
        if (args.method == "qlime") {
            out = with_top(e);
        } else {
            out["qlime"] = with_top(e);
        }
    }
    if (args.method == "lime" || args.method == "both") {
        qlime::LimeConfig cfg;
        cfg.seed = args.seed;
        const qlime::Explanation e = qlime::lime_explain(model, x, vocab, cfg);
        if (args.method == "lime") {
            out = with_top(e);
        } else {
            out["lime"] = with_top(e);
        }
    }
    if (args.method == "both") {
        qlime::QlimeConfig qcfg;
        qcfg.shots = shots;
        qcfg.seed = args.seed;
        qlime::LimeConfig lcfg;
        lcfg.seed = args.seed;
        out["overlap"] = qlime::overlap(qlime::qlime_explain(model, x, vocab, qcfg),
                                        qlime::lime_explain(model, x, vocab, lcfg), args.top_k);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

struct BenchArgs {
    std::string data = "synth";
    std::size_t limit = 0;
    std::string grid = "max_features=5,10,15";
    std::string stopwords = "on";
    std::string shots = "none";
    int instances = 5;
    int top_k = 5;
    std::uint64_t seed = 0;
    std::string csv;
    std::string report;
};

std::vector<int> parse_grid(const std::string& grid) {
    const std::string prefix = "max_features=";
    if (grid.rfind(prefix, 0) != 0) {
        throw CLI::ValidationError("--grid", "expected max_features=<list>");
    }
    std::vector<int> values;
    for (const auto& item : split_list(grid.substr(prefix.size()))) {
        values.push_back(std::stoi(item));
    }
    if (values.empty()) throw CLI::ValidationError("--grid", "empty max_features list");
    return values;
}

int run_bench(const BenchArgs& args) {
    qlime::DatasetSpec dataset;
    if (args.data == "synth") {
        dataset.kind = qlime::DatasetSpec::Kind::Synth;
    } else {
        dataset.kind = qlime::DatasetSpec::Kind::CsvFile;
        dataset.path = args.data;
        if (args.limit > 0) dataset.limit = args.limit;
    }

    std::vector<qlime::ExperimentResult> results;
    for (int max_features : parse_grid(args.grid)) {
        for (const auto& sw : split_list(args.stopwords)) {
            for (const auto& sh : split_list(args.shots)) {
                qlime::ExperimentConfig cfg;
                cfg.dataset = dataset;
                cfg.max_features = max_features;
                cfg.remove_stopwords = parse_on_off(sw, "--stopwords");
                cfg.shots = parse_shots(sh);
                cfg.n_instances = args.instances;
                cfg.top_k = args.top_k;
                cfg.seed = args.seed;
                results.push_back(qlime::run_experiment(cfg));
            }
        }
    }

    std::ofstream csv_file;
    qlime::emit_results_csv(results, open_sink(args.csv, csv_file, std::cout));

    if (!args.report.empty()) {
        std::ofstream report_file;
        std::ostream& report = open_sink(args.report, report_file, std::cout);
        report << "# Per-instance top-" << args.top_k << " comparison\n";
        for (const auto& result : results) {
            report << "\n## max_features=" << result.config.max_features << ", stopwords="
                   << (result.config.remove_stopwords ? "True" : "False") << ", shots="
                   << (result.config.shots.has_value() ? std::to_string(*result.config.shots)
                                                       : "None")
                   << "\n\n";
            qlime::emit_instance_report(result, report);
        }
    }
    return 0;
}

struct SynthArgs {
    int docs = 500;
    int vocab = 15;
    std::uint64_t seed = 0;
    std::string out;
};

int run_synth(const SynthArgs& args) {
    const qlime::LabeledCorpus corpus = qlime::synth_corpus(
        args.docs, args.vocab, qlime::default_planted_weights(args.vocab), args.seed);
    std::ofstream file;
    std::ostream& out = open_sink(args.out, file, std::cout);
    qlime::write_dataset_csv(corpus.documents, out);
    if (!out) throw qlime::DataError("failed to write synthetic corpus");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-inspired local explanations for binary-feature text classifiers"};
    app.require_subcommand(1);

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Train a logistic model on a text,label CSV");
    train->add_option("--data", train_args.data, "dataset CSV path")->required();
    train->add_option("--limit", train_args.limit, "seeded random subset size (0 = all rows)");
    train->add_option("--max-features", train_args.max_features, "vocabulary cap")
        ->check(CLI::Range(1, qlime::kMaxQubits));
    train->add_option("--stopwords", train_args.stopwords, "remove stopwords: on|off");
    train->add_option("--seed", train_args.seed, "random seed");
    train->add_option("--out", train_args.out, "output model JSON path")->required();

    ExplainArgs explain_args;
    auto* explain = app.add_subcommand("explain", "Explain one review with qlime/lime/both");
    explain->add_option("--model", explain_args.model, "model JSON path")->required();
    explain->add_option("--text", explain_args.text, "review text")->required();
    explain->add_option("--method", explain_args.method, "qlime|lime|both")
        ->check(CLI::IsMember({"qlime", "lime", "both"}));
    explain->add_option("--shots", explain_args.shots, "shot count or 'none' for analytic");
    explain->add_option("--top-k", explain_args.top_k, "tokens to list")->check(CLI::Range(1, 64));
    explain->add_option("--seed", explain_args.seed, "random seed");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Sweep benchmark configurations");
    bench->add_option("--data", bench_args.data, "dataset CSV path or 'synth'");
    bench->add_option("--limit", bench_args.limit, "seeded random subset size (0 = all rows)");
    bench->add_option("--grid", bench_args.grid, "max_features=<comma list>");
    bench->add_option("--stopwords", bench_args.stopwords, "comma list of on|off");
    bench->add_option("--shots", bench_args.shots, "comma list of shot counts or 'none'");
    bench->add_option("--instances", bench_args.instances, "test instances per config")
        ->check(CLI::Range(1, 1000));
    bench->add_option("--top-k", bench_args.top_k, "overlap depth")->check(CLI::Range(1, 64));
    bench->add_option("--seed", bench_args.seed, "random seed");
    bench->add_option("--csv", bench_args.csv, "results CSV path (default stdout)");
    bench->add_option("--report", bench_args.report, "per-instance markdown report path");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic text,label CSV");
    synth->add_option("--docs", synth_args.docs, "document count")->check(CLI::Range(1, 1000000));
    synth->add_option("--vocab", synth_args.vocab, "vocabulary size")
        ->check(CLI::Range(1, qlime::kMaxQubits));
    synth->add_option("--seed", synth_args.seed, "random seed");
    synth->add_option("--out", synth_args.out, "output CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (train->parsed()) return run_train(train_args);
        if (explain->parsed()) return run_explain(explain_args);
        if (bench->parsed()) return run_bench(bench_args);
        if (synth->parsed()) return run_synth(synth_args);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const qlime::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
