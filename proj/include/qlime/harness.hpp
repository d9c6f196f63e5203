#pragma once

// Experiment runner: loads or generates a corpus, trains the classifier,
// explains seeded-random test instances with both explainers under wall-clock
// timing, and aggregates accuracy / runtime / top-k overlap into table rows.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlime/corpus.hpp"
#include "qlime/errors.hpp"
#include "qlime/explain.hpp"
#include "qlime/model.hpp"
#include "qlime/rng.hpp"
#include "qlime/types.hpp"

namespace qlime {

struct SynthSpec {
    int n_docs = 500;
    int vocab_size = 15;
    std::vector<double> planted_weights;  // empty = default_planted_weights(vocab_size)
};

struct DatasetSpec {
    enum class Kind { CsvFile, Synth };
    Kind kind = Kind::Synth;
    std::string path;                  // CsvFile only
    SynthSpec synth;                   // Synth only
    std::optional<std::size_t> limit;  // CsvFile: seeded random subset size
};

struct ExperimentConfig {
    DatasetSpec dataset;
    int max_features = 15;
    bool remove_stopwords = true;
    std::optional<int> shots;  // forwarded to the quantum-inspired explainer
    int n_instances = 5;
    int top_k = 5;
    std::uint64_t seed = 0;
    LimeConfig lime;
    QlimeConfig qlime;
};

struct InstanceReport {
    std::string snippet;  // raw document text, truncated to <= 200 chars
    std::vector<std::string> lime_top;
    std::vector<std::string> qlime_top;
    int shared = 0;
};

struct ExperimentResult {
    ExperimentConfig config;
    double accuracy = 0.0;
    double lime_time_s = 0.0;   // mean wall-clock seconds per instance
    double qlime_time_s = 0.0;  // mean wall-clock seconds per instance
    double mean_overlap = 0.0;
    double lime_evals = 0.0;   // mean model evaluations per instance
    double qlime_evals = 0.0;  // mean model evaluations per instance
    std::vector<InstanceReport> per_instance;
};

// Benchmark weight pattern: a handful of dominant coordinates with
// alternating signs, the rest small nuisance weights.
inline std::vector<double> default_planted_weights(int vocab_size, int n_dominant = 5,
                                                   double dominant = 4.0, double minor = 0.25) {
    std::vector<double> w(static_cast<std::size_t>(vocab_size));
    for (int i = 0; i < vocab_size; ++i) {
        const double magnitude = i < n_dominant ? dominant : minor;
        w[static_cast<std::size_t>(i)] = (i % 2 == 0) ? magnitude : -magnitude;
    }
    return w;
}

namespace detail {

inline LabeledCorpus materialize_corpus(const DatasetSpec& spec, std::uint64_t seed) {
    if (spec.kind == DatasetSpec::Kind::CsvFile) {
        return load_dataset(spec.path, spec.limit, seed);
    }
    const std::vector<double>& weights =
        spec.synth.planted_weights.empty()
            ? default_planted_weights(spec.synth.vocab_size)
            : spec.synth.planted_weights;
    return synth_corpus(spec.synth.n_docs, spec.synth.vocab_size, weights, seed);
}

inline std::string truncate_snippet(const std::string& text, std::size_t max_chars = 200) {
    if (text.size() <= max_chars) return text;
    return text.substr(0, max_chars - 3) + "...";
}

inline std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

}  // namespace detail

// Runs one configuration. Deterministic given config.seed except for the two
// wall-clock fields. Instances with no present features are skipped (the
// classical baseline cannot perturb them); the skips consume the seeded
// selection stream deterministically.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.max_features < 1 || cfg.max_features > kMaxQubits) {
        throw std::invalid_argument("max_features must be in [1, " + std::to_string(kMaxQubits) +
                                    "]");
    }
    if (cfg.n_instances < 1) throw std::invalid_argument("n_instances must be >= 1");
    if (cfg.top_k < 1) throw std::invalid_argument("top_k must be >= 1");

    const LabeledCorpus corpus = detail::materialize_corpus(cfg.dataset, mix_seed(cfg.seed, 1));
    const Vocabulary vocab =
        build_vocabulary(corpus, static_cast<std::size_t>(cfg.max_features),
                         cfg.remove_stopwords);

    auto vectorize_split = [&](const std::vector<std::size_t>& indices,
                               std::vector<BitVector>& X, std::vector<int>& y) {
        for (std::size_t idx : indices) {
            X.push_back(
                vectorize(preprocess(corpus.documents[idx].text, cfg.remove_stopwords), vocab));
            y.push_back(corpus.documents[idx].label);
        }
    };
    std::vector<BitVector> X_train, X_test;
    std::vector<int> y_train, y_test;
    vectorize_split(corpus.train_indices, X_train, y_train);
    vectorize_split(corpus.test_indices, X_test, y_test);
    if (X_test.empty()) throw ExperimentError("test split is empty");

    TrainConfig train_cfg;
    train_cfg.seed = mix_seed(cfg.seed, 2);
    const LogisticModel model = train_logistic(X_train, y_train, train_cfg);

    ExperimentResult result;
    result.config = cfg;
    result.accuracy = accuracy(model, X_test, y_test);

    // Seeded instance selection: shuffled test order, skipping empty vectors.
    Rng selection_rng(mix_seed(cfg.seed, 3));
    std::vector<std::size_t> order(X_test.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    selection_rng.shuffle(order);
    std::vector<std::size_t> chosen;
    for (std::size_t i : order) {
        if (popcount(X_test[i]) == 0) continue;
        chosen.push_back(i);
        if (static_cast<int>(chosen.size()) == cfg.n_instances) break;
    }
    if (chosen.empty()) throw ExperimentError("no test instance has a present feature");

    using Clock = std::chrono::steady_clock;
    double lime_seconds = 0.0, qlime_seconds = 0.0;
    std::uint64_t lime_evals = 0, qlime_evals = 0;
    int overlap_sum = 0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const BitVector& x = X_test[chosen[i]];

        LimeConfig lime_cfg = cfg.lime;
        lime_cfg.seed = mix_seed(cfg.seed, 0x10000 + i);
        const auto lime_t0 = Clock::now();
        const Explanation lime = lime_explain(model, x, vocab, lime_cfg);
        lime_seconds += std::chrono::duration<double>(Clock::now() - lime_t0).count();

        QlimeConfig qlime_cfg = cfg.qlime;
        qlime_cfg.shots = cfg.shots;
        qlime_cfg.seed = mix_seed(cfg.seed, 0x20000 + i);
        const auto qlime_t0 = Clock::now();
        const Explanation qlime = qlime_explain(model, x, vocab, qlime_cfg);
        qlime_seconds += std::chrono::duration<double>(Clock::now() - qlime_t0).count();

        InstanceReport report;
        report.snippet =
            detail::truncate_snippet(corpus.documents[corpus.test_indices[chosen[i]]].text);
        report.lime_top = top_k(lime, cfg.top_k);
        report.qlime_top = top_k(qlime, cfg.top_k);
        report.shared = overlap(lime, qlime, cfg.top_k);

        lime_evals += lime.model_evals;
        qlime_evals += qlime.model_evals;
        overlap_sum += report.shared;
        result.per_instance.push_back(std::move(report));
    }

    const double n = static_cast<double>(chosen.size());
    result.lime_time_s = lime_seconds / n;
    result.qlime_time_s = qlime_seconds / n;
    result.mean_overlap = static_cast<double>(overlap_sum) / n;
    result.lime_evals = static_cast<double>(lime_evals) / n;
    result.qlime_evals = static_cast<double>(qlime_evals) / n;
    return result;
}

// One row per result. Times use 3 decimals; accuracy, overlap and the mean
// eval counts use 2. An unset shots prints as the literal None.
inline void emit_results_csv(const std::vector<ExperimentResult>& results, std::ostream& out) {
    if (results.empty()) throw std::invalid_argument("no results to emit");
    out << "max_features,stopwords,shots,accuracy,lime_time,qlime_time,overlap,"
           "lime_evals,qlime_evals\n";
    for (const auto& r : results) {
        out << r.config.max_features << ',' << (r.config.remove_stopwords ? "True" : "False")
            << ',' << (r.config.shots.has_value() ? std::to_string(*r.config.shots) : "None")
            << ',' << detail::format_fixed(r.accuracy, 2) << ','
            << detail::format_fixed(r.lime_time_s, 3) << ','
            << detail::format_fixed(r.qlime_time_s, 3) << ','
            << detail::format_fixed(r.mean_overlap, 2) << ','
            << detail::format_fixed(r.lime_evals, 2) << ','
            << detail::format_fixed(r.qlime_evals, 2) << '\n';
    }
    if (!out) throw Error("failed to write results CSV");
}

namespace detail {

inline std::string sanitize_cell(const std::string& text) {
    std::string cell = text;
    for (char& c : cell) {
        if (c == '|' || c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return cell;
}

inline std::string token_cell(const std::vector<std::string>& tokens,
                              const std::vector<std::string>& other) {
    std::string cell;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) cell += ", ";
        const bool shared =
            std::find(other.begin(), other.end(), tokens[i]) != other.end();
        cell += shared ? "**" + tokens[i] + "**" : tokens[i];
    }
    return cell;
}

}  // namespace detail

// Markdown table of per-instance top-k lists; tokens both explainers agree
// on are bolded.
inline void emit_instance_report(const ExperimentResult& result, std::ostream& out) {
    if (result.per_instance.empty()) throw std::invalid_argument("result has no instances");
    const std::string k = std::to_string(result.config.top_k);
    out << "| Review Snippet | LIME Top-" << k << " | Q-LIME Top-" << k << " |\n";
    out << "| --- | --- | --- |\n";
    for (const auto& instance : result.per_instance) {
        out << "| " << detail::sanitize_cell(instance.snippet) << " | "
            << detail::token_cell(instance.lime_top, instance.qlime_top) << " | "
            << detail::token_cell(instance.qlime_top, instance.lime_top) << " |\n";
    }
    if (!out) throw Error("failed to write instance report");
}

}  // namespace qlime
