#pragma once

// The two explainers. The quantum-inspired one scores each present feature k
// by the prediction drop when k is turned off via an RY angle reset and the
// co-features are measured out of the encoded state. The classical baseline
// fits a weighted ridge surrogate on random keep/drop perturbations.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "qlime/corpus.hpp"
#include "qlime/encoder.hpp"
#include "qlime/errors.hpp"
#include "qlime/model.hpp"
#include "qlime/rng.hpp"
#include "qlime/types.hpp"

namespace qlime {

enum class Method { QLime, Lime };

inline const char* to_string(Method m) { return m == Method::QLime ? "qlime" : "lime"; }

struct ExplanationEntry {
    int index = 0;
    std::string token;
    double weight = 0.0;  // prediction drop (qlime) or surrogate coefficient (lime)
};

struct Explanation {
    std::vector<ExplanationEntry> entries;  // sorted by |weight| desc, token asc
    Method method = Method::QLime;
    std::uint64_t seed = 0;
    std::optional<int> shots;
    std::uint64_t model_evals = 0;
    int n_features = 0;
};

struct LimeConfig {
    int n_perturbations = 300;
    double kernel_width = 25.0;  // exponential kernel on cosine distance
    double ridge_lambda = 1.0;
    std::uint64_t seed = 0;
};

struct QlimeConfig {
    FlipMode flip_mode = FlipMode::OneToZero;
    CoFeaturePolicy policy = CoFeaturePolicy::QuantumSampled;
    std::optional<int> shots;  // empty = analytic distribution
    int repeats = 1;           // perturbed samples averaged per feature
    std::uint64_t seed = 0;
};

namespace detail {

inline void sort_entries(std::vector<ExplanationEntry>& entries) {
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        const double wa = std::abs(a.weight);
        const double wb = std::abs(b.weight);
        if (wa != wb) return wa > wb;
        return a.token < b.token;
    });
}

inline void check_explain_inputs(const LogisticModel& m, const BitVector& x,
                                 const Vocabulary& vocab) {
    if (x.size() != vocab.tokens.size()) {
        throw std::invalid_argument("feature vector length does not match vocabulary size");
    }
    if (x.size() != m.weights.size()) {
        throw std::invalid_argument("feature vector length does not match model width");
    }
    if (x.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw std::invalid_argument("more than " + std::to_string(kMaxQubits) + " features");
    }
}

// Gaussian elimination with partial pivoting; a is n x n row-major.
inline std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::abs(a[row * n + col]) > std::abs(a[pivot * n + col])) pivot = row;
        }
        if (a[pivot * n + col] == 0.0) throw std::runtime_error("singular surrogate system");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[pivot * n + j]);
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = a[row * n + col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double acc = b[row];
        for (std::size_t j = row + 1; j < n; ++j) acc -= a[row * n + j] * x[j];
        x[row] = acc / a[row * n + row];
    }
    return x;
}

}  // namespace detail

// Scores every flippable feature by delta_f = f(x) - mean over `repeats`
// perturbed draws of f(perturbed). With the default OneToZero mode the
// flippable features are exactly those with x_k = 1, and the model is
// evaluated 1 + repeats * popcount(x) times.
inline Explanation qlime_explain(const LogisticModel& m, const BitVector& x,
                                 const Vocabulary& vocab, const QlimeConfig& cfg = {}) {
    detail::check_explain_inputs(m, x, vocab);
    if (cfg.repeats < 1) throw std::invalid_argument("repeats must be >= 1");

    const double f_x = predict_proba(m, x);
    Rng rng(cfg.seed);
    Explanation e;
    e.method = Method::QLime;
    e.seed = cfg.seed;
    e.shots = cfg.shots;
    e.n_features = static_cast<int>(x.size());

    const std::uint8_t flippable = cfg.flip_mode == FlipMode::OneToZero ? 1 : 0;
    std::uint64_t evals = 1;
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
        if (x[static_cast<std::size_t>(k)] != flippable) continue;
        double sum = 0.0;
        for (int r = 0; r < cfg.repeats; ++r) {
            const BitVector z =
                draw_perturbed_bits(x, k, cfg.flip_mode, cfg.policy, cfg.shots, rng);
            sum += predict_proba(m, z);
        }
        evals += static_cast<std::uint64_t>(cfg.repeats);
        e.entries.push_back(
            {k, vocab.tokens[static_cast<std::size_t>(k)], f_x - sum / cfg.repeats});
    }
    e.model_evals = evals;
    detail::sort_entries(e.entries);
    return e;
}

// Classical baseline: n_perturbations samples that keep/drop each present
// feature with probability 1/2, weighted by exp(-d^2 / width^2) with d the
// cosine distance to x, then a ridge fit (unregularized intercept) of the
// model outputs on the present-feature indicators.
inline Explanation lime_explain(const LogisticModel& m, const BitVector& x,
                                const Vocabulary& vocab, const LimeConfig& cfg = {}) {
    detail::check_explain_inputs(m, x, vocab);
    if (cfg.n_perturbations < 1) throw std::invalid_argument("n_perturbations must be >= 1");
    if (cfg.kernel_width <= 0.0 || cfg.ridge_lambda <= 0.0) {
        throw std::invalid_argument("kernel_width and ridge_lambda must be positive");
    }

    std::vector<int> present;
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
        if (x[static_cast<std::size_t>(k)]) present.push_back(k);
    }
    if (present.empty()) throw ExplanationError("nothing to perturb: no present features");
    const std::size_t n_coef = present.size() + 1;  // intercept first

    Rng rng(cfg.seed);
    std::vector<double> gram(n_coef * n_coef, 0.0);
    std::vector<double> rhs(n_coef, 0.0);
    std::vector<double> row(n_coef, 0.0);
    BitVector z(x.size(), 0);

    for (int i = 0; i < cfg.n_perturbations; ++i) {
        std::fill(z.begin(), z.end(), 0);
        row[0] = 1.0;
        int kept = 0;
        for (std::size_t j = 0; j < present.size(); ++j) {
            const bool keep = rng.bernoulli(0.5);
            row[j + 1] = keep ? 1.0 : 0.0;
            if (keep) {
                z[static_cast<std::size_t>(present[j])] = 1;
                ++kept;
            }
        }
        const double f_z = predict_proba(m, z);
        // Cosine distance to x reduces to 1 - sqrt(kept / m) because the
        // perturbations only ever drop present features.
        const double dist = 1.0 - std::sqrt(static_cast<double>(kept) /
                                            static_cast<double>(present.size()));
        const double pi = std::exp(-(dist * dist) / (cfg.kernel_width * cfg.kernel_width));
        for (std::size_t a = 0; a < n_coef; ++a) {
            if (row[a] == 0.0) continue;
            const double wa = pi * row[a];
            for (std::size_t b = a; b < n_coef; ++b) gram[a * n_coef + b] += wa * row[b];
            rhs[a] += wa * f_z;
        }
    }
    for (std::size_t a = 0; a < n_coef; ++a) {
        for (std::size_t b = 0; b < a; ++b) gram[a * n_coef + b] = gram[b * n_coef + a];
    }
    for (std::size_t j = 1; j < n_coef; ++j) gram[j * n_coef + j] += cfg.ridge_lambda;

    const std::vector<double> beta = detail::solve_linear(std::move(gram), std::move(rhs));

    Explanation e;
    e.method = Method::Lime;
    e.seed = cfg.seed;
    e.model_evals = static_cast<std::uint64_t>(cfg.n_perturbations);
    e.n_features = static_cast<int>(x.size());
    for (std::size_t j = 0; j < present.size(); ++j) {
        e.entries.push_back(
            {present[j], vocab.tokens[static_cast<std::size_t>(present[j])], beta[j + 1]});
    }
    detail::sort_entries(e.entries);
    return e;
}

// Local surrogate g(x) = sum_k weight_k * x_k over the explanation entries.
inline double surrogate_eval(const Explanation& e, const BitVector& x) {
    if (static_cast<int>(x.size()) != e.n_features) {
        throw std::invalid_argument("feature vector length does not match explanation");
    }
    double g = 0.0;
    for (const auto& entry : e.entries) {
        if (x[static_cast<std::size_t>(entry.index)]) g += entry.weight;
    }
    return g;
}

// First min(k, |entries|) tokens in |weight|-descending order.
inline std::vector<std::string> top_k(const Explanation& e, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const std::size_t n = std::min(static_cast<std::size_t>(k), e.entries.size());
    std::vector<std::string> tokens;
    tokens.reserve(n);
    for (std::size_t i = 0; i < n; ++i) tokens.push_back(e.entries[i].token);
    return tokens;
}

// Size of the intersection of the two explanations' top-k token sets.
inline int overlap(const Explanation& a, const Explanation& b, int k) {
    if (a.n_features != b.n_features) {
        throw std::invalid_argument("explanations cover different vocabularies");
    }
    const auto tokens_a = top_k(a, k);
    const auto tokens_b = top_k(b, k);
    const std::unordered_set<std::string> set_a(tokens_a.begin(), tokens_a.end());
    int shared = 0;
    for (const auto& t : tokens_b) shared += set_a.count(t) ? 1 : 0;
    return shared;
}

inline nlohmann::json explanation_to_json(const Explanation& e) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& entry : e.entries) {
        entries.push_back(
            {{"index", entry.index}, {"token", entry.token}, {"weight", entry.weight}});
    }
    return nlohmann::json{{"method", to_string(e.method)},
                          {"seed", e.seed},
                          {"shots", e.shots.has_value() ? nlohmann::json(*e.shots)
                                                        : nlohmann::json(nullptr)},
                          {"model_evals", e.model_evals},
                          {"entries", std::move(entries)}};
}

}  // namespace qlime
