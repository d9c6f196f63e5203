#pragma once

// The black-box classifier: logistic regression over binary feature vectors,
// trained with deterministic full-batch gradient descent. Prediction carries
// an eval counter so benchmarks can account model queries independently of
// wall-clock time.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlime/corpus.hpp"
#include "qlime/errors.hpp"
#include "qlime/types.hpp"

namespace qlime {

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

class LogisticModel {
public:
    std::vector<double> weights;
    double bias = 0.0;

    LogisticModel() = default;
    LogisticModel(std::vector<double> w, double b) : weights(std::move(w)), bias(b) {}

    LogisticModel(const LogisticModel& other)
        : weights(other.weights),
          bias(other.bias),
          eval_counter_(other.eval_counter_.load(std::memory_order_relaxed)) {}

    LogisticModel& operator=(const LogisticModel& other) {
        weights = other.weights;
        bias = other.bias;
        eval_counter_.store(other.eval_counter_.load(std::memory_order_relaxed),
                            std::memory_order_relaxed);
        return *this;
    }

    // Monotonic count of predict_proba calls; safe under concurrent readers.
    std::uint64_t eval_count() const { return eval_counter_.load(std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> eval_counter_{0};
    friend double predict_proba(const LogisticModel&, const BitVector&);
};

struct TrainConfig {
    double l2_lambda = 1e-4;
    int max_iters = 2000;
    double learning_rate = 0.5;
    double tolerance = 1e-6;  // gradient infinity-norm stop threshold
    std::uint64_t seed = 0;   // unused by the deterministic full-batch path
};

// sigma(w.x + b), clamped away from {0, 1} so downstream ratios stay finite.
inline double predict_proba(const LogisticModel& m, const BitVector& x) {
    if (x.size() != m.weights.size()) {
        throw std::invalid_argument("feature vector length " + std::to_string(x.size()) +
                                    " does not match model width " +
                                    std::to_string(m.weights.size()));
    }
    double z = m.bias;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) z += m.weights[i];
    }
    m.eval_counter_.fetch_add(1, std::memory_order_relaxed);
    constexpr double kFloor = 1e-15;
    return std::clamp(sigmoid(z), kFloor, 1.0 - kFloor);
}

namespace detail {

inline double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

inline void check_training_data(const std::vector<BitVector>& X, const std::vector<int>& y) {
    if (X.empty()) throw TrainingError("training set is empty");
    if (X.size() != y.size()) {
        throw TrainingError("feature/label count mismatch: " + std::to_string(X.size()) + " vs " +
                            std::to_string(y.size()));
    }
    for (const auto& row : X) {
        if (row.size() != X.front().size()) {
            throw TrainingError("inconsistent feature vector lengths");
        }
    }
    for (int label : y) {
        if (label != 0 && label != 1) throw TrainingError("labels must be 0 or 1");
    }
}

}  // namespace detail

// Mean binary cross-entropy plus (l2/2)*||w||^2 (bias unregularized).
inline double logistic_loss(const std::vector<double>& weights, double bias,
                            const std::vector<BitVector>& X, const std::vector<int>& y,
                            double l2_lambda) {
    detail::check_training_data(X, y);
    double loss = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double z = bias;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (X[i][j]) z += weights[j];
        }
        loss += y[i] == 1 ? detail::softplus(-z) : detail::softplus(z);
    }
    loss /= static_cast<double>(X.size());
    double reg = 0.0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * l2_lambda * reg;
}

inline void logistic_gradient(const std::vector<double>& weights, double bias,
                              const std::vector<BitVector>& X, const std::vector<int>& y,
                              double l2_lambda, std::vector<double>& grad_w, double& grad_b) {
    detail::check_training_data(X, y);
    grad_w.assign(weights.size(), 0.0);
    grad_b = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        double z = bias;
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (X[i][j]) z += weights[j];
        }
        const double residual = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < weights.size(); ++j) {
            if (X[i][j]) grad_w[j] += residual;
        }
        grad_b += residual;
    }
    const double inv_n = 1.0 / static_cast<double>(X.size());
    for (std::size_t j = 0; j < weights.size(); ++j) {
        grad_w[j] = grad_w[j] * inv_n + l2_lambda * weights[j];
    }
    grad_b *= inv_n;
}

// Full-batch gradient descent from w = 0, b = 0; stops at max_iters or when
// the gradient infinity-norm (weights and bias) drops below tolerance.
inline LogisticModel train_logistic(const std::vector<BitVector>& X, const std::vector<int>& y,
                                    const TrainConfig& cfg = {}) {
    if (cfg.l2_lambda <= 0.0 || cfg.max_iters < 1 || cfg.learning_rate <= 0.0 ||
        cfg.tolerance <= 0.0) {
        throw std::invalid_argument("train config fields must be positive");
    }
    detail::check_training_data(X, y);
    std::vector<double> w(X.front().size(), 0.0);
    double b = 0.0;
    std::vector<double> grad_w;
    double grad_b = 0.0;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        logistic_gradient(w, b, X, y, cfg.l2_lambda, grad_w, grad_b);
        double inf_norm = std::abs(grad_b);
        for (double g : grad_w) inf_norm = std::max(inf_norm, std::abs(g));
        if (inf_norm < cfg.tolerance) break;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= cfg.learning_rate * grad_w[j];
        b -= cfg.learning_rate * grad_b;
    }
    return LogisticModel(std::move(w), b);
}

// Fraction of instances where (predict_proba >= 0.5) matches the label.
inline double accuracy(const LogisticModel& m, const std::vector<BitVector>& X,
                       const std::vector<int>& y) {
    if (X.empty() || X.size() != y.size()) {
        throw std::invalid_argument("accuracy needs a nonempty, aligned evaluation set");
    }
    std::size_t correct = 0;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const int predicted = predict_proba(m, X[i]) >= 0.5 ? 1 : 0;
        if (predicted == y[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(X.size());
}

// Model file format: {"weights": [...], "bias": ..., "vocab": [...]}.
inline nlohmann::json model_to_json(const LogisticModel& m, const Vocabulary& vocab) {
    if (m.weights.size() != vocab.tokens.size()) {
        throw std::invalid_argument("model width does not match vocabulary size");
    }
    return nlohmann::json{{"weights", m.weights}, {"bias", m.bias}, {"vocab", vocab.tokens}};
}

inline std::pair<LogisticModel, Vocabulary> model_from_json(const nlohmann::json& j) {
    if (!j.contains("weights") || !j.contains("bias") || !j.contains("vocab")) {
        throw DataError("model JSON must contain weights, bias and vocab");
    }
    std::vector<double> weights = j.at("weights").get<std::vector<double>>();
    std::vector<std::string> vocab = j.at("vocab").get<std::vector<std::string>>();
    if (weights.size() != vocab.size()) {
        throw DataError("model JSON weights/vocab size mismatch");
    }
    const std::size_t n = vocab.size();
    LogisticModel m(std::move(weights), j.at("bias").get<double>());
    return {std::move(m), make_vocabulary(std::move(vocab), n, false)};
}

inline void save_model(const std::string& path, const LogisticModel& m, const Vocabulary& vocab) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << model_to_json(m, vocab).dump(2) << '\n';
}

inline std::pair<LogisticModel, Vocabulary> load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid model JSON in " + path + ": " + e.what());
    }
    return model_from_json(j);
}

}  // namespace qlime
