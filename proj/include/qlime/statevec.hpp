#pragma once

// Dense state-vector simulator for up to kMaxQubits qubits. Supports RY
// rotations, Pauli-X, exact probability readout and seeded measurement
// sampling. Operations take states by value and return the transformed
// state, so callers can treat states as immutable values and use distinct
// states freely on distinct threads.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlime/rng.hpp"
#include "qlime/types.hpp"

namespace qlime {

struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amplitudes;  // 2^n_qubits entries

    std::size_t dim() const { return amplitudes.size(); }
};

// Measurement distribution over the 2^n basis states.
struct ProbabilityVector {
    int n_qubits = 0;
    std::vector<double> probs;
};

namespace detail {

inline void check_qubit(const StateVector& s, int q) {
    if (q < 0 || q >= s.n_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(s.n_qubits) + " qubits");
    }
}

// Index stride of qubit q under the big-endian bit convention (types.hpp).
inline std::size_t qubit_stride(int n_qubits, int q) {
    return std::size_t{1} << (n_qubits - 1 - q);
}

// One categorical draw by inverse-CDF scan; consumes a single uniform.
// Never returns a zero-probability index.
inline std::size_t sample_index(const std::vector<double>& probs, Rng& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    std::size_t last_support = 0;
    bool seen_support = false;
    for (std::size_t b = 0; b < probs.size(); ++b) {
        if (probs[b] <= 0.0) continue;
        cumulative += probs[b];
        last_support = b;
        seen_support = true;
        if (u < cumulative) return b;
    }
    if (!seen_support) throw std::invalid_argument("probability vector has empty support");
    return last_support;  // u landed in the rounding gap below 1
}

}  // namespace detail

// |0...0> on n qubits.
inline StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n_qubits));
    }
    StateVector s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    s.amplitudes[0] = {1.0, 0.0};
    return s;
}

// RY(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]] on qubit q.
inline StateVector apply_ry(StateVector s, int q, double theta) {
    detail::check_qubit(s, q);
    const double c = std::cos(theta / 2.0);
    const double sn = std::sin(theta / 2.0);
    const std::size_t stride = detail::qubit_stride(s.n_qubits, q);
    auto& amp = s.amplitudes;
    for (std::size_t base = 0; base < amp.size(); base += 2 * stride) {
        for (std::size_t offset = 0; offset < stride; ++offset) {
            const std::size_t i0 = base + offset;
            const std::size_t i1 = i0 + stride;
            const std::complex<double> a0 = amp[i0];
            const std::complex<double> a1 = amp[i1];
            amp[i0] = c * a0 - sn * a1;
            amp[i1] = sn * a0 + c * a1;
        }
    }
    return s;
}

// Pauli-X on qubit q: swaps amplitudes of basis pairs differing in bit q.
inline StateVector apply_x(StateVector s, int q) {
    detail::check_qubit(s, q);
    const std::size_t stride = detail::qubit_stride(s.n_qubits, q);
    auto& amp = s.amplitudes;
    for (std::size_t base = 0; base < amp.size(); base += 2 * stride) {
        for (std::size_t offset = 0; offset < stride; ++offset) {
            std::swap(amp[base + offset], amp[base + offset + stride]);
        }
    }
    return s;
}

inline ProbabilityVector probabilities(const StateVector& s) {
    ProbabilityVector p;
    p.n_qubits = s.n_qubits;
    p.probs.resize(s.amplitudes.size());
    for (std::size_t b = 0; b < s.amplitudes.size(); ++b) {
        p.probs[b] = std::norm(s.amplitudes[b]);
    }
    return p;
}

// One measurement outcome, decoded to feature bits.
inline BitVector sample(const ProbabilityVector& p, Rng& rng) {
    return basis_bits(detail::sample_index(p.probs, rng), p.n_qubits);
}

// Empirical distribution from `shots` independent measurements. Draws are
// resolved against a precomputed cumulative table; each lands on the same
// outcome the per-draw scan in sample() would produce.
inline ProbabilityVector sample_shots(const ProbabilityVector& p, int shots, Rng& rng) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    std::vector<double> cumulative(p.probs.size());
    double running = 0.0;
    std::size_t last_support = p.probs.size();
    for (std::size_t b = 0; b < p.probs.size(); ++b) {
        if (p.probs[b] > 0.0) {
            running += p.probs[b];
            last_support = b;
        }
        cumulative[b] = running;
    }
    if (last_support == p.probs.size()) {
        throw std::invalid_argument("probability vector has empty support");
    }
    std::vector<std::size_t> counts(p.probs.size(), 0);
    for (int i = 0; i < shots; ++i) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const std::size_t b =
            it == cumulative.end()
                ? last_support
                : static_cast<std::size_t>(it - cumulative.begin());
        ++counts[b];
    }
    ProbabilityVector empirical;
    empirical.n_qubits = p.n_qubits;
    empirical.probs.resize(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b) {
        empirical.probs[b] = static_cast<double>(counts[b]) / static_cast<double>(shots);
    }
    return empirical;
}

}  // namespace qlime
