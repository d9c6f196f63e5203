#pragma once

// Maps binary feature vectors to product states (present feature -> RY(pi/2),
// so its qubit sits in |+>; absent -> |0>), builds single-feature perturbed
// states, and draws perturbed bitstrings from them.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlime/rng.hpp"
#include "qlime/statevec.hpp"
#include "qlime/types.hpp"

namespace qlime {

using AngleVector = std::vector<double>;

// Direction of the single-feature flip applied by a perturbation.
enum class FlipMode { OneToZero, ZeroToOne };

// What happens to the non-flipped present features while perturbing:
// QuantumSampled measures them out of the encoded state (each present
// co-feature reads 0/1 with probability 1/2); DeterministicHold keeps them
// fixed, which reduces to the classical single-bit flip and serves as the
// test oracle.
enum class CoFeaturePolicy { QuantumSampled, DeterministicHold };

inline const char* to_string(FlipMode mode) {
    return mode == FlipMode::OneToZero ? "one_to_zero" : "zero_to_one";
}

inline AngleVector angles_for(const BitVector& x) {
    AngleVector thetas(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) thetas[i] = std::numbers::pi / 2.0;
    }
    return thetas;
}

namespace detail {

// Builds the product state by expanding one qubit at a time. Bit-identical
// to zero_state followed by apply_ry(q, theta_q) for q ascending (the gate
// path is the reference; tests assert equality), but touches 2^(n+1) entries
// instead of n * 2^n.
inline StateVector encode_angles(const AngleVector& thetas) {
    const int n = static_cast<int>(thetas.size());
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("feature vector length must be in [1, " +
                                    std::to_string(kMaxQubits) + "], got " + std::to_string(n));
    }
    StateVector s;
    s.n_qubits = n;
    s.amplitudes.assign(std::size_t{1} << n, {0.0, 0.0});
    s.amplitudes[0] = {1.0, 0.0};
    std::size_t filled = 1;
    for (int q = 0; q < n; ++q) {
        const double c = std::cos(thetas[static_cast<std::size_t>(q)] / 2.0);
        const double sn = std::sin(thetas[static_cast<std::size_t>(q)] / 2.0);
        for (std::size_t k = filled; k-- > 0;) {
            const std::complex<double> a = s.amplitudes[k];
            s.amplitudes[2 * k] = a * c;
            s.amplitudes[2 * k + 1] = a * sn;
        }
        filled *= 2;
    }
    return s;
}

inline void check_flip(const BitVector& x, int k, FlipMode mode) {
    if (k < 0 || static_cast<std::size_t>(k) >= x.size()) {
        throw std::out_of_range("feature index " + std::to_string(k) + " out of range");
    }
    const bool present = x[static_cast<std::size_t>(k)] != 0;
    if (mode == FlipMode::OneToZero && !present) {
        throw std::invalid_argument("cannot flip feature " + std::to_string(k) +
                                    " (one_to_zero requires bit 1, found 0)");
    }
    if (mode == FlipMode::ZeroToOne && present) {
        throw std::invalid_argument("cannot flip feature " + std::to_string(k) +
                                    " (zero_to_one requires bit 0, found 1)");
    }
}

}  // namespace detail

inline StateVector encode(const BitVector& x) { return detail::encode_angles(angles_for(x)); }

// Encoded state with the flipped feature's RY angle reset: the flipped qubit
// becomes deterministic |0> (OneToZero) or |+> (ZeroToOne). Applying X to the
// encoded state would not work here: a present feature's qubit is |+>, which
// X leaves unchanged, so the angle reset is the canonical perturbation.
inline StateVector perturbed_state(const BitVector& x, int k, FlipMode mode) {
    detail::check_flip(x, k, mode);
    AngleVector thetas = angles_for(x);
    thetas[static_cast<std::size_t>(k)] =
        mode == FlipMode::OneToZero ? 0.0 : std::numbers::pi / 2.0;
    return detail::encode_angles(thetas);
}

// Draws one perturbed bitstring for feature k. With QuantumSampled the
// perturbed state is measured: exactly when `shots` is empty (analytic mode),
// otherwise from the empirical distribution of `shots` measurements. With
// DeterministicHold the result is x with only bit k flipped.
inline BitVector draw_perturbed_bits(const BitVector& x, int k, FlipMode mode,
                                     CoFeaturePolicy policy, std::optional<int> shots, Rng& rng) {
    detail::check_flip(x, k, mode);
    if (policy == CoFeaturePolicy::DeterministicHold) {
        BitVector z = x;
        z[static_cast<std::size_t>(k)] ^= 1U;
        return z;
    }
    ProbabilityVector p = probabilities(perturbed_state(x, k, mode));
    if (shots.has_value()) p = sample_shots(p, *shots, rng);
    return sample(p, rng);
}

}  // namespace qlime
