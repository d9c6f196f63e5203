#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qlime {

// Hard cap on feature/qubit count: 2^20 complex doubles is 16 MiB per state.
inline constexpr int kMaxQubits = 20;

// Binary feature vector, one entry (0 or 1) per vocabulary feature.
using BitVector = std::vector<std::uint8_t>;

inline int popcount(const BitVector& x) {
    int m = 0;
    for (auto b : x) m += (b != 0);
    return m;
}

// Bit ordering used everywhere: feature/qubit i is bit i of the basis label
// written left to right, so feature 0 is the most significant bit and
// basis_index = sum_i bit_i * 2^(n-1-i). A printed label therefore reads in
// feature order.
inline std::size_t basis_index(const BitVector& bits) {
    std::size_t b = 0;
    for (auto bit : bits) b = (b << 1) | (bit != 0);
    return b;
}

inline BitVector basis_bits(std::size_t index, int n_qubits) {
    BitVector bits(static_cast<std::size_t>(n_qubits));
    for (int i = 0; i < n_qubits; ++i) {
        bits[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((index >> (n_qubits - 1 - i)) & 1U);
    }
    return bits;
}

}  // namespace qlime
