#include "qlime/statevec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace qlime;

namespace {

constexpr double kHalfSqrt2 = 0.7071067811865476;

StateVector random_product_state(int n_qubits, Rng& rng) {
    StateVector s = zero_state(n_qubits);
    for (int q = 0; q < n_qubits; ++q) {
        s = apply_ry(std::move(s), q, rng.uniform() * 4.0 * std::numbers::pi);
    }
    return s;
}

double norm_squared(const StateVector& s) {
    double total = 0.0;
    for (const auto& a : s.amplitudes) total += std::norm(a);
    return total;
}

}  // namespace

TEST(ZeroState, BasisZero) {
    const StateVector s2 = zero_state(2);
    ASSERT_EQ(s2.amplitudes.size(), 4u);
    EXPECT_EQ(s2.amplitudes[0], std::complex<double>(1.0, 0.0));
    for (std::size_t b = 1; b < 4; ++b) EXPECT_EQ(s2.amplitudes[b], std::complex<double>(0.0, 0.0));

    const StateVector s1 = zero_state(1);
    ASSERT_EQ(s1.amplitudes.size(), 2u);
    EXPECT_EQ(s1.amplitudes[0], std::complex<double>(1.0, 0.0));
    EXPECT_EQ(s1.amplitudes[1], std::complex<double>(0.0, 0.0));
}

TEST(ZeroState, RejectsOutOfRangeCounts) {
    EXPECT_THROW(zero_state(21), std::invalid_argument);
    EXPECT_THROW(zero_state(0), std::invalid_argument);
    EXPECT_THROW(zero_state(-1), std::invalid_argument);
    EXPECT_NO_THROW(zero_state(20));
}

TEST(ApplyRy, SingleQubitAngles) {
    StateVector s = apply_ry(zero_state(1), 0, std::numbers::pi / 2.0);
    EXPECT_NEAR(s.amplitudes[0].real(), kHalfSqrt2, 1e-15);
    EXPECT_NEAR(s.amplitudes[1].real(), kHalfSqrt2, 1e-15);

    s = apply_ry(zero_state(1), 0, 0.0);
    EXPECT_EQ(s.amplitudes[0], std::complex<double>(1.0, 0.0));
    EXPECT_EQ(s.amplitudes[1], std::complex<double>(0.0, 0.0));

    s = apply_ry(zero_state(1), 0, std::numbers::pi);
    EXPECT_NEAR(s.amplitudes[0].real(), 0.0, 1e-15);
    EXPECT_NEAR(s.amplitudes[1].real(), 1.0, 1e-15);
}

TEST(ApplyRy, RejectsBadQubit) {
    EXPECT_THROW(apply_ry(zero_state(2), 2, 0.1), std::out_of_range);
    EXPECT_THROW(apply_ry(zero_state(2), -1, 0.1), std::out_of_range);
}

TEST(ApplyX, TogglesTargetBit) {
    // |10> is basis index 2 under the big-endian convention; X on qubit 1
    // moves it to |11> = index 3.
    StateVector s = zero_state(2);
    s.amplitudes[0] = {0.0, 0.0};
    s.amplitudes[2] = {1.0, 0.0};
    s = apply_x(std::move(s), 1);
    EXPECT_EQ(s.amplitudes[3], std::complex<double>(1.0, 0.0));
    EXPECT_EQ(s.amplitudes[2], std::complex<double>(0.0, 0.0));
}

TEST(ApplyX, InvolutionIsExact) {
    Rng rng(7);
    for (int n = 1; n <= 6; ++n) {
        const StateVector original = random_product_state(n, rng);
        for (int q = 0; q < n; ++q) {
            const StateVector round_trip = apply_x(apply_x(original, q), q);
            for (std::size_t b = 0; b < original.amplitudes.size(); ++b) {
                EXPECT_EQ(round_trip.amplitudes[b], original.amplitudes[b]);
            }
        }
    }
}

TEST(ApplyX, PlusStateIsFixedPoint) {
    const StateVector plus = apply_ry(zero_state(1), 0, std::numbers::pi / 2.0);
    const StateVector flipped = apply_x(plus, 0);
    const ProbabilityVector before = probabilities(plus);
    const ProbabilityVector after = probabilities(flipped);
    EXPECT_NEAR(before.probs[0], after.probs[0], 1e-15);
    EXPECT_NEAR(before.probs[1], after.probs[1], 1e-15);
}

TEST(Probabilities, MatchesAmplitudeNorms) {
    const StateVector plus = apply_ry(zero_state(1), 0, std::numbers::pi / 2.0);
    const ProbabilityVector p1 = probabilities(plus);
    EXPECT_NEAR(p1.probs[0], 0.5, 1e-15);
    EXPECT_NEAR(p1.probs[1], 0.5, 1e-15);

    const ProbabilityVector p2 = probabilities(zero_state(2));
    EXPECT_EQ(p2.probs[0], 1.0);
    EXPECT_EQ(p2.probs[1] + p2.probs[2] + p2.probs[3], 0.0);

    // Feature vector [1, 0]: qubit 0 in |+>, qubit 1 stays |0>.
    const StateVector encoded = apply_ry(zero_state(2), 0, std::numbers::pi / 2.0);
    const ProbabilityVector p = probabilities(encoded);
    EXPECT_NEAR(p.probs[0], 0.5, 1e-15);
    EXPECT_EQ(p.probs[1], 0.0);
    EXPECT_NEAR(p.probs[2], 0.5, 1e-15);
    EXPECT_EQ(p.probs[3], 0.0);
}

TEST(Normalization, SurvivesRandomGateSequences) {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        Rng rng(seed);
        const int n = 1 + static_cast<int>(rng.uniform_index(6));
        StateVector s = zero_state(n);
        for (int g = 0; g < 20; ++g) {
            const int q = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
            const double theta = rng.uniform() * 4.0 * std::numbers::pi - 2.0 * std::numbers::pi;
            s = apply_ry(std::move(s), q, theta);
        }
        EXPECT_NEAR(norm_squared(s), 1.0, 1e-10) << "seed " << seed;
    }
}

TEST(ApplyRy, InverseRotationRestoresState) {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_index(5));
        const StateVector original = random_product_state(n, rng);
        const int q = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
        const double theta = rng.uniform() * 2.0 * std::numbers::pi;
        const StateVector restored = apply_ry(apply_ry(original, q, theta), q, -theta);
        for (std::size_t b = 0; b < original.amplitudes.size(); ++b) {
            EXPECT_NEAR(std::abs(restored.amplitudes[b] - original.amplitudes[b]), 0.0, 1e-10);
        }
    }
}

TEST(ProductClosedForm, ProbabilitiesFactorize) {
    Rng rng(2024);
    for (int n = 1; n <= 10; ++n) {
        std::vector<double> thetas(static_cast<std::size_t>(n));
        StateVector s = zero_state(n);
        for (int q = 0; q < n; ++q) {
            thetas[static_cast<std::size_t>(q)] = rng.uniform() * 2.0 * std::numbers::pi;
            s = apply_ry(std::move(s), q, thetas[static_cast<std::size_t>(q)]);
        }
        const ProbabilityVector p = probabilities(s);
        for (std::size_t b = 0; b < p.probs.size(); ++b) {
            double expected = 1.0;
            for (int q = 0; q < n; ++q) {
                const double half = thetas[static_cast<std::size_t>(q)] / 2.0;
                const bool bit = (b >> (n - 1 - q)) & 1U;
                expected *= bit ? std::sin(half) * std::sin(half)
                                : std::cos(half) * std::cos(half);
            }
            EXPECT_NEAR(p.probs[b], expected, 1e-12);
        }
    }
}

TEST(BasisConvention, IndexAndBitsRoundTrip) {
    // Feature 0 is the most significant bit of the basis label.
    EXPECT_EQ(basis_index({1, 0}), 2u);
    EXPECT_EQ(basis_index({0, 1}), 1u);
    EXPECT_EQ(basis_bits(2, 2), (BitVector{1, 0}));
    for (int n = 1; n <= 8; ++n) {
        for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
            EXPECT_EQ(basis_index(basis_bits(b, n)), b);
        }
    }
}

TEST(Sample, PointMassAndSupport) {
    ProbabilityVector point{2, {0.0, 1.0, 0.0, 0.0}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        EXPECT_EQ(sample(point, rng), (BitVector{0, 1}));
    }

    ProbabilityVector half{2, {0.5, 0.0, 0.5, 0.0}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const BitVector bits = sample(half, rng);
        EXPECT_EQ(bits[1], 0);
    }
}

TEST(Sample, DeterministicGivenSeed) {
    ProbabilityVector p{2, {0.1, 0.2, 0.3, 0.4}};
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) EXPECT_EQ(sample(p, a), sample(p, b));
}

TEST(SampleShots, PointMassAndGranularity) {
    ProbabilityVector point{1, {0.0, 1.0}};
    Rng rng(5);
    const ProbabilityVector empirical = sample_shots(point, 100, rng);
    EXPECT_EQ(empirical.probs[0], 0.0);
    EXPECT_EQ(empirical.probs[1], 1.0);

    ProbabilityVector p{2, {0.25, 0.25, 0.25, 0.25}};
    Rng rng2(6);
    const ProbabilityVector e = sample_shots(p, 100, rng2);
    double total = 0.0;
    for (double v : e.probs) {
        EXPECT_NEAR(v * 100.0, std::round(v * 100.0), 1e-9);
        total += v;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(SampleShots, ConvergesOnFairCoin) {
    ProbabilityVector p{1, {0.5, 0.5}};
    Rng rng(77);
    const ProbabilityVector e = sample_shots(p, 10000, rng);
    EXPECT_NEAR(e.probs[0], 0.5, 0.02);
    EXPECT_NEAR(e.probs[1], 0.5, 0.02);
}

TEST(SampleShots, RejectsZeroShots) {
    ProbabilityVector p{1, {0.5, 0.5}};
    Rng rng(1);
    EXPECT_THROW(sample_shots(p, 0, rng), std::invalid_argument);
}

TEST(Sampling, FrequenciesMatchProbabilities) {
    constexpr int kSamples = 100000;
    for (int n = 1; n <= 4; ++n) {
        Rng state_rng(static_cast<std::uint64_t>(900 + n));
        const StateVector s = random_product_state(n, state_rng);
        const ProbabilityVector p = probabilities(s);

        Rng rng(static_cast<std::uint64_t>(1000 + n));
        std::vector<int> counts(p.probs.size(), 0);
        for (int i = 0; i < kSamples; ++i) {
            ++counts[basis_index(sample(p, rng))];
        }
        for (std::size_t b = 0; b < p.probs.size(); ++b) {
            const double freq = static_cast<double>(counts[b]) / kSamples;
            const double se = std::sqrt(p.probs[b] * (1.0 - p.probs[b]) / kSamples);
            EXPECT_LE(std::abs(freq - p.probs[b]), 3.0 * se + 1e-9)
                << "n=" << n << " basis " << b;
        }
    }
}
