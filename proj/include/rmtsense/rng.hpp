// SPDX-License-Identifier: Apache-2.0
//
// Deterministic, seed-portable random number generation. The generator stack
// is fixed so that a (seed, draw sequence) pair reproduces byte-identical
// streams everywhere: splitmix64 expands seeds, xoshiro256++ produces the
// uint64 stream, uniforms take the top 53 bits, and Gaussians come from the
// Marsaglia polar transform. Platform-default generators and the standard
// <random> distributions (whose algorithms are implementation-defined) are
// deliberately not used anywhere in the library.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace rmt {

/// splitmix64 (Steele/Lea/Flood): seed expander and per-stream seed source.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256++ (Blackman/Vigna), seeded through splitmix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : state_) word = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Marsaglia polar; one spare value is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    /// Circularly-symmetric complex Gaussian with E|z|^2 = 1
    /// (real and imaginary parts i.i.d. N(0, 1/2)).
    std::complex<double> complex_gaussian() {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        const double re = gaussian();
        const double im = gaussian();
        return {inv_sqrt2 * re, inv_sqrt2 * im};
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Expands one master seed into a deterministic stream of per-object seeds
/// (per ensemble factor, per sensor, per Monte Carlo run).
class SeedStream {
public:
    constexpr explicit SeedStream(std::uint64_t master) : mix_(master) {}
    constexpr std::uint64_t next() { return mix_.next(); }

private:
    SplitMix64 mix_;
};

} // namespace rmt
