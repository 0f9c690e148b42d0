#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace inspect {

/// SplitMix64 finaliser; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of substream (a, b) under a master seed.
///
/// Streams are keyed by (purpose, index) pairs, e.g. (kNoiseRows, j) for row j of a
/// generated matrix, so the bits drawn for one row never depend on how many rows
/// exist or on the order in which rows are filled.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix64(mix64(mix64(seed) ^ a) + b);
}

/// A portable random stream: std::mt19937_64 (bit-exact across standard libraries)
/// with distribution transforms implemented here rather than by the standard
/// library, whose distributions are implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1).
    double uniform_open() { return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52; }

    /// Uniform integer on [0, bound) by rejection (bound > 0).
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % bound;
    }

    /// Standard normal by the Marsaglia polar method; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    /// Standard exponential (mean 1) by inversion.
    double exponential() { return -std::log(uniform_open()); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace inspect
