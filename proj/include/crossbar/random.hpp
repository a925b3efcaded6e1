#pragma once

// Deterministic random streams and per-trial child-seed derivation.
//
// A child seed is derived from (master, index, role) by chaining the
// SplitMix64 finalizer:
//
//     h0 = mix(master)
//     h1 = mix(h0 ^ (index + golden))
//     h2 = mix(h1 ^ (role  + 2*golden))
//
// where golden = 0x9E3779B97F4A7C15 and mix is the SplitMix64 output
// function. Reproducibility holds within this implementation; Gaussian
// variates come from the standard library and are not portable bit-for-bit.

#include <cmath>
#include <cstdint>
#include <random>

#include "crossbar/dense.hpp"

namespace crossbar {

/// Tags that keep the streams of one trial apart.
enum class StreamRole : std::uint64_t {
    input = 1,
    noise = 2,
    matrix = 3,
    sweep = 4,
};

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                                    StreamRole role) noexcept {
    const std::uint64_t h0 = mix64(master);
    const std::uint64_t h1 = mix64(h0 ^ (index + kGolden));
    return mix64(h1 ^ (static_cast<std::uint64_t>(role) + 2 * kGolden));
}

/// Single-lane pseudorandom stream. Not copyable: two owners of one state
/// would silently replay the same draws.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    RandomStream(const RandomStream&) = delete;
    RandomStream& operator=(const RandomStream&) = delete;
    RandomStream(RandomStream&&) noexcept = default;
    RandomStream& operator=(RandomStream&&) noexcept = default;

    static RandomStream child(std::uint64_t master, std::uint64_t index, StreamRole role) {
        return RandomStream(derive_seed(master, index, role));
    }

    double standard_normal() { return normal_(engine_); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    /// Zero-mean draw with the given variance.
    double draw(Distribution dist, double variance) {
        if (dist == Distribution::gaussian) return std::sqrt(variance) * standard_normal();
        const double half_width = std::sqrt(3.0 * variance);
        return uniform(-half_width, half_width);
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

namespace detail {

template <typename Derived>
void fill_random(Eigen::DenseBase<Derived>& out, double variance, Distribution dist,
                 RandomStream& rng) {
    if (dist == Distribution::gaussian) {
        const double scale = std::sqrt(variance);
        for (Index i = 0; i < out.rows(); ++i)
            for (Index j = 0; j < out.cols(); ++j) out(i, j) = scale * rng.standard_normal();
        return;
    }
    for (Index i = 0; i < out.rows(); ++i)
        for (Index j = 0; j < out.cols(); ++j) out(i, j) = rng.draw(dist, variance);
}

}  // namespace detail

}  // namespace crossbar
