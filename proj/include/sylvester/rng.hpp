#pragma once

// Counter-based random streams and the variate generators used by the
// Monte Carlo oracle. Trial i of a run with seed s draws from its own
// stream (s, i), so results do not depend on how trials are scheduled.

#include <cmath>
#include <cstdint>
#include <limits>

namespace sylvester {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** generator; models UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x += 0x9E3779B97F4A7C15ULL;
            w = mix64(x);
        }
    }

    /// Stream for trial `index` of a run seeded with `seed`.
    static Xoshiro256 stream(std::uint64_t seed, std::uint64_t index) {
        return Xoshiro256(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

/// Uniform on the open interval (0, 1).
template <class Rng>
double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard normal by the Marsaglia polar method.
template <class Rng>
double standard_normal(Rng& rng) {
    for (;;) {
        const double u = 2.0 * uniform_open(rng) - 1.0;
        const double v = 2.0 * uniform_open(rng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

/// Gamma(shape, 1) by Marsaglia-Tsang squeeze/rejection; shapes below 1 use
/// the boost G(a) = G(a+1) U^{1/a}.
template <class Rng>
double gamma_variate(Rng& rng, double shape) {
    if (shape < 1.0) {
        const double g = gamma_variate(rng, shape + 1.0);
        return g * std::exp(std::log(uniform_open(rng)) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open(rng);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

/// Beta(a, b) as G_a / (G_a + G_b).
template <class Rng>
double beta_variate(Rng& rng, double a, double b) {
    const double x = gamma_variate(rng, a);
    const double y = gamma_variate(rng, b);
    return x / (x + y);
}

}  // namespace sylvester
