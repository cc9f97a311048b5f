#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "ttr/errors.hpp"

namespace ttr {

// Finalizer from splitmix64; good avalanche, used to derive independent seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base ^ mix64(stream + 0x632be59bd9b4e019ull));
}

// Deterministic random source. mt19937_64 has a standard-specified output
// sequence and every sampler below is written out explicitly, so a seed
// produces identical draws on any conforming platform. The std::*_distribution
// templates are deliberately avoided: their output is implementation-defined.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on (0, 1): 53 significand bits, offset by half an ulp so
    // neither endpoint is reachable. Safe as input to log().
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Uniform on {0, ..., n-1} by rejection, bias-free.
    int uniform_int(int n) {
        if (n <= 0) throw InvalidInputError("uniform_int: n must be positive");
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() / un * un;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<int>(x % un);
    }

    // Box-Muller; consumes exactly two uniforms per call, no cached spare.
    double normal(double mean, double stddev) {
        const double u = uniform01();
        const double v = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u));
        return mean + stddev * r * std::cos(2.0 * 3.141592653589793238462643383279502884 * v);
    }

    // Standard Gumbel draw; -log(-log U).
    double gumbel() { return -std::log(-std::log(uniform01())); }

private:
    std::mt19937_64 engine_;
};

}  // namespace ttr
