#pragma once

// Deterministic random streams. Every stochastic routine takes an explicit
// Rng; child streams are derived by hashing a key tuple so that parallel
// work gives identical results regardless of scheduling or worker count.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numbers>
#include <random>

namespace stablefield {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t key_bits(double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof(u));
    return u;
}

inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = mix64(base);
    for (std::uint64_t w : words) h = mix64(h ^ w);
    return h;
}

// mt19937_64 with self-contained variate transforms, so a stream of draws is
// reproducible independent of the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53-bit resolution
    double uniform01() { return double(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // unit-mean exponential, strictly positive
    double exponential() {
        double u;
        do {
            u = uniform01();
        } while (u == 0.0);
        return -std::log1p(-u);
    }

    // standard normal (Box-Muller, two uniforms per draw)
    double normal() {
        const double u = 1.0 - uniform01();
        const double v = uniform01();
        return std::sqrt(-2.0 * std::log(u)) *
               std::cos(2.0 * std::numbers::pi * v);
    }

    // standard Cauchy
    double cauchy() {
        return std::tan(std::numbers::pi * (uniform01() - 0.5));
    }

    int rademacher() { return (engine_() >> 63) ? 1 : -1; }

    // Poisson count by exponential waiting times; exact for any mean.
    std::uint64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        std::uint64_t n = 0;
        double t = exponential();
        while (t <= mean) {
            ++n;
            t += exponential();
        }
        return n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace stablefield
