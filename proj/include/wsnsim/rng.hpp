#pragma once

// Seed derivation and stateless hashing helpers.
//
// Every stochastic component draws from its own stream whose seed is derived
// from the master seed and a stable component name, so adding or removing a
// component never shifts the draws seen by the others.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>
#include <string_view>

namespace wsnsim {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Order-sensitive combination of several 64-bit keys.
constexpr std::uint64_t hash_combine(std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = 0x8445d61a4e774912ULL;
    for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) noexcept {
    return splitmix64(master ^ splitmix64(fnv1a(stream)));
}

inline Rng make_stream(std::uint64_t master, std::string_view stream) {
    return Rng{derive_seed(master, stream)};
}

// Uniform in (0, 1): never returns exactly 0 so it is safe under log().
constexpr double unit_open(std::uint64_t h) noexcept {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal variate fully determined by `key` (Box-Muller).
inline double hash_gaussian(std::uint64_t key) noexcept {
    const double u1 = unit_open(splitmix64(key));
    const double u2 = unit_open(splitmix64(key ^ 0xa0761d6478bd642fULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace wsnsim
