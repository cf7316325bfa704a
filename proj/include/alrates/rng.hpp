#pragma once
#include <cstdint>
#include <cmath>

namespace alrates {

// splitmix64 finalizer. Used for seed derivation and counter-based sampling.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ b);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b) ^ c);
}

// uniform double in [0,1) from 64 random bits (53-bit mantissa)
inline double bits_to_u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based uniform: sample k of a keyed sequence. Stateless, so
// parallel evaluation gives bit-identical results to the serial loop.
inline double counter_u01(std::uint64_t seed, std::uint64_t k) {
    return bits_to_u01(mix64(seed, k));
}

// Counter-based standard normal (Box-Muller, cosine branch).
inline double counter_gauss(std::uint64_t seed, std::uint64_t k) {
    double u1 = bits_to_u01(mix64(seed, 2 * k) | 1u);  // keep away from 0
    double u2 = bits_to_u01(mix64(seed, 2 * k + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

// Trial seed derivation for the experiment harness:
//   seed = mix64(mix64(base, budget), trial)
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t budget, std::uint64_t trial) {
    return mix64(mix64(base, budget), trial);
}

}  // namespace alrates
