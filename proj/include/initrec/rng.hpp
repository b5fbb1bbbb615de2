#pragma once

#include <cstdint>

// SplitMix64, used counter-style: node j of a stream with seed s draws
// mix64(s + (j+1)*kGolden). Draws are independent of evaluation order,
// which keeps noise generation bit-identical across serial and parallel
// paths and across platforms.
namespace initrec::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from 64 random bits (53-bit mantissa fill).
constexpr double uniform01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// The j-th draw of the stream with the given seed.
constexpr double draw_at(std::uint64_t seed, std::uint64_t j) {
    return uniform01(mix64(seed + (j + 1) * kGolden));
}

/// Decorrelated child seed (sweep cells, test generators).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(base ^ mix64((index + 1) * kGolden));
}

}  // namespace initrec::rng
