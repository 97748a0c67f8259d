#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ssmote {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic seed for a keyed sub-computation of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t s = mix64(master);
    for (std::uint64_t k : keys) s = mix64(s ^ mix64(k + 0x632BE59BD9B4E019ULL));
    return s;
}

/**
 * Generator for synthetic point `index` of a sampler run seeded with `seed`.
 *
 * Every point owns its stream, so generating points in any order or in
 * parallel yields the same batch.
 */
inline Rng point_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, {index}));
}

}  // namespace ssmote
