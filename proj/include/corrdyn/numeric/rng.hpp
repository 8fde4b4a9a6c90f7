#pragma once

#include <cstdint>
#include <random>

namespace corrdyn::numeric {

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream `id` (and optional sub-stream) of the master seed. Streams depend only
// on (seed, id, sub), never on thread scheduling.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t id, std::uint64_t sub = 0) {
    return std::mt19937_64(mix64(mix64(seed) ^ mix64(id * 0x100000001b3ULL + sub)));
}

inline double uniform01(std::mt19937_64& g) {
    // 53 random bits; avoids the implementation-defined distribution classes.
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(std::mt19937_64& g, std::size_t n) {
    return static_cast<std::size_t>(uniform01(g) * static_cast<double>(n)) % n;
}

}  // namespace corrdyn::numeric
