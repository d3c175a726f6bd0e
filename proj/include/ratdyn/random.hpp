#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ratdyn {

// Every random decision is drawn from a named stream: mt19937_64 seeded with
// splitmix64(seed ^ fnv1a(name)). Streams in use: "graph-curve" (chart
// rotation, basepoint, reconstruction nodes), "identities" (fiber sample
// points), "measure" (backward orbits; one sub-stream per cloud).
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline Rng make_stream(std::uint64_t seed, std::string_view name) { return Rng(splitmix64(seed ^ fnv1a(name))); }

// Uniform in [0, 1) from the top 53 bits; identical on every platform, unlike
// std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// Uniform integer in [lo, hi].
inline long uniform_int(Rng& rng, long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
}

}  // namespace ratdyn
