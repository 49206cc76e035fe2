// Deterministic random helpers. The raw mt19937_64 sequence is pinned by the
// standard; distributions are hand-rolled so that identical seeds give
// identical streams on every platform (std::uniform_real_distribution and
// friends are implementation-defined).
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>

namespace qaxiom {

inline double uniform_unit(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53; // [0, 1)
}

inline double uniform_in(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(g);
}

// Box-Muller; both variates are consumed to keep the stream position fixed.
inline std::pair<double, double> normal_pair(std::mt19937_64& g) {
    double u1 = uniform_unit(g);
    double u2 = uniform_unit(g);
    while (u1 == 0.0) u1 = uniform_unit(g);
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
}

// FNV-1a over the tag, mixed with the base seed: stable per-check streams
// that do not depend on execution order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h ^ (seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

} // namespace qaxiom
