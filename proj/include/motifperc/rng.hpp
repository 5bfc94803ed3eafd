#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace motifperc {

// splitmix64 step; also used to derive independent substreams from one seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t s = seed + 0x517cc1b727220a95ULL * salt;
    return splitmix64(s);
}

// FNV-1a, the stable id hash used for per-cascade stream derivation.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Uniform double in [0,1) from the top 53 bits. std::uniform_real_distribution
// is not bit-reproducible across standard libraries; this is.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0,n) via masked rejection, reproducible everywhere.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~0ULL >> std::countl_zero(n - 1);
    std::uint64_t v;
    do {
        v = rng() & mask;
    } while (v >= n);
    return v;
}

inline bool bernoulli(std::mt19937_64& rng, double p) {
    return uniform_double(rng) < p;
}

inline double exponential(std::mt19937_64& rng, double rate) {
    // inverse CDF; 1-u avoids log(0)
    return -std::log(1.0 - uniform_double(rng)) / rate;
}

template <class T>
void shuffle_indices(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace motifperc
