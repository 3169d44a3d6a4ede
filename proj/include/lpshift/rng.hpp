#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

// Seeded randomness for the whole pipeline. Everything here is fully
// specified arithmetic on uint64, so results are identical across
// platforms and standard-library versions. std::shuffle and the std
// distributions are deliberately avoided: their output is
// implementation-defined.

namespace lpshift {

// splitmix64 finalizer. Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stateless keyed hash: fold any number of components into one draw.
constexpr std::uint64_t hash_u64() { return 0x2545f4914f6cdd1dULL; }

template <typename... Rest>
constexpr std::uint64_t hash_u64(std::uint64_t head, Rest... rest) {
    return mix64(head ^ hash_u64(static_cast<std::uint64_t>(rest)...));
}

// Map a draw to [0,1). 53 mantissa bits, never returns 1.0.
constexpr double unit_double(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

std::uint64_t fnv1a64(std::string_view s);

// Labeled seed fan-out: one master seed per run, one stream per stage.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
    return hash_u64(master, fnv1a64(label));
}

// Sequential splitmix64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Unbiased integer in [0, n). Rejection sampling, n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    double unit() { return unit_double(next()); }

private:
    std::uint64_t state_;
};

// Move a uniform k-subset to the front of v (partial Fisher-Yates).
// The first k entries afterwards are the sample, order randomized.
template <typename T>
void partial_shuffle(std::vector<T>& v, std::size_t k, Rng& rng) {
    if (k > v.size()) k = v.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(v.size() - i));
        using std::swap;
        swap(v[i], v[j]);
    }
}

}  // namespace lpshift
