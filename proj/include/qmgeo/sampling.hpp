#pragma once

#include <array>
#include <cstdint>

namespace qmgeo {

/// splitmix64 generator. Hand-rolled so that seeded scans produce identical
/// streams on every platform and standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound), bound > 0. Rejection keeps it unbiased.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v / (UINT64_MAX / bound);
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// k distinct indices from [0, n), uniform over ordered k-tuples.
template <std::size_t K>
std::array<std::size_t, K> distinct_tuple(SplitMix64& rng, std::size_t n) {
    std::array<std::size_t, K> out{};
    for (std::size_t i = 0; i < K;) {
        const std::size_t v = static_cast<std::size_t>(rng.next_below(n));
        bool fresh = true;
        for (std::size_t j = 0; j < i; ++j) fresh = fresh && out[j] != v;
        if (fresh) out[i++] = v;
    }
    return out;
}

} // namespace qmgeo
