#pragma once

#include <cstdint>
#include <vector>

namespace boxstab {

// SplitMix64 (Steele, Lea, Flood 2014), the fixed generator for every
// randomized surface in this project. Chosen over std::mt19937_64 +
// std::uniform_int_distribution because the standard leaves distribution
// output implementation-defined; this pins byte-identical sweeps across
// toolchains.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection, n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Uniform in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0,1) with 53 random bits.
    double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // k distinct indices from [0, n), ascending (selection sampling).
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k) {
        std::vector<std::uint64_t> out;
        out.reserve(k);
        std::uint64_t needed = k;
        for (std::uint64_t i = 0; i < n && needed > 0; ++i) {
            if (below(n - i) < needed) {
                out.push_back(i);
                --needed;
            }
        }
        return out;
    }
};

// Derives a stream seed from (seed, index) so concurrent trials stay
// independent of scheduling order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    g.next();
    return g.next();
}

}  // namespace boxstab
