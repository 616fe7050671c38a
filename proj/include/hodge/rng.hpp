#pragma once

#include <cstdint>

namespace hodge {

// splitmix64 finalizer (Sebastiano Vigna's public-domain constants).
// Used both to expand seeds and as the mixing step of derive_seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). State seeded through splitmix64 so any
// 64-bit seed, including 0, yields a valid nonzero state. The generator is
// self-contained on purpose: streams must be bit-identical across
// platforms and standard library versions.
class rng {
public:
    explicit rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) {
            sm += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = sm;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            w = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit mantissa.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double next_symmetric() { return 2.0 * next_double() - 1.0; }

    // Uniform integer in [0, n). Rejection on masked bits keeps the draw
    // unbiased and the stream deterministic. n must be positive.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> countl_zero64(n - 1);
        std::uint64_t x;
        do {
            x = next_u64() & mask;
        } while (x >= n);
        return x;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static int countl_zero64(std::uint64_t x) {
        if (x == 0) return 64;
        int n = 0;
        while (!(x & 0x8000000000000000ULL)) { x <<= 1; ++n; }
        return n;
    }

    std::uint64_t s_[4];
};

// Stable per-cell seed for experiment grids: hash of the master seed and up
// to two indices. Chained splitmix64 finalizers; order-sensitive.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i, std::uint64_t j = 0) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ (i + 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ (j + 0xd1b54a32d192ed03ULL));
    return h;
}

}  // namespace hodge
