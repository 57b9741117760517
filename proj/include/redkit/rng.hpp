// Seeded random source with explicit, platform-stable sampling helpers.
// std::uniform_int_distribution is implementation-defined, so all sampling
// is done by hand on top of the mt19937_64 stream.
#pragma once

#include <cstdint>
#include <random>

#include "redkit/common.hpp"

namespace redkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed)
        : engine_(seed), seed_mix_(splitmix64(seed ^ 0xa0761d6478bd642fULL)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, n); n == 0 is an error. Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t n) {
        require(n > 0, "Rng::below: empty range");
        if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            std::uint64_t v = next_u64();
            if (v < limit) return v % n;
        }
    }

    // Uniform in [lo, hi], inclusive.
    std::int64_t range_i64(std::int64_t lo, std::int64_t hi) {
        require(lo <= hi, "Rng::range_i64: bad range");
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64());  // full 64-bit span
        return lo + static_cast<std::int64_t>(below(span));
    }

    bool coin() { return (next_u64() & 1) != 0; }

    // True with probability num/den.
    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

    // Uniform BigInt in [0, bound), bound >= 1. Samples bit_length(bound-1)
    // bits and rejects out-of-range values.
    BigInt big_below(const BigInt& bound) {
        require(bound > 0, "Rng::big_below: empty range");
        if (bound == 1) return 0;
        unsigned bits = bit_length(bound - 1);
        unsigned words = (bits + 63) / 64;
        for (;;) {
            BigInt v = 0;
            for (unsigned i = 0; i < words; ++i) {
                v <<= 64;
                v |= BigInt(next_u64());
            }
            v >>= (words * 64 - bits);
            if (v < bound) return v;
        }
    }

    BigInt big_range(const BigInt& lo, const BigInt& hi) {
        require(lo <= hi, "Rng::big_range: bad range");
        return lo + big_below(hi - lo + 1);
    }

    // Independent child stream; stable under changes to sibling consumption.
    Rng child(std::uint64_t stream) const {
        return Rng(splitmix64(seed_mix_ ^ splitmix64(stream)));
    }

  private:
    std::mt19937_64 engine_;
    std::uint64_t seed_mix_ = 0;
};

}  // namespace redkit
