// Shared basics: error types, big integers, binomial helpers, subset iteration.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace redkit {

using BigInt = boost::multiprecision::cpp_int;

// Input that does not conform to a file format or type invariant.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A reference solver ran past its configured search cap.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// A reduction was invoked outside its precondition or failed internally.
struct ReductionError : std::runtime_error {
    explicit ReductionError(const std::string& msg) : std::runtime_error(msg) {}
};

// A proved size/count bound failed at runtime. Always a defect, never an input error.
struct BoundViolation : std::logic_error {
    explicit BoundViolation(const std::string& msg) : std::logic_error(msg) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ReductionError(msg);
}

inline void check_bound(bool cond, const std::string& msg) {
    if (!cond) throw BoundViolation(msg);
}

// Number of bits in the binary representation of |x|; bit_length(0) == 0.
inline unsigned bit_length(const BigInt& x) {
    if (x == 0) return 0;
    BigInt a = x < 0 ? BigInt(-x) : x;
    return static_cast<unsigned>(boost::multiprecision::msb(a)) + 1;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error(what);
    return r;
}

// Sum of C(k, i) for i = 0..d. For k < d the upper sizes contribute nothing,
// so the sum runs effectively to min(k, d).
inline std::uint64_t binom_le(int k, int d) {
    if (k < 0 || d < 0) throw std::invalid_argument("binom_le: negative argument");
    std::uint64_t total = 0;
    std::uint64_t c = 1;  // C(k, 0)
    for (int i = 0; i <= std::min(k, d); ++i) {
        std::uint64_t sum = 0;
        if (__builtin_add_overflow(total, c, &sum)) throw std::overflow_error("binom_le");
        total = sum;
        // C(k, i+1) = C(k, i) * (k - i) / (i + 1), exact at every step
        c = checked_mul(c, static_cast<std::uint64_t>(k - i), "binom_le") /
            static_cast<std::uint64_t>(i + 1);
    }
    return total;
}

inline int ceil_log2_u64(std::uint64_t x) {
    if (x <= 1) return 0;
    return 64 - __builtin_clzll(x - 1);
}

// Smallest L >= 0 with base^L >= x (x >= 1).
inline int ceil_log_base(std::uint64_t base, std::uint64_t x) {
    if (base < 2) throw std::invalid_argument("ceil_log_base: base < 2");
    int l = 0;
    std::uint64_t p = 1;
    while (p < x) {
        p = checked_mul(p, base, "ceil_log_base");
        ++l;
    }
    return l;
}

// Smallest q >= 2 with q^p > m.
inline BigInt min_base_exceeding(const BigInt& m, int p) {
    if (p < 1) throw std::invalid_argument("min_base_exceeding: p < 1");
    BigInt lo = 2, hi = 2;
    auto pow_gt = [&](const BigInt& q) {
        BigInt v = 1;
        for (int i = 0; i < p; ++i) {
            v *= q;
            if (v > m) return true;
        }
        return v > m;
    };
    while (!pow_gt(hi)) hi *= 2;
    while (lo < hi) {
        BigInt mid = (lo + hi) / 2;
        if (pow_gt(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// Calls fn(subset) for every subset of `universe` of size <= d, in
// lexicographic order of the index sequence (empty set first).
template <typename T, typename Fn>
void for_each_subset_le(const std::vector<T>& universe, int d, Fn&& fn) {
    std::vector<T> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        fn(static_cast<const std::vector<T>&>(cur));
        if (static_cast<int>(cur.size()) == d) return;
        for (std::size_t i = start; i < universe.size(); ++i) {
            cur.push_back(universe[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    if (d >= 0) rec(rec, 0);
}

inline std::string join_ints(const std::vector<int>& v, char sep = ' ') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s.push_back(sep);
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace redkit
