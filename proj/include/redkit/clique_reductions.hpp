// Self-reductions for exact-weight hypergraph clique: completion, partite
// splitting, target shifting, non-negativity, prime-modulus weight hashing,
// the carry/squaring weight reduction, weight stripping, and the slack-part
// minimization-to-exact search.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

#include "redkit/instances.hpp"
#include "redkit/oracles.hpp"
#include "redkit/rng.hpp"

namespace redkit {

/// A disjunction of oracle queries: the combined answer is yes iff at least
/// one query answers yes.
struct QuerySet {
    std::vector<WeightedCliqueInstance> queries;
    ReductionTrace trace;
};

namespace detail {

// Subsets of {0..n-1} of size <= max_size meeting each part at most once,
// in lexicographic order. Without a partition, all subsets of size <= max_size.
template <typename Fn>
void for_each_candidate_subset(const WeightedCliqueInstance& inst, int max_size, Fn&& fn) {
    std::vector<int> cur;
    std::uint64_t part_mask = 0;
    auto rec = [&](auto&& self, int start) -> void {
        fn(static_cast<const std::vector<int>&>(cur));
        if (static_cast<int>(cur.size()) == max_size) return;
        for (int v = start; v < inst.n; ++v) {
            std::uint64_t bit = 0;
            if (inst.partition) {
                bit = 1ULL << (*inst.partition)[static_cast<std::size_t>(v)];
                if (part_mask & bit) continue;
                part_mask |= bit;
            }
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
            part_mask &= ~bit;
        }
    };
    if (max_size >= 0) rec(rec, 0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Preprocessing self-reductions

/// Adds every missing candidate edge with the prohibitive weight
/// binom_le(k,d) * max(M,1), so no solution can use it. On partitioned
/// instances only part-respecting subsets are candidates (others can never
/// lie inside a one-per-part clique). Output max weight <= binom_le(k,d)*max(M,1).
inline WeightedCliqueInstance make_complete(const WeightedCliqueInstance& inst) {
    WeightedCliqueInstance out = inst;
    BigInt m_hat = inst.max_weight();
    if (m_hat == 0) m_hat = 1;
    BigInt blocker = BigInt(binom_le(inst.k, inst.d)) * m_hat;
    detail::for_each_candidate_subset(inst, inst.d, [&](const std::vector<int>& sub) {
        out.edges.emplace(sub, blocker);
    });
    check_bound(out.max_weight() <= blocker, "make_complete: output weight bound violated");
    return out;
}

/// Splits every vertex into one copy per part: vertex (a, v) gets index
/// a*n + v. Each edge of size s is copied once per injective assignment of
/// s distinct parts to its vertices; the partition is recorded and the
/// maximum weight is unchanged. Already-partitioned instances pass through.
///
/// For d == 1 and k >= 2 the copies of a single vertex are mutually
/// unconstrained, which would let a "clique" reuse one original vertex in
/// several parts. The instance is therefore lifted to d = 2 by adding all
/// zero-weight pairs of copies of *distinct* originals; pairs of copies of
/// the same original stay absent and block the reuse.
inline WeightedCliqueInstance make_k_partite(const WeightedCliqueInstance& inst) {
    if (inst.partition) return inst;
    WeightedCliqueInstance out;
    out.n = inst.k * inst.n;
    out.k = inst.k;
    out.t = inst.t;
    bool lift = inst.d == 1 && inst.k >= 2;
    out.d = lift ? 2 : inst.d;
    std::vector<int> part(static_cast<std::size_t>(out.n), 0);
    for (int a = 0; a < inst.k; ++a)
        for (int v = 0; v < inst.n; ++v) part[static_cast<std::size_t>(a * inst.n + v)] = a;
    out.partition = std::move(part);

    for (const auto& [e, w] : inst.edges) {
        int s = static_cast<int>(e.size());
        std::vector<int> labels(static_cast<std::size_t>(s), 0);
        std::uint64_t used = 0;
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == s) {
                std::vector<int> copy(static_cast<std::size_t>(s));
                for (int i = 0; i < s; ++i)
                    copy[static_cast<std::size_t>(i)] =
                        labels[static_cast<std::size_t>(i)] * inst.n + e[static_cast<std::size_t>(i)];
                std::sort(copy.begin(), copy.end());
                out.edges.emplace(std::move(copy), w);
                return;
            }
            for (int a = 0; a < inst.k; ++a) {
                if (used & (1ULL << a)) continue;
                used |= 1ULL << a;
                labels[static_cast<std::size_t>(pos)] = a;
                self(self, pos + 1);
                used &= ~(1ULL << a);
            }
        };
        rec(rec, 0);
    }
    if (lift) {
        for (int a = 0; a < inst.k; ++a)
            for (int b = a + 1; b < inst.k; ++b)
                for (int u = 0; u < inst.n; ++u)
                    for (int v = 0; v < inst.n; ++v) {
                        if (u == v) continue;
                        std::vector<int> pair{a * inst.n + u, b * inst.n + v};
                        std::sort(pair.begin(), pair.end());
                        out.edges.emplace(std::move(pair), BigInt(0));
                    }
    }
    check_bound(out.max_weight() <= inst.max_weight(), "make_k_partite: max weight grew");
    out.validate();
    return out;
}

/// Moves the target into the weights: t is subtracted from every size-d edge
/// whose part-label set is exactly {0..d-1}; every k-clique contains exactly
/// one such edge. Requires a partitioned instance with k >= d. Output max
/// weight <= 2M.
inline WeightedCliqueInstance make_target_zero(const WeightedCliqueInstance& inst) {
    require(inst.partition.has_value(), "make_target_zero: instance must be partitioned");
    require(inst.k >= inst.d, "make_target_zero: requires k >= d");
    WeightedCliqueInstance out = inst;
    const auto& part = *inst.partition;
    for (auto& [e, w] : out.edges) {
        if (static_cast<int>(e.size()) != inst.d) continue;
        std::uint64_t labels = 0;
        for (int v : e) labels |= 1ULL << part[static_cast<std::size_t>(v)];
        std::uint64_t first_d = inst.d == 64 ? ~0ULL : (1ULL << inst.d) - 1;
        if (labels == first_d) w -= inst.t;
    }
    out.t = 0;
    check_bound(out.max_weight() <= 2 * inst.max_weight(),
                "make_target_zero: output weight bound violated");
    return out;
}

/// Completes the instance, then shifts all weights by L = max(0, -min w) and
/// the target by L * binom_le(k,d). Returns nullopt when the shifted target
/// falls outside the reachable range (a trivial no-instance). Output max
/// weight <= 2 * binom_le(k,d)^2 * max(M,1).
inline std::optional<WeightedCliqueInstance> make_nonnegative(const WeightedCliqueInstance& inst) {
    WeightedCliqueInstance out = make_complete(inst);
    BigInt binom = binom_le(inst.k, inst.d);
    BigInt shift = 0;
    for (const auto& [e, w] : out.edges)
        if (w < 0 && -w > shift) shift = -w;
    BigInt max_w = 0;
    for (auto& [e, w] : out.edges) {
        w += shift;
        if (w > max_w) max_w = w;
    }
    out.t = inst.t + shift * binom;
    BigInt m_hat = inst.max_weight();
    if (m_hat == 0) m_hat = 1;
    check_bound(out.max_weight() <= 2 * binom * binom * m_hat,
                "make_nonnegative: output weight bound violated");
    if (out.t < 0 || out.t > max_w * binom) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------
// Prime-modulus weight hashing

/// Deterministic Miller-Rabin over a fixed base set. Proven exact below
/// 3.3e24; the additional bases make a miss astronomically unlikely for the
/// larger candidates this module samples.
inline bool mr_is_prime(const BigInt& n) {
    if (n < 2) return false;
    static const int small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    for (int p : small_primes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    static const int bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (int b : bases) {
        BigInt x = boost::multiprecision::powm(BigInt(b), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < s; ++i) {
            x = (x * x) % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

/// The constant-size stand-in emitted after the oracle-free brute-force path:
/// a one-vertex instance that is a yes-instance iff `yes`.
inline WeightedCliqueInstance trivial_answer_instance(bool yes) {
    WeightedCliqueInstance inst;
    inst.n = 1;
    inst.d = 0;
    inst.k = 1;
    inst.t = yes ? 0 : 1;
    inst.edges.emplace(std::vector<int>{}, BigInt(0));
    return inst;
}

/// Weight hashing mod a random prime. Requires non-negative weights and
/// target. Instances with M <= n^k pass through; astronomically weighted
/// instances (ln M >= n^k) are solved by brute force directly. Otherwise a
/// prime p is sampled from [2, ~2*Q*ln(Q)] with Q = 200 * n^k * log2(k^d M),
/// weights are reduced mod p and one query is emitted per feasible target
/// j*p + (t mod p). Yes-instances stay yes with certainty; no-instances stay
/// no with probability >= 99%. Query weights stay below binom_le(k,d) * p.
inline QuerySet reduce_weights_mod_prime(const WeightedCliqueInstance& inst, Rng& rng,
                                         const OracleBudget& budget = {}) {
    for (const auto& [e, w] : inst.edges)
        require(w >= 0, "reduce_weights_mod_prime: negative weight");
    require(inst.t >= 0, "reduce_weights_mod_prime: negative target");
    QuerySet out;
    BigInt m = inst.max_weight();
    BigInt nk = 1;
    for (int i = 0; i < inst.k; ++i) nk *= std::max(inst.n, 1);
    if (m <= nk) {
        out.queries.push_back(inst);
        out.trace.add("prime-hash", "mode", std::string("passthrough"));
        out.trace.add("prime-hash", "queries", std::uint64_t{1});
        return out;
    }
    // ln M >= n^k  <=>  M at least e^(n^k); compare via bit length.
    BigInt huge_bits = (nk * 14427) / 10000 + 2;
    if (BigInt(bit_length(m)) >= huge_bits) {
        bool yes = solve_exact_weight_clique(inst, budget).has_value();
        out.queries.push_back(trivial_answer_instance(yes));
        out.trace.add("prime-hash", "mode", std::string("bruteforce"));
        out.trace.add("prime-hash", "queries", std::uint64_t{1});
        return out;
    }
    BigInt kd = 1;
    for (int i = 0; i < inst.d; ++i) kd *= std::max(inst.k, 1);
    BigInt q_target = 200 * nk * BigInt(bit_length(kd * m));
    // A range of 2*Q*ln(Q) integers contains at least Q primes.
    BigInt ln_q = (BigInt(bit_length(q_target)) * 6931) / 10000 + 1;
    BigInt upper = 2 * q_target * ln_q;
    if (upper < 17) upper = 17;
    std::uint64_t max_tries = 160ULL * (bit_length(upper) + 1);
    BigInt prime = 0;
    for (std::uint64_t i = 0; i < max_tries; ++i) {
        BigInt cand = rng.big_range(2, upper);
        if (mr_is_prime(cand)) {
            prime = cand;
            break;
        }
    }
    require(prime != 0, "reduce_weights_mod_prime: prime sampling budget exhausted");

    std::uint64_t binom = inst.binom();
    BigInt t_mod = inst.t % prime;
    WeightedCliqueInstance qinst = inst;
    for (auto& [e, w] : qinst.edges) w %= prime;
    // The clique weight mod p is at most binom*(p-1); larger targets are
    // unreachable and skipped, which also keeps every query weight below
    // binom * p.
    BigInt reachable = BigInt(binom) * (prime - 1);
    for (std::uint64_t j = 0; j <= binom; ++j) {
        BigInt tq = BigInt(j) * prime + t_mod;
        if (tq > reachable) break;
        qinst.t = tq;
        check_bound(qinst.max_weight() <= BigInt(binom) * prime,
                    "reduce_weights_mod_prime: query weight bound violated");
        out.queries.push_back(qinst);
    }
    out.trace.add("prime-hash", "mode", std::string("hash"));
    out.trace.add("prime-hash", "prime", prime);
    out.trace.add("prime-hash", "queries", static_cast<std::uint64_t>(out.queries.size()));
    out.trace.add("prime-hash", "max_query_weight", BigInt(binom) * prime);
    return out;
}

// ---------------------------------------------------------------------------
// Base-q expansions and carries

/// Digits of N in base q, least significant first, zero-padded to length L.
/// Requires q^L > N.
inline std::vector<std::int64_t> q_expand(BigInt n, std::int64_t q, int L) {
    require(n >= 0, "q_expand: negative value");
    require(q >= 2, "q_expand: base must be >= 2");
    require(L >= 0, "q_expand: negative length");
    std::vector<std::int64_t> digits(static_cast<std::size_t>(L), 0);
    for (int l = 0; l < L; ++l) {
        digits[static_cast<std::size_t>(l)] = static_cast<std::int64_t>(n % q);
        n /= q;
    }
    require(n == 0, "q_expand: q^L <= N");
    return digits;
}

struct CarryCheck {
    bool lin_ok = false;   // q*c[l+1] + t[l] == c[l] + s[l] for all l (with c[L] = 0 closing)
    bool quad_ok = false;  // the single quadratic identity
    bool range_ok = false; // c[0] == 0 and every carry within [0, 2*binom_le(k,d)]
};

/// Checks the per-digit linear equations and the summed quadratic identity
/// for given digit sums s[l] = sum_e w_l(e), target digits t[l] and carries
/// c[0..L]. Positions beyond L are treated as zero.
inline CarryCheck check_carry_conditions(const std::vector<std::int64_t>& edge_digit_sums,
                                         const std::vector<std::int64_t>& t_digits,
                                         const std::vector<std::int64_t>& carries,
                                         std::int64_t q, int k, int d) {
    std::size_t L = edge_digit_sums.size();
    require(t_digits.size() == L, "check_carry_conditions: ragged digit lengths");
    require(carries.size() == L + 1, "check_carry_conditions: carries must have length L+1");
    CarryCheck r;
    r.lin_ok = true;
    BigInt quad = 0;
    for (std::size_t l = 0; l <= L; ++l) {
        std::int64_t s = l < L ? edge_digit_sums[l] : 0;
        std::int64_t t = l < L ? t_digits[l] : 0;
        std::int64_t c = carries[l];
        std::int64_t c_next = l < L ? carries[l + 1] : 0;
        if (q * c_next + t != c + s) r.lin_ok = false;
        BigInt term = BigInt(c) - t - BigInt(q) * c_next + s;
        quad += term * term;
    }
    r.quad_ok = quad == 0;
    std::int64_t cap = 2 * static_cast<std::int64_t>(binom_le(k, d));
    r.range_ok = carries[0] == 0;
    for (std::int64_t c : carries)
        if (c < 0 || c > cap) r.range_ok = false;
    return r;
}

/// The unique carry sequence satisfying the linear equations, built
/// inductively from c[0] = 0. Returns nullopt when some step is not a
/// non-negative integer or the final carry is nonzero.
inline std::optional<std::vector<std::int64_t>> compute_carries(
    const std::vector<std::int64_t>& edge_digit_sums, const std::vector<std::int64_t>& t_digits,
    std::int64_t q) {
    std::size_t L = edge_digit_sums.size();
    require(t_digits.size() == L, "compute_carries: ragged digit lengths");
    std::vector<std::int64_t> c(L + 1, 0);
    for (std::size_t l = 0; l < L; ++l) {
        std::int64_t num = c[l] + edge_digit_sums[l] - t_digits[l];
        if (num < 0 || num % q != 0) return std::nullopt;
        c[l + 1] = num / q;
    }
    if (c[L] != 0) return std::nullopt;
    return c;
}

// ---------------------------------------------------------------------------
// The carry/squaring weight reduction

namespace detail {

// One emitted query, exposed to internal consumers without forcing them to
// re-read BigInt weights: `weights` is aligned with `fsets`.
struct SquareTrickQueryView {
    const WeightedCliqueInstance& instance;
    const std::vector<std::vector<int>>& fsets;
    const std::vector<std::int64_t>& weights;
    std::int64_t target;
    const std::vector<std::int64_t>& carries;
};

struct SquareTrickStats {
    std::uint64_t queries = 0;
    BigInt max_abs_weight = 0;
    std::int64_t q = 0;
    int L = 0;
    bool trivially_no = false;
};

template <typename RichVisitor>
SquareTrickStats square_trick_core(const WeightedCliqueInstance& inst, int p,
                                   RichVisitor&& visit) {
    require(p >= 1, "square-trick: p must be >= 1");
    SquareTrickStats stats;
    auto nn = make_nonnegative(make_k_partite(make_complete(inst)));
    if (!nn) {
        stats.trivially_no = true;
        return stats;
    }
    const WeightedCliqueInstance& g = *nn;
    int d1 = g.d;
    std::uint64_t binom = binom_le(g.k, d1);
    BigInt m = 0;
    if (g.t > m) m = g.t;
    for (const auto& [e, w] : g.edges)
        if (w > m) m = w;

    BigInt q_big = min_base_exceeding(m, p);
    require(q_big <= BigInt(1) << 31, "square-trick: weights too large; hash them down first");
    std::int64_t q = static_cast<std::int64_t>(q_big);
    int L = p + ceil_log_base(static_cast<std::uint64_t>(q), 2 * binom + 1) + 1;
    stats.q = q;
    stats.L = L;

    // Keep every intermediate product within int64.
    BigInt weight_cap = 64 * BigInt(binom) * binom * binom * binom * q * q * (L + 1);
    require(weight_cap <= BigInt(INT64_MAX) / 4, "square-trick: output weight range too large");
    std::int64_t cap64 = static_cast<std::int64_t>(weight_cap);

    // Digit tables for edges and target.
    std::vector<const std::vector<int>*> edge_keys;
    std::vector<std::vector<std::int64_t>> edge_digits;
    std::map<std::vector<int>, int> edge_index;
    for (const auto& [e, w] : g.edges) {
        edge_index.emplace(e, static_cast<int>(edge_keys.size()));
        edge_keys.push_back(&e);
        edge_digits.push_back(q_expand(w, q, L));
    }
    std::vector<std::int64_t> t_digits = q_expand(g.t, q, L);

    // All candidate output edges: part-respecting subsets of size <= 2*d1.
    std::vector<std::vector<int>> fsets;
    detail::for_each_candidate_subset(g, 2 * d1, [&](const std::vector<int>& sub) {
        fsets.push_back(sub);
    });

    // Guess-independent pair convolution P(f) plus the edge index of f itself.
    std::vector<std::int64_t> pair_term(fsets.size(), 0);
    std::vector<int> self_edge(fsets.size(), -1);
    for (std::size_t fi = 0; fi < fsets.size(); ++fi) {
        const auto& f = fsets[fi];
        auto it = edge_index.find(f);
        if (it != edge_index.end()) self_edge[fi] = it->second;
        int fs = static_cast<int>(f.size());
        __int128 acc = 0;
        // ordered pairs (e1, e2) of edges with e1 union e2 == f
        for (std::uint32_t m1 = 0; m1 < (1u << fs); ++m1) {
            std::vector<int> e1;
            for (int b = 0; b < fs; ++b)
                if (m1 & (1u << b)) e1.push_back(f[static_cast<std::size_t>(b)]);
            if (static_cast<int>(e1.size()) > d1) continue;
            auto it1 = edge_index.find(e1);
            if (it1 == edge_index.end()) continue;
            std::uint32_t rest = ((1u << fs) - 1) & ~m1;
            // e2 must contain f \ e1 and may take any subset of e1
            for (std::uint32_t s = m1;; s = (s - 1) & m1) {
                std::uint32_t m2 = rest | s;
                std::vector<int> e2;
                for (int b = 0; b < fs; ++b)
                    if (m2 & (1u << b)) e2.push_back(f[static_cast<std::size_t>(b)]);
                if (static_cast<int>(e2.size()) <= d1) {
                    auto it2 = edge_index.find(e2);
                    if (it2 != edge_index.end()) {
                        const auto& d1v = edge_digits[static_cast<std::size_t>(it1->second)];
                        const auto& d2v = edge_digits[static_cast<std::size_t>(it2->second)];
                        for (int l = 0; l < L; ++l)
                            acc += static_cast<__int128>(d1v[static_cast<std::size_t>(l)]) *
                                   d2v[static_cast<std::size_t>(l)];
                    }
                }
                if (s == 0) break;
            }
        }
        check_bound(acc <= cap64 && acc >= -static_cast<__int128>(cap64),
                    "square-trick: pair term exceeds weight bound");
        pair_term[fi] = static_cast<std::int64_t>(acc);
    }

    // Query skeleton shared across guesses; weight slots stay aligned with fsets.
    WeightedCliqueInstance skel;
    skel.n = g.n;
    skel.d = 2 * d1;
    skel.k = g.k;
    skel.partition = g.partition;
    for (const auto& f : fsets) skel.edges.emplace(f, BigInt(0));
    std::vector<BigInt*> weight_slots;
    weight_slots.reserve(fsets.size());
    for (const auto& f : fsets) weight_slots.push_back(&skel.edges.at(f));

    // Exhaust carry vectors c[0..L] with c[0] = c[L] = 0 and every carry in
    // [0, 2*binom]. Per digit position, only carries consistent with *some*
    // digit sum in [0, binom*(q-1)] can ever satisfy the linear equations
    // (positions >= p have all-zero weight digits), so infeasible branches
    // are pruned: the pruned guesses yield queries that are provably no.
    std::vector<std::int64_t> carries(static_cast<std::size_t>(L) + 1, 0);
    std::vector<std::int64_t> a(static_cast<std::size_t>(L), 0);
    std::vector<std::int64_t> wq(fsets.size(), 0);
    BigInt query_cap = 1;
    for (int l = 0; l < L; ++l) query_cap *= BigInt(2 * binom + 1);
    std::int64_t cmax = static_cast<std::int64_t>(2 * binom);

    auto emit = [&]() {
        for (int l = 0; l < L; ++l)
            a[static_cast<std::size_t>(l)] = carries[static_cast<std::size_t>(l)] -
                                             t_digits[static_cast<std::size_t>(l)] -
                                             q * carries[static_cast<std::size_t>(l) + 1];
        std::int64_t target = 0;
        for (int l = 0; l < L; ++l) {
            std::int64_t al = a[static_cast<std::size_t>(l)];
            target -= al * al;
        }
        check_bound(target >= -cap64, "square-trick: target exceeds weight bound");
        for (std::size_t fi = 0; fi < fsets.size(); ++fi) {
            std::int64_t w = pair_term[fi];
            if (self_edge[fi] >= 0) {
                const auto& dv = edge_digits[static_cast<std::size_t>(self_edge[fi])];
                std::int64_t lin = 0;
                for (int l = 0; l < L; ++l)
                    lin += dv[static_cast<std::size_t>(l)] * a[static_cast<std::size_t>(l)];
                w += 2 * lin;
            }
            check_bound(w <= cap64 && w >= -cap64, "square-trick: weight exceeds bound");
            wq[fi] = w;
            *weight_slots[fi] = w;
            BigInt aw = w < 0 ? BigInt(-w) : BigInt(w);
            if (aw > stats.max_abs_weight) stats.max_abs_weight = aw;
        }
        skel.t = target;
        ++stats.queries;
        check_bound(BigInt(stats.queries) <= query_cap,
                    "square-trick: query count exceeds carry-space bound");
        SquareTrickQueryView view{skel, fsets, wq, target, carries};
        visit(view);
    };

    std::int64_t max_digit_sum = static_cast<std::int64_t>(binom) * (q - 1);
    auto rec = [&](auto&& self, int l) -> void {
        if (l == L) {
            if (carries[static_cast<std::size_t>(L)] == 0) emit();
            return;
        }
        std::int64_t base = carries[static_cast<std::size_t>(l)] - t_digits[static_cast<std::size_t>(l)];
        std::int64_t sum_cap = l < p ? max_digit_sum : 0;
        // q*c[l+1] = base + s for some s in [0, sum_cap]
        std::int64_t lo = base <= 0 ? 0 : (base + q - 1) / q;
        std::int64_t hi_num = base + sum_cap;
        if (hi_num < 0) return;
        std::int64_t hi = hi_num / q;
        if (hi > cmax) hi = cmax;
        for (std::int64_t c = lo; c <= hi; ++c) {
            carries[static_cast<std::size_t>(l) + 1] = c;
            self(self, l + 1);
        }
    };
    rec(rec, 0);
    return stats;
}

}  // namespace detail

/// Algorithm: complete + partite + non-negative preprocessing, then guess the
/// carry vector of the base-q column addition and turn the per-digit balance
/// checks into one exact-weight query on the 2d-hypergraph whose weights are
/// the expanded square of the original constraint. The disjunction over all
/// carry guesses preserves the answer exactly. Emits at most
/// (2*binom_le(k,d)+1)^L queries with |weights| <= 64*binom^4*q^2*(L+1).
template <typename Visitor>  // void(const WeightedCliqueInstance&)
ReductionTrace square_trick_stream(const WeightedCliqueInstance& inst, int p, Visitor&& visit) {
    ReductionTrace trace;
    auto stats = detail::square_trick_core(inst, p, [&](const detail::SquareTrickQueryView& v) {
        visit(static_cast<const WeightedCliqueInstance&>(v.instance));
    });
    trace.add("square-trick", "trivially_no", std::uint64_t{stats.trivially_no ? 1u : 0u});
    trace.add("square-trick", "q", stats.q);
    trace.add("square-trick", "digits", static_cast<std::int64_t>(stats.L));
    trace.add("square-trick", "queries", stats.queries);
    trace.add("square-trick", "max_abs_weight", stats.max_abs_weight);
    return trace;
}

inline QuerySet square_trick_reduce(const WeightedCliqueInstance& inst, int p) {
    QuerySet out;
    out.trace = square_trick_stream(inst, p, [&](const WeightedCliqueInstance& q) {
        out.queries.push_back(q);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Weight stripping

/// Runs the squaring reduction, then eliminates weights entirely: for every
/// query, every k-clique uses exactly one edge per color type (the set of
/// parts an edge meets), so the per-type weight contributions a_C are guessed
/// and only edges matching the guess survive, unweighted. Only values that
/// actually occur on edges of a type are enumerated; with `naive_full_range`
/// the whole interval [-M', M'] is swept instead (differential testing only).
template <typename Visitor>  // void(const WeightedCliqueInstance&)
ReductionTrace strip_weights_stream(const WeightedCliqueInstance& inst, int p, Visitor&& visit,
                                    bool naive_full_range = false, int declared_f = 12) {
    BigInt poly_cap = 1;
    for (int i = 0; i < declared_f; ++i) poly_cap *= std::max(inst.n, 2);
    require(inst.max_weight() <= poly_cap,
            "strip-weights: weights exceed the declared polynomial bound");
    ReductionTrace trace;
    std::uint64_t unweighted_queries = 0;

    auto stats = detail::square_trick_core(inst, p, [&](const detail::SquareTrickQueryView& v) {
        const WeightedCliqueInstance& g = v.instance;
        const auto& part = *g.partition;
        // color type of each candidate edge, as a part bitmask
        std::size_t nf = v.fsets.size();
        std::vector<std::uint64_t> type_of(nf, 0);
        std::map<std::uint64_t, std::vector<std::size_t>> by_type;
        for (std::size_t i = 0; i < nf; ++i) {
            std::uint64_t t = 0;
            for (int vx : v.fsets[i]) t |= 1ULL << part[static_cast<std::size_t>(vx)];
            type_of[i] = t;
            by_type[t].push_back(i);
        }
        std::vector<std::uint64_t> types;
        std::vector<std::vector<std::int64_t>> values;  // sorted distinct per type
        for (auto& [t, idxs] : by_type) {
            types.push_back(t);
            std::vector<std::int64_t> vals;
            for (auto i : idxs) vals.push_back(v.weights[i]);
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
            if (naive_full_range && t != 0) {
                std::int64_t mprime = 0;
                for (auto w : v.weights) mprime = std::max(mprime, w < 0 ? -w : w);
                require(2 * mprime + 1 <= 4096, "strip-weights: full-range sweep too large");
                vals.clear();
                for (std::int64_t x = -mprime; x <= mprime; ++x) vals.push_back(x);
            }
            values.push_back(std::move(vals));
        }
        std::size_t nt = types.size();
        // suffix min/max sums for pruning
        std::vector<std::int64_t> suf_min(nt + 1, 0), suf_max(nt + 1, 0);
        for (std::size_t i = nt; i-- > 0;) {
            if (values[i].empty()) return;  // type unrealizable: no surviving guess
            suf_min[i] = suf_min[i + 1] + values[i].front();
            suf_max[i] = suf_max[i + 1] + values[i].back();
        }
        std::vector<std::int64_t> pick(nt, 0);
        auto rec = [&](auto&& self, std::size_t ti, std::int64_t remaining) -> void {
            if (ti == nt) {
                if (remaining != 0) return;
                WeightedCliqueInstance ga;
                ga.n = g.n;
                ga.d = g.d;
                ga.k = g.k;
                ga.t = 0;
                ga.partition = g.partition;
                for (std::size_t i = 0; i < nf; ++i) {
                    auto it = std::lower_bound(types.begin(), types.end(), type_of[i]);
                    std::size_t c = static_cast<std::size_t>(it - types.begin());
                    if (v.weights[i] == pick[c]) ga.edges.emplace(v.fsets[i], BigInt(0));
                }
                ++unweighted_queries;
                visit(static_cast<const WeightedCliqueInstance&>(ga));
                return;
            }
            for (std::int64_t val : values[ti]) {
                std::int64_t rest = remaining - val;
                if (rest < suf_min[ti + 1] || rest > suf_max[ti + 1]) continue;
                pick[ti] = val;
                self(self, ti + 1, rest);
            }
        };
        rec(rec, 0, v.target);
    });

    trace.add("strip-weights", "trivially_no", std::uint64_t{stats.trivially_no ? 1u : 0u});
    trace.add("strip-weights", "weighted_queries", stats.queries);
    trace.add("strip-weights", "unweighted_queries", unweighted_queries);
    trace.add("strip-weights", "q", stats.q);
    return trace;
}

inline QuerySet strip_weights(const WeightedCliqueInstance& inst, int p,
                              bool naive_full_range = false) {
    QuerySet out;
    out.trace = strip_weights_stream(
        inst, p, [&](const WeightedCliqueInstance& q) { out.queries.push_back(q); },
        naive_full_range);
    return out;
}

/// Default digit-count parameter for weight stripping: round(sqrt(log2 n)),
/// at least 1.
inline int default_strip_p(int n) {
    double lg = std::log2(static_cast<double>(std::max(n, 2)));
    int p = static_cast<int>(std::llround(std::sqrt(lg)));
    return std::max(1, p);
}

/// Smallest p >= p_wanted whose squared-weight envelope fits the int64
/// arithmetic of the carry reduction, using the preprocessing weight bound
/// 2 * binom^2 * max(M,1) as a conservative stand-in for the instance the
/// reduction will actually see. Raising p never affects correctness, only
/// the carry-space size.
inline int feasible_strip_p(const WeightedCliqueInstance& inst, int p_wanted) {
    int d1 = (inst.d == 1 && inst.k >= 2) ? 2 : inst.d;
    BigInt binom = binom_le(inst.k, d1);
    BigInt m_hat = inst.max_weight();
    if (m_hat == 0) m_hat = 1;
    BigInt m_eff = 2 * binom * binom * m_hat;
    for (int p = std::max(1, p_wanted);; ++p) {
        BigInt q = min_base_exceeding(m_eff, p);
        if (q > BigInt(1) << 31) continue;
        std::uint64_t b2 = 2 * static_cast<std::uint64_t>(binom) + 1;
        int L = p + ceil_log_base(static_cast<std::uint64_t>(q), b2) + 1;
        BigInt cap = 64 * binom * binom * binom * binom * q * q * (L + 1);
        if (cap <= BigInt(INT64_MAX) / 4) return p;
        require(p < 64, "feasible_strip_p: no workable digit parameter");
    }
}

// ---------------------------------------------------------------------------
// Minimization via exact queries

struct MinToExactResult {
    std::optional<CliqueSolution> best;  // vertices in the instance handed to the oracle
    int decisions = 0;
    ReductionTrace trace;
};

/// The recorded decision set must be consistent with a monotone threshold:
/// no "no" answer above a "yes" answer.
inline void check_decision_monotonicity(const std::map<std::int64_t, bool>& answers) {
    bool seen_yes = false;
    for (const auto& [t, yes] : answers) {
        (void)t;
        if (seen_yes && !yes)
            throw BoundViolation("min_to_exact: decision answers are not monotone in T");
        if (yes) seen_yes = true;
    }
}

/// Decides "exists a k-clique of weight <= T" through an exact-weight oracle
/// by adding one slack part s_0..s_W (W = binom_le(k,d) * max w): slack
/// vertex s_j carries singleton weight j and zero-weight edges to every
/// part-respecting set of at most d-1 original vertices, so a clique of
/// original weight w extends to exact weight w + j for every j <= W. Binary
/// search over T recovers the minimum with at most ceil(log2(W+1)) + 1
/// decisions; recorded answers are checked for monotonicity.
template <typename ExactOracle>  // std::optional<CliqueSolution>(const WeightedCliqueInstance&)
MinToExactResult min_to_exact(const WeightedCliqueInstance& inst, ExactOracle&& oracle) {
    for (const auto& [e, w] : inst.edges)
        require(w >= 0, "min_to_exact: negative weight (shift weights first)");
    require(inst.d >= 1, "min_to_exact: requires d >= 1");
    WeightedCliqueInstance base = inst.partition ? inst : make_k_partite(inst);

    BigInt max_w = 0;
    for (const auto& [e, w] : base.edges)
        if (w > max_w) max_w = w;
    BigInt w_big = BigInt(binom_le(base.k, base.d)) * max_w;
    require(w_big <= 1'000'000, "min_to_exact: weight range too large for the slack part");
    std::int64_t W = static_cast<std::int64_t>(w_big);

    WeightedCliqueInstance slack = base;
    slack.k = base.k + 1;
    slack.n = base.n + static_cast<int>(W) + 1;
    auto part = *base.partition;
    part.resize(static_cast<std::size_t>(slack.n), base.k);
    slack.partition = std::move(part);
    std::vector<std::vector<int>> small_sets;
    detail::for_each_candidate_subset(base, base.d - 1, [&](const std::vector<int>& sub) {
        small_sets.push_back(sub);
    });
    for (std::int64_t j = 0; j <= W; ++j) {
        int sj = base.n + static_cast<int>(j);
        for (const auto& x : small_sets) {
            std::vector<int> e = x;
            e.push_back(sj);  // slack index is largest, so e stays sorted
            slack.edges.emplace(std::move(e), x.empty() ? BigInt(j) : BigInt(0));
        }
    }
    slack.validate();

    MinToExactResult res;
    std::map<std::int64_t, bool> answers;
    std::optional<CliqueSolution> witness;
    auto decide = [&](std::int64_t T) {
        slack.t = T;
        auto sol = oracle(static_cast<const WeightedCliqueInstance&>(slack));
        ++res.decisions;
        answers[T] = sol.has_value();
        if (sol) witness = sol;
        return sol.has_value();
    };

    std::int64_t lo = 0, hi = W;
    bool any_yes = false;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (decide(mid)) {
            any_yes = true;
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (!any_yes) {
        if (!decide(lo)) {
            check_decision_monotonicity(answers);
            res.trace.add("min-to-exact", "decisions", static_cast<std::int64_t>(res.decisions));
            return res;
        }
    } else if (!answers.count(lo)) {
        decide(lo);
    }
    check_decision_monotonicity(answers);
    require(answers.at(lo), "min_to_exact: search converged on a no answer");

    CliqueSolution best;
    best.weight = lo;
    if (witness) {
        for (int v : witness->vertices)
            if (v < base.n) best.vertices.push_back(v);
        std::sort(best.vertices.begin(), best.vertices.end());
    }
    res.best = best;
    res.trace.add("min-to-exact", "decisions", static_cast<std::int64_t>(res.decisions));
    res.trace.add("min-to-exact", "min_weight", BigInt(lo));
    return res;
}

}  // namespace redkit
