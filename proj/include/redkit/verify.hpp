// Seeded property suites: each one drives a reduction over a generated
// corpus, compares against the exhaustive oracles and re-checks the proved
// size bounds. Reports are deterministic for a fixed seed (no wall-clock
// content), so reruns must be byte-identical.
#pragma once

#include <sstream>

#include "redkit/circuit_compile.hpp"
#include "redkit/clique_reductions.hpp"
#include "redkit/generators.hpp"
#include "redkit/ov_reductions.hpp"
#include "redkit/sat_reductions.hpp"

namespace redkit {

struct SuiteReport {
    std::string name;
    int trials = 0;
    int passed = 0;
    int failed = 0;
    std::vector<std::string> lines;

    bool ok() const { return failed == 0; }
    void line(const std::string& s) { lines.push_back(s); }
    void pass() {
        ++trials;
        ++passed;
    }
    void fail(const std::string& why) {
        ++trials;
        ++failed;
        if (failed <= 5) lines.push_back("failure: " + why);
    }
    std::string text() const {
        std::ostringstream os;
        os << "[suite] " << name << "\n";
        for (const auto& l : lines) os << "  " << l << "\n";
        os << "  result " << passed << "/" << trials << (ok() ? " pass" : " FAIL") << "\n";
        return os.str();
    }
};

namespace verify_detail {

inline bool or_answer(const std::vector<WeightedCliqueInstance>& queries) {
    for (const auto& q : queries)
        if (solve_exact_weight_clique(q)) return true;
    return false;
}

inline WeightedCliqueInstance corpus_clique(Rng& rng, int max_n, int max_d, int k, int wmax,
                                            bool partitioned, bool nonneg) {
    CliqueGenParams p;
    p.k = k;
    p.n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n - 1)));
    p.d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_d)));
    p.wmax = wmax;
    p.nonnegative = nonneg;
    p.density_pct = 60 + static_cast<int>(rng.below(41));
    p.partitioned = partitioned;
    p.planted = rng.coin();
    if (partitioned || p.planted) p.n = std::max(p.n, p.k);
    return gen_clique(p, rng);
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Preprocessing self-reductions (completion, partite split, target shift,
// non-negativity): answer preservation and the per-op weight bounds.

inline SuiteReport verify_preprocessing(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "preprocessing";
    Rng root(seed);
    int ok_complete = 0, ok_partite = 0, ok_zero = 0, ok_nonneg = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            auto inst = verify_detail::corpus_clique(rng, 8, 2, 3, 100, false, false);
            bool before = solve_exact_weight_clique(inst).has_value();
            BigInt m_hat = inst.max_weight();
            if (m_hat == 0) m_hat = 1;
            BigInt binom(inst.binom());

            auto comp = make_complete(inst);
            bool c_ok = solve_exact_weight_clique(comp).has_value() == before &&
                        comp.max_weight() <= binom * m_hat;
            ok_complete += c_ok ? 1 : 0;

            auto part = make_k_partite(inst);
            bool p_ok = solve_exact_weight_clique(part).has_value() == before &&
                        part.max_weight() <= inst.max_weight();
            ok_partite += p_ok ? 1 : 0;

            // target shift needs a partite instance with k >= d
            auto pinst = verify_detail::corpus_clique(rng, 8, 2, 3, 100, true, false);
            bool pbefore = solve_exact_weight_clique(pinst).has_value();
            auto zero = make_target_zero(pinst);
            bool z_ok = solve_exact_weight_clique(zero).has_value() == pbefore &&
                        zero.t == 0 && zero.max_weight() <= 2 * pinst.max_weight();
            ok_zero += z_ok ? 1 : 0;

            auto nn = make_nonnegative(inst);
            bool n_ok;
            if (!nn) {
                n_ok = !before;
            } else {
                n_ok = solve_exact_weight_clique(*nn).has_value() == before &&
                       nn->max_weight() <= 2 * binom * binom * m_hat;
            }
            ok_nonneg += n_ok ? 1 : 0;

            if (c_ok && p_ok && z_ok && n_ok)
                rep.pass();
            else
                rep.fail("trial " + std::to_string(trial) + " preservation or bound");
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("make-complete       " + std::to_string(ok_complete) + "/" + std::to_string(trials));
    rep.line("make-k-partite      " + std::to_string(ok_partite) + "/" + std::to_string(trials));
    rep.line("make-target-zero    " + std::to_string(ok_zero) + "/" + std::to_string(trials));
    rep.line("make-nonnegative    " + std::to_string(ok_nonneg) + "/" + std::to_string(trials));
    return rep;
}

// ---------------------------------------------------------------------------
// Prime-modulus hashing: yes-instances always survive; no-instances survive
// as no in at least 99% of the trials.

inline SuiteReport verify_prime_hash(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "prime-hash";
    Rng root(seed);
    int yes_ok = 0, no_ok = 0, no_total = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            CliqueGenParams p;
            p.n = 3 + static_cast<int>(rng.below(4));
            p.d = 2;
            p.k = 3;
            p.wmax = BigInt(1) << 128;
            p.nonnegative = true;
            p.density_pct = 100;
            p.planted = true;
            auto inst = gen_clique(p, rng);
            auto qs = reduce_weights_mod_prime(inst, rng);
            bool got = verify_detail::or_answer(qs.queries);
            yes_ok += got ? 1 : 0;
            if (got)
                rep.pass();
            else
                rep.fail("yes-instance lost at trial " + std::to_string(trial));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(0x10000000ULL + static_cast<std::uint64_t>(trial));
        try {
            CliqueGenParams p;
            p.n = 3 + static_cast<int>(rng.below(4));
            p.d = 2;
            p.k = 3;
            p.wmax = BigInt(1) << 128;
            p.nonnegative = true;
            p.density_pct = 100;
            auto inst = gen_clique(p, rng);
            int resample = 0;
            while (solve_exact_weight_clique(inst) && resample < 50) {
                inst = gen_clique(p, rng);
                ++resample;
            }
            if (solve_exact_weight_clique(inst)) continue;  // could not find a no-instance
            ++no_total;
            auto qs = reduce_weights_mod_prime(inst, rng);
            bool got = verify_detail::or_answer(qs.queries);
            no_ok += got ? 0 : 1;
            rep.pass();  // individual false positives are allowed by the 99% bound
        } catch (const std::exception& e) {
            rep.fail(std::string("no-trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("yes-side preserved  " + std::to_string(yes_ok) + "/" + std::to_string(trials));
    rep.line("no-side preserved   " + std::to_string(no_ok) + "/" + std::to_string(no_total));
    // the headline guarantee: >= 99% on the no side, 100% on the yes side
    if (yes_ok != trials) rep.fail("yes-side below 100%");
    if (no_ok * 100 < no_total * 99) rep.fail("no-side below 99%");
    return rep;
}

// ---------------------------------------------------------------------------
// Carry equivalence: sum-has-target iff feasible carries exist (linear and
// quadratic forms), exhaustively over small digit boxes.

inline SuiteReport verify_carry() {
    SuiteReport rep;
    rep.name = "carry-equivalence";
    std::uint64_t checks = 0, counterexamples = 0, cross_checks = 0;
    for (std::int64_t q : {2, 3, 4}) {
        const int L = 5;
        std::int64_t wcap = q * q;  // weights of up to two base-q digits
        for (int cnt = 0; cnt <= 4; ++cnt) {
            std::vector<std::int64_t> w(static_cast<std::size_t>(cnt), 0);
            auto scan = [&](auto&& self, int pos, std::int64_t lo) -> void {
                if (pos < cnt) {
                    for (std::int64_t v = lo; v < wcap; ++v) {
                        w[static_cast<std::size_t>(pos)] = v;
                        self(self, pos + 1, v);
                    }
                    return;
                }
                std::int64_t total = 0;
                for (auto x : w) total += x;
                std::vector<std::int64_t> s(static_cast<std::size_t>(L), 0);
                for (auto x : w) {
                    auto dx = q_expand(x, q, L);
                    for (int l = 0; l < L; ++l)
                        s[static_cast<std::size_t>(l)] += dx[static_cast<std::size_t>(l)];
                }
                std::int64_t cap = 2 * std::max(cnt, 1);
                for (std::int64_t t = 0; t <= cnt * (wcap - 1) + 1; ++t) {
                    auto td = q_expand(t, q, L);
                    bool item_i = total == t;
                    // existence search: follow the forced chain (any branch off
                    // it violates a prefix equation, hence both items)
                    bool item_ii = false, item_iii = false;
                    auto chain = compute_carries(s, td, q);
                    if (chain) {
                        bool in_range = true;
                        for (auto cv : *chain)
                            if (cv < 0 || cv > cap) in_range = false;
                        if (in_range) {
                            auto r = check_carry_conditions(s, td, *chain, q, 1, 1);
                            item_ii = r.lin_ok;
                            item_iii = r.quad_ok;
                        }
                    }
                    ++checks;
                    if (item_i != item_ii || item_ii != item_iii) ++counterexamples;

                    if (q == 2 && cnt <= 2) {
                        // unpruned sweep of the whole carry box for cross-validation
                        bool full_ii = false, full_iii = false;
                        std::vector<std::int64_t> c(static_cast<std::size_t>(L) + 1, 0);
                        auto enumc = [&](auto&& inner, std::size_t idx) -> void {
                            if (full_ii && full_iii) return;
                            if (idx == static_cast<std::size_t>(L) + 1) {
                                auto r = check_carry_conditions(s, td, c, q, cnt, 1);
                                if (r.lin_ok) full_ii = true;
                                if (r.quad_ok) full_iii = true;
                                return;
                            }
                            std::int64_t hi = idx == 0 ? 0 : cap;
                            for (std::int64_t v = 0; v <= hi; ++v) {
                                c[idx] = v;
                                inner(inner, idx + 1);
                            }
                        };
                        enumc(enumc, 0);
                        ++cross_checks;
                        if (full_ii != item_ii || full_iii != item_iii) ++counterexamples;
                    }
                }
            };
            scan(scan, 0, 0);
        }
    }
    rep.line("checks              " + std::to_string(checks));
    rep.line("unpruned crosscheck " + std::to_string(cross_checks));
    rep.line("counterexamples     " + std::to_string(counterexamples));
    if (counterexamples == 0)
        rep.pass();
    else
        rep.fail("carry equivalence has counterexamples");
    return rep;
}

// ---------------------------------------------------------------------------
// The carry/squaring reduction: disjunction over carry guesses matches the
// exact-weight oracle; query counts stay inside the carry-space bound.

inline SuiteReport verify_square_trick(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "square-trick";
    Rng root(seed);
    std::uint64_t max_queries = 0;
    BigInt query_cap_at_max = 0, max_weight = 0, weight_cap_at_max = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            CliqueGenParams gp;
            gp.n = 3 + static_cast<int>(rng.below(4));
            gp.d = 2;
            gp.k = 3;
            gp.wmax = 100;
            gp.density_pct = 60 + static_cast<int>(rng.below(41));
            gp.planted = rng.coin();
            auto inst = gen_clique(gp, rng);
            int p = 1 + trial % 3;
            bool expect = solve_exact_weight_clique(inst).has_value();
            auto qs = square_trick_reduce(inst, p);
            bool got = verify_detail::or_answer(qs.queries);
            // pull q and digit count from the trace to restate the asserted caps
            std::int64_t q_used = 0, digits = 0;
            for (const auto& r : qs.trace.records) {
                if (r.metric == "q") q_used = std::stoll(r.value);
                if (r.metric == "digits") digits = std::stoll(r.value);
            }
            BigInt binom(binom_le(3, 2));
            if (qs.queries.size() > max_queries) {
                max_queries = qs.queries.size();
                query_cap_at_max = 1;
                for (int l = 0; l < digits; ++l) query_cap_at_max *= 2 * binom + 1;
            }
            for (const auto& q : qs.queries)
                if (q.max_weight() > max_weight) {
                    max_weight = q.max_weight();
                    weight_cap_at_max =
                        64 * binom * binom * binom * binom * q_used * q_used * (digits + 1);
                }
            if (got == expect)
                rep.pass();
            else
                rep.fail("answer flip at trial " + std::to_string(trial));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    std::ostringstream l1, l2;
    l1 << "max queries         " << max_queries << " (cap " << query_cap_at_max << ")";
    l2 << "max |weight|        " << max_weight << " (cap " << weight_cap_at_max << ")";
    rep.line(l1.str());
    rep.line(l2.str());
    return rep;
}

inline SuiteReport verify_strip_weights(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "strip-weights";
    Rng root(seed);
    std::uint64_t max_unweighted = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            CliqueGenParams gp;
            gp.n = 3 + static_cast<int>(rng.below(3));
            gp.d = 2;
            gp.k = 3;
            gp.wmax = 100;
            gp.density_pct = 60 + static_cast<int>(rng.below(41));
            gp.planted = rng.coin();
            auto inst = gen_clique(gp, rng);
            int p = 1 + trial % 3;
            bool expect = solve_exact_weight_clique(inst).has_value();
            bool got = false;
            std::uint64_t count = 0;
            strip_weights_stream(inst, p, [&](const WeightedCliqueInstance& g) {
                ++count;
                if (!got && solve_exact_weight_clique(g)) got = true;
            });
            max_unweighted = std::max(max_unweighted, count);
            if (got == expect)
                rep.pass();
            else
                rep.fail("answer flip at trial " + std::to_string(trial));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("max unweighted qs   " + std::to_string(max_unweighted));
    return rep;
}

// ---------------------------------------------------------------------------
// Clique to k-OV to 2-OV.

inline SuiteReport verify_ov(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "ov-chain";
    Rng root(seed);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            CliqueGenParams p;
            p.k = 2 + static_cast<int>(rng.below(3));
            p.n = p.k + static_cast<int>(rng.below(static_cast<std::uint64_t>(8 - p.k + 1)));
            p.d = 1 + static_cast<int>(rng.below(3));
            p.wmax = 0;
            p.t = BigInt(0);
            p.partitioned = true;
            p.density_pct = 55 + static_cast<int>(rng.below(46));
            auto inst = gen_clique(p, rng);
            bool expect = solve_exact_weight_clique(inst).has_value();
            auto kov = clique_to_kov(inst);
            bool via_kov = solve_k_ov(kov).has_value();
            auto two = kov_to_2ov(kov);
            bool via_2ov = solve_k_ov(two).has_value();
            // family sizes must be the exact half-products
            std::size_t left = 1, right = 1;
            for (int i = 0; i < kov.k / 2; ++i)
                left *= kov.families[static_cast<std::size_t>(i)].size();
            for (int i = kov.k / 2; i < kov.k; ++i)
                right *= kov.families[static_cast<std::size_t>(i)].size();
            bool sizes_ok = two.families[0].size() == left && two.families[1].size() == right &&
                            two.dim == kov.dim;
            if (expect == via_kov && via_kov == via_2ov && sizes_ok)
                rep.pass();
            else
                rep.fail("chain mismatch at trial " + std::to_string(trial));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// End-to-end pipeline: exact-weight answer vs the OR over 2-OV queries.

inline SuiteReport verify_pipeline(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "pipeline";
    Rng root(seed);
    int yes_ok = 0, yes_total = 0, no_ok = 0, no_total = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            CliqueGenParams p;
            p.n = 3 + static_cast<int>(rng.below(3));
            p.d = 2;
            p.k = 3;
            p.wmax = 50;
            p.density_pct = 80 + static_cast<int>(rng.below(21));
            p.planted = trial % 2 == 0;
            if (p.planted) p.n = std::max(p.n, p.k);
            auto inst = gen_clique(p, rng);
            bool expect = solve_exact_weight_clique(inst).has_value();
            bool got = false;
            pipeline_clique_to_2ov_stream(inst, {}, rng, [&](const OVInstance& q) {
                if (!got && solve_k_ov(q)) got = true;
            });
            if (expect) {
                ++yes_total;
                yes_ok += got ? 1 : 0;
                if (got)
                    rep.pass();
                else
                    rep.fail("yes lost at trial " + std::to_string(trial));
            } else {
                ++no_total;
                no_ok += got ? 0 : 1;
                rep.pass();  // stray no-side hits are covered by the 99% bound below
            }
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("yes-side            " + std::to_string(yes_ok) + "/" + std::to_string(yes_total));
    rep.line("no-side             " + std::to_string(no_ok) + "/" + std::to_string(no_total));
    if (no_ok * 100 < no_total * 99) rep.fail("no-side below 99%");
    return rep;
}

// ---------------------------------------------------------------------------
// Max-SAT reduction.

inline SuiteReport verify_maxsat(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "maxsat";
    Rng root(seed);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            int n = 4 + static_cast<int>(rng.below(5));
            int m = 1 + static_cast<int>(rng.below(12));
            auto f = gen_cnf(n, m, 2, rng);
            const int k = 4;
            auto inst = maxsat_to_minweight_clique(f, k, 0);  // bounds checked during the build
            auto best = solve_min_weight_clique(inst);
            auto opt = solve_max_sat(f).first;
            bool vertex_ok = inst.n <= k * (1 << ((n + k - 1) / k));
            if (best && -best->weight == BigInt(opt) && vertex_ok)
                rep.pass();
            else
                rep.fail("optimum mismatch at trial " + std::to_string(trial));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Formula compiler.

inline SuiteReport verify_formula(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "formula";
    Rng root(seed);
    int max_width = 0, width_cap_at_max = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            int n = 2 + static_cast<int>(rng.below(11));
            int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(3 * n)));
            auto f = gen_formula(n, m, rng);
            const double eps = 1.0;
            auto res = formula_to_kcnf(f, eps);  // decomposition re-verified inside
            if (res.report.width > max_width) {
                max_width = res.report.width;
                width_cap_at_max = res.report.k;
            }
            bool equisat = solve_cnf_sat(res.cnf).has_value() == solve_circuit_sat(f).has_value();
            bool budgets = res.report.width <= res.report.k &&
                           static_cast<double>(res.cnf.num_vars) <= (1.0 + eps) * n + 1;
            if (equisat && budgets)
                rep.pass();
            else
                rep.fail("trial " + std::to_string(trial) +
                         (equisat ? " budget violation" : " equisatisfiability"));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("max width           " + std::to_string(max_width) + " (cap " +
             std::to_string(width_cap_at_max) + ")");
    return rep;
}

// ---------------------------------------------------------------------------
// Gadgets: adders and binary comparators, exhaustively.

inline SuiteReport verify_gadgets() {
    SuiteReport rep;
    rep.name = "gadgets";
    std::uint64_t adder_checks = 0, binth_checks = 0, bad = 0;
    for (int b = 1; b <= 3; ++b)
        for (int count = 1; count <= 5; ++count) {
            auto c = build_adder(b, count);  // throws if over the 40*b*l budget
            int bits = b * count;
            std::vector<std::uint8_t> in(static_cast<std::size_t>(bits));
            for (std::uint32_t m = 0; m < (1u << bits); ++m) {
                std::uint64_t expect = 0;
                for (int i = 0; i < count; ++i) {
                    std::uint64_t val = 0;
                    for (int j = 0; j < b; ++j) {
                        std::uint8_t bit = (m >> (i * b + j)) & 1;
                        in[static_cast<std::size_t>(i * b + j)] = bit;
                        val |= static_cast<std::uint64_t>(bit) << j;
                    }
                    expect += val;
                }
                auto out = c.eval(in);
                std::uint64_t got = 0;
                for (std::size_t i = 0; i < out.size(); ++i)
                    got |= static_cast<std::uint64_t>(out[i]) << i;
                ++adder_checks;
                if (got != expect) ++bad;
            }
        }
    for (int r = 1; r <= 6; ++r)
        for (std::uint64_t theta = 0; theta <= (1ULL << r); ++theta) {
            auto c = build_binth(r, theta);  // throws if over the 2r budget
            std::vector<std::uint8_t> in(static_cast<std::size_t>(r));
            for (std::uint32_t m = 0; m < (1u << r); ++m) {
                for (int i = 0; i < r; ++i) in[static_cast<std::size_t>(i)] = (m >> i) & 1;
                ++binth_checks;
                if ((c.eval(in)[0] != 0) != (m >= theta)) ++bad;
            }
        }
    rep.line("adder checks        " + std::to_string(adder_checks));
    rep.line("comparator checks   " + std::to_string(binth_checks));
    if (bad == 0)
        rep.pass();
    else
        rep.fail(std::to_string(bad) + " gadget evaluations disagree");
    return rep;
}

// ---------------------------------------------------------------------------
// Threshold-circuit compiler: strong equisatisfiability per input assignment.

inline SuiteReport verify_tc(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "tc-compiler";
    Rng root(seed);
    int max_width = 0;
    std::int64_t width_cap_at_max = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            int n = 2 + static_cast<int>(rng.below(9));
            auto tc = gen_tc(n, 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(3 * n))),
                             3, rng);
            auto res = tc_to_kcnf(tc, 1.0, 3);
            // beta^depth, floored at beta+1 for the depth-1 corner
            std::int64_t cap = 1;
            for (int i = 0; i < res.report.depth; ++i) cap *= 3;
            cap = std::max<std::int64_t>(cap, 4);
            if (res.report.width > max_width) {
                max_width = res.report.width;
                width_cap_at_max = cap;
            }
            bool width_ok = res.report.width <= cap;
            bool equisat = true;
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
            for (std::uint64_t x = 0; x < (1ULL << n) && equisat; ++x) {
                for (int i = 0; i < n; ++i) bits[static_cast<std::size_t>(i)] = (x >> i) & 1;
                std::vector<std::pair<int, bool>> assume;
                for (int i = 0; i < n; ++i) assume.push_back({i + 1, bits[static_cast<std::size_t>(i)] != 0});
                bool cnf_side = solve_cnf_sat(res.cnf, {}, assume).has_value();
                if (cnf_side != eval_circuit(tc, bits).output) equisat = false;
            }
            if (width_ok && equisat)
                rep.pass();
            else
                rep.fail("trial " + std::to_string(trial) +
                         (equisat ? " width violation" : " equivalence"));
        } catch (const std::exception& e) {
            rep.fail(std::string("trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("max width           " + std::to_string(max_width) + " (cap " +
             std::to_string(width_cap_at_max) + ")");
    return rep;
}

// ---------------------------------------------------------------------------
// Depth reduction and the branching compiler.

inline SuiteReport verify_valiant(int dag_trials, int branch_trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "valiant-branching";
    Rng root(seed);
    int dag_ok = 0, dag_total = 0;
    for (int trial = 0; trial < dag_trials; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        try {
            Digraph g;
            g.n = 6 + static_cast<int>(rng.below(35));
            int layers = 2 + static_cast<int>(rng.below(16));
            std::vector<int> layer(static_cast<std::size_t>(g.n));
            for (int v = 0; v < g.n; ++v) layer[static_cast<std::size_t>(v)] = v * layers / g.n;
            int m = 8 + static_cast<int>(rng.below(193));
            for (int e = 0; e < m; ++e) {
                int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n)));
                int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n)));
                if (layer[static_cast<std::size_t>(u)] == layer[static_cast<std::size_t>(v)]) continue;
                if (layer[static_cast<std::size_t>(u)] > layer[static_cast<std::size_t>(v)])
                    std::swap(u, v);
                g.edges.push_back({u, v});
            }
            std::vector<char> alive(g.edges.size(), 1);
            int depth = 0;
            for (int x : detail::dag_depths(g, alive)) depth = std::max(depth, x);
            if (depth < 2) {
                rep.pass();
                continue;
            }
            int delta = ceil_log2_u64(static_cast<std::uint64_t>(depth));
            bool all_ok = true;
            for (int r = 1; r <= std::min(2, delta); ++r) {
                auto vr = valiant_reduce_depth(g, r);  // both bounds re-verified inside
                ++dag_total;
                bool this_ok = vr.removed.size() <= vr.removal_cap &&
                               vr.residual_depth <= (1 << (delta - r));
                dag_ok += this_ok ? 1 : 0;
                all_ok &= this_ok;
            }
            if (all_ok)
                rep.pass();
            else
                rep.fail("dag bounds at trial " + std::to_string(trial));
        } catch (const std::exception& e) {
            rep.fail(std::string("dag trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    int branch_ok = 0;
    for (int trial = 0; trial < branch_trials; ++trial) {
        Rng rng = root.child(0x20000000ULL + static_cast<std::uint64_t>(trial));
        try {
            int n = 3 + static_cast<int>(rng.below(6));
            auto tc = gen_tc(n, 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(2 * n))),
                             4, rng);
            auto res = tc_to_kcnf_branching(tc, 1.0, 3);
            std::uint64_t cap = 1ULL << static_cast<std::uint64_t>((n + 1) / 2);
            bool count_ok = res.branches.size() <= cap;
            bool any = false;
            for (const auto& b : res.branches)
                if (solve_cnf_sat(b.cnf)) any = true;
            bool preserved = any == solve_circuit_sat(tc).has_value();
            if (count_ok && preserved) {
                ++branch_ok;
                rep.pass();
            } else {
                rep.fail("branching at trial " + std::to_string(trial));
            }
        } catch (const std::exception& e) {
            rep.fail(std::string("branch trial ") + std::to_string(trial) + ": " + e.what());
        }
    }
    rep.line("dag bound checks    " + std::to_string(dag_ok) + "/" + std::to_string(dag_total));
    rep.line("branching preserved " + std::to_string(branch_ok) + "/" +
             std::to_string(branch_trials));
    return rep;
}

// ---------------------------------------------------------------------------
// Dispatcher

inline std::vector<SuiteReport> run_verify_suite(const std::string& suite, int trials,
                                                 std::uint64_t seed) {
    std::vector<SuiteReport> reports;
    auto want = [&](const char* name) { return suite == name || suite == "all"; };
    if (want("preprocessing")) reports.push_back(verify_preprocessing(trials, seed));
    if (want("prime-hash")) reports.push_back(verify_prime_hash(trials, seed));
    if (want("square-trick")) {
        reports.push_back(verify_carry());
        reports.push_back(verify_square_trick(trials, seed));
    }
    if (want("strip-weights")) reports.push_back(verify_strip_weights(trials, seed));
    if (want("ov")) reports.push_back(verify_ov(trials, seed));
    if (want("maxsat")) reports.push_back(verify_maxsat(trials, seed));
    if (want("formula")) reports.push_back(verify_formula(trials, seed));
    if (want("tc")) {
        reports.push_back(verify_gadgets());
        reports.push_back(verify_tc(trials, seed));
    }
    if (want("valiant")) reports.push_back(verify_valiant(trials, std::max(1, trials / 2), seed));
    if (want("pipeline")) reports.push_back(verify_pipeline(trials, seed));
    if (reports.empty()) throw ParseError("unknown verify suite '" + suite + "'");
    return reports;
}

}  // namespace redkit
