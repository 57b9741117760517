#include <catch2/catch_amalgamated.hpp>

#include "redkit/clique_reductions.hpp"
#include "redkit/generators.hpp"

using namespace redkit;

namespace {

bool or_answer(const std::vector<WeightedCliqueInstance>& queries) {
    for (const auto& q : queries)
        if (solve_exact_weight_clique(q)) return true;
    return false;
}

bool yes(const WeightedCliqueInstance& inst) {
    return solve_exact_weight_clique(inst).has_value();
}

WeightedCliqueInstance random_small(Rng& rng, bool partitioned, int wmax = 100) {
    CliqueGenParams p;
    p.n = 2 + static_cast<int>(rng.below(5));
    p.d = 1 + static_cast<int>(rng.below(2));
    p.k = 3;
    p.wmax = wmax;
    p.density_pct = 60 + static_cast<int>(rng.below(41));
    p.partitioned = partitioned;
    p.planted = rng.coin();
    if (partitioned || p.planted) p.n = std::max(p.n, p.k);
    return gen_clique(p, rng);
}

}  // namespace

TEST_CASE("make_complete") {
    SECTION("already complete: weights unchanged") {
        CliqueGenParams p;
        p.n = 4, p.d = 2, p.k = 3, p.wmax = 9, p.density_pct = 100;
        Rng rng(3);
        auto inst = gen_clique(p, rng);
        auto out = make_complete(inst);
        CHECK(out.edges == inst.edges);
    }
    SECTION("missing pair gets weight binom_le(3,2) * M = 7") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 1;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 2}, 1);
        inst.edges.emplace(std::vector<int>{1, 2}, 0);
        auto out = make_complete(inst);
        CHECK(out.edges.at({0, 1}) == 7);
        CHECK(out.max_weight() <= BigInt(7) * inst.max_weight());
    }
    SECTION("answer preserved on seeded instances") {
        Rng root(101);
        for (int trial = 0; trial < 60; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            auto inst = random_small(rng, trial % 2 == 0);
            auto out = make_complete(inst);
            BigInt m_hat = inst.max_weight();
            if (m_hat == 0) m_hat = 1;
            CHECK(out.max_weight() <= BigInt(inst.binom()) * m_hat);
            CAPTURE(trial);
            CHECK(yes(inst) == yes(out));
        }
    }
}

TEST_CASE("make_k_partite") {
    SECTION("one vertex, one part") {
        WeightedCliqueInstance inst;
        inst.n = 1, inst.d = 1, inst.k = 1, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        inst.edges.emplace(std::vector<int>{0}, 0);
        auto out = make_k_partite(inst);
        CHECK(out.n == 1);
        REQUIRE(out.partition.has_value());
    }
    SECTION("pair edge copied once per part ordering") {
        WeightedCliqueInstance inst;
        inst.n = 2, inst.d = 2, inst.k = 2, inst.t = 5;
        inst.edges.emplace(std::vector<int>{0, 1}, 5);
        auto out = make_k_partite(inst);
        CHECK(out.n == 4);
        // copies: {(0,0),(1,1)} = {0,3} and {(1,0),(0,1)} = {2,1}
        CHECK(out.edges.count({0, 3}) == 1);
        CHECK(out.edges.count({1, 2}) == 1);
        CHECK(out.edges.size() == 2);
        CHECK(yes(inst) == yes(out));
    }
    SECTION("answer preserved, including d = 1") {
        Rng root(202);
        for (int trial = 0; trial < 60; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            auto inst = random_small(rng, false);
            auto out = make_k_partite(inst);
            CAPTURE(trial, inst.d);
            CHECK(out.max_weight() <= inst.max_weight());
            CHECK(yes(inst) == yes(out));
        }
    }
    SECTION("d = 1 copies cannot reuse one original vertex") {
        // sum {1,1,1} = 3 must stay unreachable: only three *distinct* vertices count
        WeightedCliqueInstance inst;
        inst.n = 4, inst.d = 1, inst.k = 3, inst.t = 3;
        inst.edges.emplace(std::vector<int>{}, 0);
        BigInt w[4] = {1, 2, 5, 9};
        for (int v = 0; v < 4; ++v) inst.edges.emplace(std::vector<int>{v}, w[v]);
        CHECK_FALSE(yes(inst));
        auto out = make_k_partite(inst);
        CHECK(out.d == 2);
        CHECK_FALSE(yes(out));
        // and the reachable sum 8 = 1+2+5 still works
        inst.t = 8;
        auto out8 = make_k_partite(inst);
        CHECK(yes(out8));
    }
}

TEST_CASE("make_target_zero") {
    SECTION("t = 0 leaves weights unchanged") {
        Rng rng(5);
        CliqueGenParams p;
        p.n = 6, p.d = 2, p.k = 3, p.wmax = 9, p.partitioned = true, p.t = BigInt(0);
        auto inst = gen_clique(p, rng);
        auto out = make_target_zero(inst);
        CHECK(out.edges == inst.edges);
        CHECK(out.t == 0);
    }
    SECTION("partite triangle with t = 6") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 6;
        inst.partition = std::vector<int>{0, 1, 2};
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 1);
        inst.edges.emplace(std::vector<int>{0, 2}, 2);
        inst.edges.emplace(std::vector<int>{1, 2}, 3);
        auto out = make_target_zero(inst);
        CHECK(out.t == 0);
        CHECK(out.edges.at({0, 1}) == 1 - 6);  // the one part-{0,1} edge
        CHECK(out.edges.at({0, 2}) == 2);
        auto sol = solve_exact_weight_clique(out);
        REQUIRE(sol.has_value());
        CHECK(sol->weight == 0);
    }
    SECTION("answer preserved at t' = 0 on seeded partite instances") {
        Rng root(303);
        for (int trial = 0; trial < 60; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            auto inst = random_small(rng, true);
            if (inst.k < inst.d) continue;
            auto out = make_target_zero(inst);
            CAPTURE(trial);
            CHECK(out.max_weight() <= 2 * inst.max_weight());
            CHECK(yes(inst) == yes(out));
        }
    }
}

TEST_CASE("make_nonnegative") {
    SECTION("non-negative input only gets completed") {
        Rng rng(6);
        CliqueGenParams p;
        p.n = 5, p.d = 2, p.k = 3, p.wmax = 9, p.nonnegative = true, p.density_pct = 100;
        p.planted = true;
        auto inst = gen_clique(p, rng);
        auto out = make_nonnegative(inst);
        REQUIRE(out.has_value());
        CHECK(out->edges == inst.edges);
        CHECK(out->t == inst.t);
    }
    SECTION("shift arithmetic") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = -3;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, -3);
        inst.edges.emplace(std::vector<int>{0, 2}, 0);
        inst.edges.emplace(std::vector<int>{1, 2}, 0);
        auto out = make_nonnegative(inst);
        REQUIRE(out.has_value());
        CHECK(out->t == -3 + 3 * 7);  // L = 3, binom_le(3,2) = 7
        CHECK(out->edges.at({0, 1}) == 0);
        CHECK(yes(inst) == yes(*out));
    }
    SECTION("unreachable target is a trivial no") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = -1000;
        inst.edges.emplace(std::vector<int>{}, 1);
        CHECK_FALSE(make_nonnegative(inst).has_value());
    }
    SECTION("answer preserved on seeded instances") {
        Rng root(404);
        for (int trial = 0; trial < 60; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            auto inst = random_small(rng, trial % 2 == 0);
            auto out = make_nonnegative(inst);
            BigInt m_hat = inst.max_weight();
            if (m_hat == 0) m_hat = 1;
            bool before = yes(inst);
            CAPTURE(trial);
            if (!out) {
                CHECK_FALSE(before);
            } else {
                BigInt b(inst.binom());
                CHECK(out->max_weight() <= 2 * b * b * m_hat);
                CHECK(before == yes(*out));
            }
        }
    }
}

TEST_CASE("prime hashing") {
    SECTION("all-zero instance passes through and stays yes") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 0);
        inst.edges.emplace(std::vector<int>{0, 2}, 0);
        inst.edges.emplace(std::vector<int>{1, 2}, 0);
        Rng rng(1);
        auto qs = reduce_weights_mod_prime(inst, rng);
        CHECK(qs.queries.size() == 1);
        CHECK(or_answer(qs.queries));
    }
    SECTION("planted 128-bit yes-instance maps to yes") {
        Rng rng(7);
        CliqueGenParams p;
        p.n = 6, p.d = 2, p.k = 3;
        p.wmax = BigInt(1) << 128;
        p.nonnegative = true;
        p.density_pct = 100;
        p.planted = true;
        auto inst = gen_clique(p, rng);
        auto qs = reduce_weights_mod_prime(inst, rng);
        CHECK(qs.queries.size() >= 1);
        for (const auto& q : qs.queries)
            CHECK(q.max_weight() < (BigInt(1) << 127));  // hashed far below the input scale
        CHECK(or_answer(qs.queries));
    }
    SECTION("astronomical weights take the direct brute-force path") {
        WeightedCliqueInstance inst;
        inst.n = 1, inst.d = 1, inst.k = 1;
        inst.edges.emplace(std::vector<int>{}, 0);
        inst.edges.emplace(std::vector<int>{0}, 5);
        inst.t = 5;
        Rng rng(3);
        auto qs = reduce_weights_mod_prime(inst, rng);
        REQUIRE(qs.queries.size() == 1);
        CHECK(qs.queries[0].n == 1);  // constant-size stand-in
        CHECK(or_answer(qs.queries));
        inst.t = 6;
        auto no = reduce_weights_mod_prime(inst, rng);
        CHECK_FALSE(or_answer(no.queries));
    }
    SECTION("no-instances stay no almost always") {
        Rng root(505);
        int wrong = 0, total = 0;
        for (int trial = 0; trial < 60; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            CliqueGenParams p;
            p.n = 5, p.d = 2, p.k = 3;
            p.wmax = BigInt(1) << 96;
            p.nonnegative = true;
            p.density_pct = 100;
            auto inst = gen_clique(p, rng);
            if (yes(inst)) continue;  // looking for no-instances only
            ++total;
            auto qs = reduce_weights_mod_prime(inst, rng);
            if (or_answer(qs.queries)) ++wrong;
        }
        REQUIRE(total >= 40);
        CHECK(wrong <= total / 20);
    }
}

TEST_CASE("q_expand") {
    auto d = q_expand(13, 2, 4);
    CHECK(d == std::vector<std::int64_t>({1, 0, 1, 1}));
    CHECK(q_expand(0, 3, 5) == std::vector<std::int64_t>({0, 0, 0, 0, 0}));
    CHECK_THROWS_AS(q_expand(16, 2, 4), ReductionError);

    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        std::int64_t q = 2 + static_cast<std::int64_t>(rng.below(9));
        BigInt n = rng.big_below(BigInt(1) << 40);
        int len = 1;
        BigInt pw = q;
        while (pw <= n) {
            pw *= q;
            ++len;
        }
        auto digits = q_expand(n, q, len);
        BigInt back = 0;
        for (int l = len - 1; l >= 0; --l) back = back * q + digits[static_cast<std::size_t>(l)];
        CHECK(back == n);
    }
}

TEST_CASE("carry conditions") {
    SECTION("single edge with w = t and zero carries") {
        std::vector<std::int64_t> s{3, 1};  // digit sums of the lone weight
        std::vector<std::int64_t> t{3, 1};
        std::vector<std::int64_t> c{0, 0, 0};
        auto r = check_carry_conditions(s, t, c, 4, 3, 2);
        CHECK(r.lin_ok);
        CHECK(r.quad_ok);
        CHECK(r.range_ok);
    }
    SECTION("inductive carries satisfy both conditions within range") {
        Rng root(29);
        for (int trial = 0; trial < 500; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            std::int64_t q = 2 + static_cast<std::int64_t>(rng.below(3));
            int edges = 1 + static_cast<int>(rng.below(4));
            std::vector<BigInt> w(static_cast<std::size_t>(edges));
            BigInt total = 0;
            for (auto& x : w) {
                x = rng.big_below(BigInt(q) * q);
                total += x;
            }
            int padded = 6;
            std::vector<std::int64_t> s(static_cast<std::size_t>(padded), 0);
            for (const auto& x : w) {
                auto dx = q_expand(x, q, padded);
                for (int l = 0; l < padded; ++l)
                    s[static_cast<std::size_t>(l)] += dx[static_cast<std::size_t>(l)];
            }
            auto t = q_expand(total, q, padded);
            auto carries = compute_carries(s, t, q);
            REQUIRE(carries.has_value());
            auto r = check_carry_conditions(s, t, *carries, q, edges, 1);
            CAPTURE(trial, q, edges);
            CHECK(r.lin_ok);
            CHECK(r.quad_ok);
            std::int64_t cap = 2 * static_cast<std::int64_t>(edges);
            for (auto c : *carries) CHECK((c >= 0 && c <= cap));

            // perturbing one carry breaks both conditions
            auto bad = *carries;
            bad[1 + rng.below(bad.size() - 1)] += 1;
            auto rb = check_carry_conditions(s, t, bad, q, edges, 1);
            CHECK_FALSE(rb.lin_ok);
            CHECK_FALSE(rb.quad_ok);
        }
    }
}

namespace {

// Existence of carries in [0, cap] meeting the linear/quadratic conditions.
// A violated prefix equation fails the linear chain *and* contributes a
// positive square, so branches off the forced chain can never satisfy either
// item: following the unique chain is an exact search of the whole space.
std::pair<bool, bool> carries_exist(const std::vector<std::int64_t>& s,
                                    const std::vector<std::int64_t>& td, std::int64_t q,
                                    std::int64_t cap) {
    auto chain = compute_carries(s, td, q);
    if (!chain) return {false, false};
    for (auto c : *chain)
        if (c < 0 || c > cap) return {false, false};
    std::size_t L = s.size();
    std::vector<std::int64_t> c(L + 1, 0);
    std::copy(chain->begin(), chain->end(), c.begin());
    auto r = check_carry_conditions(s, td, c, q, 1, 1);  // cap handled above
    return {r.lin_ok, r.quad_ok};
}

}  // namespace

TEST_CASE("carry equivalence: target-sum iff feasible carries, small exhaustive sweep") {
    for (std::int64_t q : {2, 3}) {
        int L = 5;
        std::int64_t wcap = q * q;
        for (int cnt = 1; cnt <= 3; ++cnt) {
            std::vector<std::int64_t> w(static_cast<std::size_t>(cnt), 0);
            auto scan = [&](auto&& self, int pos, std::int64_t lo) -> void {
                if (pos == cnt) {
                    BigInt total = 0;
                    for (auto x : w) total += x;
                    std::vector<std::int64_t> s(static_cast<std::size_t>(L), 0);
                    for (auto x : w) {
                        auto dx = q_expand(x, q, L);
                        for (int l = 0; l < L; ++l)
                            s[static_cast<std::size_t>(l)] += dx[static_cast<std::size_t>(l)];
                    }
                    for (std::int64_t t = 0; t <= cnt * (wcap - 1) + 1; ++t) {
                        auto td = q_expand(t, q, L);
                        bool item_i = total == t;
                        auto [item_ii, item_iii] = carries_exist(s, td, q, 2 * cnt);
                        CAPTURE(q, cnt, t);
                        CHECK(item_i == item_ii);
                        CHECK(item_ii == item_iii);

                        if (q == 2 && cnt <= 2) {
                            // unpruned sweep of the full carry space for cross-validation
                            bool full_ii = false, full_iii = false;
                            std::vector<std::int64_t> c(static_cast<std::size_t>(L) + 1, 0);
                            auto enumc = [&](auto&& inner, std::size_t idx) -> void {
                                if (idx == static_cast<std::size_t>(L) + 1) {
                                    auto r = check_carry_conditions(s, td, c, q, cnt, 1);
                                    if (r.lin_ok) full_ii = true;
                                    if (r.quad_ok) full_iii = true;
                                    return;
                                }
                                std::int64_t hi = idx == 0 ? 0 : 2 * cnt;
                                for (std::int64_t v = 0; v <= hi && !(full_ii && full_iii); ++v) {
                                    c[idx] = v;
                                    inner(inner, idx + 1);
                                }
                            };
                            enumc(enumc, 0);
                            CHECK(full_ii == item_ii);
                            CHECK(full_iii == item_iii);
                        }
                    }
                    return;
                }
                for (std::int64_t v = lo; v < wcap; ++v) {
                    w[static_cast<std::size_t>(pos)] = v;
                    self(self, pos + 1, v);
                }
            };
            scan(scan, 0, 0);
        }
    }
}

TEST_CASE("square trick") {
    SECTION("all-zero instance keeps its zero-weight clique") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 0);
        inst.edges.emplace(std::vector<int>{0, 2}, 0);
        inst.edges.emplace(std::vector<int>{1, 2}, 0);
        for (int p : {1, 2}) {
            auto qs = square_trick_reduce(inst, p);
            CAPTURE(p);
            CHECK(or_answer(qs.queries));
        }
    }
    SECTION("n=4 complete instance, p=2, matches the oracle") {
        Rng rng(31);
        CliqueGenParams p;
        p.n = 4, p.d = 2, p.k = 3, p.wmax = 50, p.density_pct = 100;
        auto inst = gen_clique(p, rng);
        auto qs = square_trick_reduce(inst, 2);
        CHECK(qs.queries.size() >= 1);
        for (const auto& q : qs.queries) CHECK(q.d == 4);
        CHECK(or_answer(qs.queries) == yes(inst));
    }
    SECTION("seeded answer preservation across p") {
        Rng root(606);
        for (int trial = 0; trial < 30; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            auto inst = random_small(rng, false, 100);
            int p = 1 + trial % 3;
            auto qs = square_trick_reduce(inst, p);
            CAPTURE(trial, p, inst.n, inst.d);
            CHECK(or_answer(qs.queries) == yes(inst));
        }
    }
}

TEST_CASE("strip weights") {
    SECTION("all-zero instance reproduces the graph unweighted") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 0);
        inst.edges.emplace(std::vector<int>{0, 2}, 0);
        inst.edges.emplace(std::vector<int>{1, 2}, 0);
        auto qs = strip_weights(inst, 1);
        bool any = false;
        for (const auto& g : qs.queries) {
            for (const auto& [e, w] : g.edges) CHECK(w == 0);
            if (solve_exact_weight_clique(g)) any = true;
        }
        CHECK(any);
    }
    SECTION("node weights as singleton edges (d = 1)") {
        WeightedCliqueInstance inst;
        inst.n = 4, inst.d = 1, inst.k = 3;
        inst.edges.emplace(std::vector<int>{}, 0);
        BigInt w[4] = {1, 2, 5, 9};
        for (int v = 0; v < 4; ++v) inst.edges.emplace(std::vector<int>{v}, w[v]);
        inst.t = 8;  // 1 + 2 + 5
        auto qs = strip_weights(inst, 1);
        CHECK(or_answer(qs.queries));
        inst.t = 3;  // only reachable by reusing vertex 0, which must stay blocked
        auto qs3 = strip_weights(inst, 1);
        CHECK_FALSE(or_answer(qs3.queries));
    }
    SECTION("seeded answer preservation") {
        Rng root(707);
        for (int trial = 0; trial < 20; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            auto inst = random_small(rng, false, 60);
            int p = default_strip_p(inst.n);
            auto qs = strip_weights(inst, p);
            CAPTURE(trial, inst.n, inst.d, p);
            CHECK(or_answer(qs.queries) == yes(inst));
        }
    }
    SECTION("full-range sweep agrees with occurring-values enumeration") {
        Rng root(808);
        for (int trial = 0; trial < 6; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            CliqueGenParams p;
            p.n = 3, p.d = 1, p.k = 2, p.wmax = 2, p.density_pct = 100, p.planted = trial % 2 == 0;
            auto inst = gen_clique(p, rng);
            auto lean = strip_weights(inst, 1, false);
            auto full = strip_weights(inst, 1, true);
            CAPTURE(trial);
            CHECK(or_answer(lean.queries) == or_answer(full.queries));
        }
    }
}

TEST_CASE("minimization via exact queries") {
    auto oracle = [](const WeightedCliqueInstance& q) { return solve_exact_weight_clique(q); };
    SECTION("unique clique of weight 6") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 1);
        inst.edges.emplace(std::vector<int>{0, 2}, 2);
        inst.edges.emplace(std::vector<int>{1, 2}, 3);
        auto r = min_to_exact(inst, oracle);
        REQUIRE(r.best.has_value());
        CHECK(r.best->weight == 6);
        // W = 7 * 3 = 21; at most ceil(log2(22)) + 1 = 6 decisions
        CHECK(r.decisions <= 6);
    }
    SECTION("no clique") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 1);
        inst.edges.emplace(std::vector<int>{0, 2}, 1);
        auto r = min_to_exact(inst, oracle);
        CHECK_FALSE(r.best.has_value());
    }
    SECTION("oracle failures propagate") {
        WeightedCliqueInstance inst;
        inst.n = 3, inst.d = 2, inst.k = 3, inst.t = 0;
        inst.edges.emplace(std::vector<int>{}, 0);
        for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
        inst.edges.emplace(std::vector<int>{0, 1}, 1);
        inst.edges.emplace(std::vector<int>{0, 2}, 2);
        inst.edges.emplace(std::vector<int>{1, 2}, 3);
        auto starved = [](const WeightedCliqueInstance& q) {
            OracleBudget tiny;
            tiny.max_candidates = 1;
            return solve_exact_weight_clique(q, tiny);
        };
        CHECK_THROWS_AS(min_to_exact(inst, starved), BudgetExceeded);
    }
    SECTION("matches the direct minimum oracle") {
        Rng root(909);
        for (int trial = 0; trial < 40; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            CliqueGenParams p;
            p.n = 2 + static_cast<int>(rng.below(4));
            p.d = 1 + static_cast<int>(rng.below(2));
            p.k = 3;
            p.wmax = 6;
            p.nonnegative = true;
            p.density_pct = 70 + static_cast<int>(rng.below(31));
            auto inst = gen_clique(p, rng);
            auto direct = solve_min_weight_clique(inst);
            auto viaexact = min_to_exact(inst, oracle);
            CAPTURE(trial, inst.n, inst.d);
            REQUIRE(direct.has_value() == viaexact.best.has_value());
            if (direct) CHECK(direct->weight == viaexact.best->weight);
        }
    }
}
