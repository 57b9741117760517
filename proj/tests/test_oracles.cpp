#include <catch2/catch_amalgamated.hpp>

#include "redkit/generators.hpp"
#include "redkit/oracles.hpp"

using namespace redkit;

namespace {

WeightedCliqueInstance complete_triangle(BigInt w01, BigInt w02, BigInt w12, BigInt t) {
    WeightedCliqueInstance inst;
    inst.n = 3, inst.d = 2, inst.k = 3;
    inst.t = t;
    inst.edges.emplace(std::vector<int>{}, 0);
    for (int v = 0; v < 3; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
    inst.edges.emplace(std::vector<int>{0, 1}, w01);
    inst.edges.emplace(std::vector<int>{0, 2}, w02);
    inst.edges.emplace(std::vector<int>{1, 2}, w12);
    return inst;
}

// Second, structurally different evaluator used as an oracle for eval_circuit:
// memoized recursion from the output instead of a topological sweep.
bool recursive_eval(const ThresholdCircuit& c, const std::vector<std::uint8_t>& x) {
    std::vector<int> memo(c.gates.size(), -1);
    const auto& ins = c.input_gate_indices();
    auto rec = [&](auto&& self, int gi) -> int {
        if (memo[static_cast<std::size_t>(gi)] != -1) return memo[static_cast<std::size_t>(gi)];
        const Gate& g = c.gates[static_cast<std::size_t>(gi)];
        int val = 0;
        if (g.kind == GateKind::Input) {
            for (std::size_t i = 0; i < ins.size(); ++i)
                if (ins[i] == gi) val = x[i] ? 1 : 0;
        } else {
            int ones = 0;
            for (int id : g.inputs) ones += self(self, c.index_of(id));
            switch (g.kind) {
                case GateKind::Neg: val = ones == 0; break;
                case GateKind::And: val = ones == static_cast<int>(g.inputs.size()); break;
                case GateKind::Or: val = ones >= 1; break;
                case GateKind::Th: val = ones >= g.theta; break;
                default: break;
            }
        }
        return memo[static_cast<std::size_t>(gi)] = val;
    };
    return rec(rec, c.index_of(c.output)) != 0;
}

}  // namespace

TEST_CASE("clique enumeration on the complete triangle") {
    auto inst = complete_triangle(0, 0, 0, 0);
    auto cliques = enumerate_k_cliques(inst);
    REQUIRE(cliques.size() == 1);
    CHECK(cliques[0].vertices == std::vector<int>({0, 1, 2}));
    CHECK(cliques[0].weight == 0);

    SECTION("weights sum over all seven edges") {
        auto w = complete_triangle(1, 2, 3, 0);
        w.edges.at({0}) = 10;
        auto cs = enumerate_k_cliques(w);
        REQUIRE(cs.size() == 1);
        CHECK(cs[0].weight == 16);
    }
    SECTION("missing pair edge kills the clique") {
        auto hole = complete_triangle(0, 0, 0, 0);
        hole.edges.erase({0, 1});
        CHECK(enumerate_k_cliques(hole).empty());
    }
}

TEST_CASE("clique enumeration agrees with an independent recount") {
    Rng root(42);
    for (int trial = 0; trial < 20; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        CliqueGenParams p;
        p.n = 6, p.d = 2, p.k = 3, p.wmax = 20, p.density_pct = 70;
        auto inst = gen_clique(p, rng);
        auto cliques = enumerate_k_cliques(inst);
        // direct recount over all C(6,3) sets, written independently
        std::size_t direct = 0;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int c = b + 1; c < 6; ++c) {
                    bool ok = inst.has_edge({}) && inst.has_edge({a}) && inst.has_edge({b}) &&
                              inst.has_edge({c}) && inst.has_edge({a, b}) && inst.has_edge({a, c}) &&
                              inst.has_edge({b, c});
                    if (ok) ++direct;
                }
        CAPTURE(trial);
        CHECK(cliques.size() == direct);
    }
}

TEST_CASE("exact-weight clique") {
    auto inst = complete_triangle(0, 0, 0, 0);
    CHECK(solve_exact_weight_clique(inst).has_value());
    inst.t = 1;
    CHECK_FALSE(solve_exact_weight_clique(inst).has_value());

    SECTION("matches the enumeration filter on random instances") {
        Rng root(7);
        for (int trial = 0; trial < 30; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            CliqueGenParams p;
            p.n = 6, p.d = 2, p.k = 3, p.wmax = 6, p.density_pct = 80;
            auto in = gen_clique(p, rng);
            bool via_filter = false;
            for (const auto& c : enumerate_k_cliques(in))
                if (c.weight == in.t) via_filter = true;
            CHECK(solve_exact_weight_clique(in).has_value() == via_filter);
        }
    }
}

TEST_CASE("min-weight clique") {
    auto inst = complete_triangle(1, 2, 3, 0);
    auto best = solve_min_weight_clique(inst);
    REQUIRE(best.has_value());
    CHECK(best->weight == 6);

    auto hole = complete_triangle(0, 0, 0, 0);
    hole.edges.erase({1, 2});
    CHECK_FALSE(solve_min_weight_clique(hole).has_value());

    SECTION("is the minimum of the enumeration") {
        Rng root(9);
        for (int trial = 0; trial < 30; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            CliqueGenParams p;
            p.n = 6, p.d = 2, p.k = 3, p.wmax = 30, p.density_pct = 75;
            auto in = gen_clique(p, rng);
            auto mine = solve_min_weight_clique(in);
            auto all = enumerate_k_cliques(in);
            if (all.empty()) {
                CHECK_FALSE(mine.has_value());
            } else {
                BigInt lo = all[0].weight;
                for (const auto& c : all) lo = std::min(lo, c.weight);
                REQUIRE(mine.has_value());
                CHECK(mine->weight == lo);
            }
        }
    }
}

TEST_CASE("partitioned enumeration picks one vertex per part") {
    WeightedCliqueInstance inst;
    inst.n = 4, inst.d = 2, inst.k = 2;
    inst.partition = std::vector<int>{0, 0, 1, 1};
    inst.edges.emplace(std::vector<int>{}, 0);
    for (int v = 0; v < 4; ++v) inst.edges.emplace(std::vector<int>{v}, 0);
    for (int a : {0, 1})
        for (int b : {2, 3}) inst.edges.emplace(std::vector<int>{a, b}, 1);
    inst.t = 1;
    auto cliques = enumerate_k_cliques(inst);
    CHECK(cliques.size() == 4);
    for (const auto& c : cliques) {
        REQUIRE(c.vertices.size() == 2);
        CHECK((*inst.partition)[static_cast<std::size_t>(c.vertices[0])] !=
              (*inst.partition)[static_cast<std::size_t>(c.vertices[1])]);
    }
}

TEST_CASE("budget cap fails loudly") {
    CliqueGenParams p;
    p.n = 12, p.d = 2, p.k = 5, p.wmax = 3, p.density_pct = 100;
    Rng rng(1);
    auto inst = gen_clique(p, rng);
    OracleBudget tiny;
    tiny.max_candidates = 10;
    CHECK_THROWS_AS(enumerate_k_cliques(inst, tiny), BudgetExceeded);
}

TEST_CASE("k-ov solver") {
    OVInstance ov;
    ov.k = 2, ov.dim = 2;
    ov.families = {{{1, 0}}, {{0, 1}}};
    auto r = solve_k_ov(ov);
    REQUIRE(r.has_value());
    CHECK(*r == std::vector<int>({0, 0}));

    OVInstance no;
    no.k = 2, no.dim = 1;
    no.families = {{{1}}, {{1}}};
    CHECK_FALSE(solve_k_ov(no).has_value());

    OVInstance zero;
    zero.k = 3, zero.dim = 0;
    zero.families = {{{}}, {{}}, {{}}};
    CHECK(solve_k_ov(zero).has_value());

    OVInstance empty_family;
    empty_family.k = 2, empty_family.dim = 0;
    empty_family.families = {{{}}, {}};
    CHECK_FALSE(solve_k_ov(empty_family).has_value());
}

TEST_CASE("circuit evaluation basics") {
    auto andc = parse_circuit("tc 2\ng 0 INPUT\ng 1 INPUT\ng 2 AND 0 1\nout 2\n");
    CHECK(eval_circuit(andc, {1, 1}).output);
    CHECK_FALSE(eval_circuit(andc, {1, 0}).output);

    auto th = parse_circuit("tc 3\ng 0 INPUT\ng 1 INPUT\ng 2 INPUT\ng 3 TH 2 0 1 2\nout 3\n");
    CHECK(eval_circuit(th, {1, 0, 1}).output);
    auto th3 = parse_circuit("tc 3\ng 0 INPUT\ng 1 INPUT\ng 2 INPUT\ng 3 TH 3 0 1 2\nout 3\n");
    CHECK_FALSE(eval_circuit(th3, {1, 0, 1}).output);
}

TEST_CASE("circuit evaluation is independent of gate declaration order") {
    // same circuit, gate lines permuted
    auto a = parse_circuit(
        "tc 3\ng 0 INPUT\ng 1 INPUT\ng 2 INPUT\ng 3 AND 0 1\ng 4 OR 3 2\nout 4\n");
    auto b = parse_circuit(
        "tc 3\ng 2 INPUT\ng 0 INPUT\ng 4 OR 3 2\ng 1 INPUT\ng 3 AND 0 1\nout 4\n");
    // input bit order follows declaration: remap accordingly
    for (std::uint32_t m = 0; m < 8; ++m) {
        std::uint8_t x0 = m & 1, x1 = (m >> 1) & 1, x2 = (m >> 2) & 1;
        CHECK(eval_circuit(a, {x0, x1, x2}).output == eval_circuit(b, {x2, x0, x1}).output);
    }
}

TEST_CASE("AND and OR accept fan-in above two; NEG does not") {
    auto c = parse_circuit("tc 3\ng 0 INPUT\ng 1 INPUT\ng 2 INPUT\ng 3 AND 0 1 2\nout 3\n");
    CHECK(eval_circuit(c, {1, 1, 1}).output);
    CHECK_FALSE(eval_circuit(c, {1, 0, 1}).output);
    CHECK_THROWS_AS(parse_circuit("tc 2\ng 0 INPUT\ng 1 INPUT\ng 2 NEG 0 1\nout 2\n"),
                    ParseError);
}

TEST_CASE("circuit evaluation agrees with a recursive evaluator") {
    Rng root(11);
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng = root.child(static_cast<std::uint64_t>(trial));
        int n = 1 + static_cast<int>(rng.below(6));
        auto tc = gen_tc(n, 4 + static_cast<int>(rng.below(16)), 1 + static_cast<int>(rng.below(4)), rng);
        std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
        for (int rep = 0; rep < 4; ++rep) {
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = rng.coin() ? 1 : 0;
            CAPTURE(trial, rep);
            CHECK(eval_circuit(tc, x).output == recursive_eval(tc, x));
        }
    }
}

TEST_CASE("circuit satisfiability") {
    auto neg = parse_circuit("tc 1\ng 0 INPUT\ng 1 NEG 0\nout 1\n");
    auto w = solve_circuit_sat(neg);
    REQUIRE(w.has_value());
    CHECK((*w)[0] == 0);

    auto contra = parse_circuit("tc 1\ng 0 INPUT\ng 1 NEG 0\ng 2 AND 0 1\nout 2\n");
    CHECK_FALSE(solve_circuit_sat(contra).has_value());

    SECTION("agrees with evaluation over all assignments") {
        Rng root(13);
        for (int trial = 0; trial < 40; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            int n = 1 + static_cast<int>(rng.below(5));
            auto tc = gen_tc(n, 3 + static_cast<int>(rng.below(10)), 3, rng);
            bool any = false;
            std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
            for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
                for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (m >> i) & 1;
                if (eval_circuit(tc, x).output) any = true;
            }
            CHECK(solve_circuit_sat(tc).has_value() == any);
        }
    }
}

TEST_CASE("cnf satisfiability") {
    CnfFormula contra;
    contra.num_vars = 1;
    contra.clauses = {{1}, {-1}};
    CHECK_FALSE(solve_cnf_sat(contra).has_value());

    CnfFormula empty;
    empty.num_vars = 3;
    auto w = solve_cnf_sat(empty);
    REQUIRE(w.has_value());
    CHECK(*w == std::vector<std::uint8_t>({0, 0, 0}));

    SECTION("assumptions pin variables") {
        CnfFormula f;
        f.num_vars = 2;
        f.clauses = {{1, 2}};
        CHECK(solve_cnf_sat(f, {}, {{1, false}, {2, false}}) == std::nullopt);
        CHECK(solve_cnf_sat(f, {}, {{1, false}}).has_value());
    }
    SECTION("random 3-CNFs agree with exhaustive search") {
        Rng root(17);
        for (int trial = 0; trial < 60; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            int n = 3 + static_cast<int>(rng.below(10));
            auto f = gen_cnf(n, 2 + static_cast<int>(rng.below(30)), 3, rng);
            bool any = false;
            for (std::uint64_t m = 0; m < (1ULL << n) && !any; ++m) {
                bool all = true;
                for (const auto& cl : f.clauses) {
                    bool sat = false;
                    for (int lit : cl)
                        if ((lit > 0) == (((m >> (std::abs(lit) - 1)) & 1) != 0)) sat = true;
                    if (!sat) {
                        all = false;
                        break;
                    }
                }
                if (all) any = true;
            }
            CAPTURE(trial);
            CHECK(solve_cnf_sat(f).has_value() == any);
        }
    }
}

TEST_CASE("max-sat oracle") {
    CnfFormula f;
    f.num_vars = 1;
    f.clauses = {{1}, {-1}};
    CHECK(solve_max_sat(f).first == 1);

    CnfFormula one;
    one.num_vars = 2;
    one.clauses = {{1, -2}};
    CHECK(solve_max_sat(one).first == 1);

    SECTION("random 2-CNFs equal the exhaustive maximum") {
        Rng root(19);
        for (int trial = 0; trial < 40; ++trial) {
            Rng rng = root.child(static_cast<std::uint64_t>(trial));
            int n = 2 + static_cast<int>(rng.below(9));
            auto f = gen_cnf(n, 1 + static_cast<int>(rng.below(14)), 2, rng);
            int best = 0;
            for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
                int sat = 0;
                for (const auto& cl : f.clauses) {
                    for (int lit : cl)
                        if ((lit > 0) == (((m >> (std::abs(lit) - 1)) & 1) != 0)) {
                            ++sat;
                            break;
                        }
                }
                best = std::max(best, sat);
            }
            CHECK(solve_max_sat(f).first == best);
        }
    }
}
