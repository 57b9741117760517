// Seeded instance generators. Everything here is deterministic for a fixed
// seed; suites derive independent child streams per trial so corpora stay
// stable when individual generators change their consumption.
#pragma once

#include "redkit/instances.hpp"
#include "redkit/oracles.hpp"
#include "redkit/rng.hpp"

namespace redkit {

struct CliqueGenParams {
    int n = 6;
    int d = 2;
    int k = 3;
    BigInt wmax = 50;           // weights uniform in [-wmax, wmax] (or [0, wmax])
    bool nonnegative = false;
    int density_pct = 85;       // probability an edge is present
    bool partitioned = false;   // generate a k-partite instance directly
    bool planted = false;       // force a clique and make t its weight
    std::optional<BigInt> t;    // target; if planting, an edge is adjusted to hit it
};

inline WeightedCliqueInstance gen_clique(const CliqueGenParams& p, Rng& rng) {
    require(p.n >= 0 && p.d >= 0 && p.k >= 0, "gen_clique: negative parameter");
    WeightedCliqueInstance inst;
    inst.n = p.n;
    inst.d = p.d;
    inst.k = p.k;
    if (p.partitioned) {
        std::vector<int> part(static_cast<std::size_t>(p.n));
        for (int v = 0; v < p.n; ++v) part[static_cast<std::size_t>(v)] = p.k > 0 ? v % p.k : 0;
        inst.partition = std::move(part);
    }
    auto random_weight = [&]() {
        if (p.wmax == 0) return BigInt(0);
        return p.nonnegative ? rng.big_range(0, p.wmax) : rng.big_range(-p.wmax, p.wmax);
    };
    std::vector<std::vector<int>> candidates;
    {
        // all subsets of size <= d, part-respecting when partitioned
        std::vector<int> cur;
        std::uint64_t part_mask = 0;
        auto rec = [&](auto&& self, int start) -> void {
            candidates.push_back(cur);
            if (static_cast<int>(cur.size()) == p.d) return;
            for (int v = start; v < p.n; ++v) {
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
        rec(rec, 0);
    }
    for (const auto& e : candidates)
        if (rng.chance(static_cast<std::uint64_t>(p.density_pct), 100))
            inst.edges.emplace(e, random_weight());

    if (p.planted) {
        // pick the clique: one vertex per part, or any k distinct vertices
        std::vector<int> s;
        if (inst.partition) {
            std::vector<std::vector<int>> parts(static_cast<std::size_t>(p.k));
            for (int v = 0; v < p.n; ++v)
                parts[static_cast<std::size_t>((*inst.partition)[static_cast<std::size_t>(v)])]
                    .push_back(v);
            for (const auto& pt : parts) {
                require(!pt.empty(), "gen_clique: cannot plant a clique, empty part");
                s.push_back(pt[static_cast<std::size_t>(rng.below(pt.size()))]);
            }
        } else {
            require(p.k <= p.n, "gen_clique: cannot plant a clique, k > n");
            std::vector<int> pool(static_cast<std::size_t>(p.n));
            for (int v = 0; v < p.n; ++v) pool[static_cast<std::size_t>(v)] = v;
            for (int i = 0; i < p.k; ++i) {
                std::size_t j = static_cast<std::size_t>(i) +
                                static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
                std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
                s.push_back(pool[static_cast<std::size_t>(i)]);
            }
        }
        std::sort(s.begin(), s.end());
        BigInt total = 0;
        std::vector<std::vector<int>> subs;
        for_each_subset_le(s, p.d, [&](const std::vector<int>& sub) { subs.push_back(sub); });
        for (const auto& sub : subs) {
            auto it = inst.edges.find(sub);
            if (it == inst.edges.end()) it = inst.edges.emplace(sub, random_weight()).first;
            total += it->second;
        }
        if (p.t) {
            // retarget one planted edge so the clique weight is exactly t
            auto& slot = inst.edges.at(subs.back());
            slot += *p.t - total;
            inst.t = *p.t;
        } else {
            inst.t = total;
        }
    } else {
        inst.t = p.t ? *p.t : (p.nonnegative ? rng.big_range(0, inst.binom() * p.wmax)
                                             : rng.big_range(-BigInt(inst.binom()) * p.wmax,
                                                             BigInt(inst.binom()) * p.wmax));
    }
    inst.validate();
    return inst;
}

inline OVInstance gen_ov(int k, int dim, int per_family, int ones_pct, Rng& rng) {
    OVInstance ov;
    ov.k = k;
    ov.dim = dim;
    ov.families.resize(static_cast<std::size_t>(k));
    for (int f = 0; f < k; ++f)
        for (int i = 0; i < per_family; ++i) {
            std::vector<std::uint8_t> v(static_cast<std::size_t>(dim));
            for (int j = 0; j < dim; ++j)
                v[static_cast<std::size_t>(j)] =
                    rng.chance(static_cast<std::uint64_t>(ones_pct), 100) ? 1 : 0;
            ov.families[static_cast<std::size_t>(f)].push_back(std::move(v));
        }
    ov.validate();
    return ov;
}

inline CnfFormula gen_cnf(int n, int m, int width, Rng& rng) {
    require(n >= 1 && width >= 1, "gen_cnf: bad parameters");
    CnfFormula f;
    f.num_vars = n;
    for (int c = 0; c < m; ++c) {
        int w = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(width, n))));
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < w) {
            int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        std::sort(vars.begin(), vars.end());
        std::vector<int> clause;
        for (int v : vars) clause.push_back(rng.coin() ? v : -v);
        f.clauses.push_back(std::move(clause));
    }
    f.validate();
    return f;
}

/// Random threshold circuit with at most `wires` wires and depth at most
/// `max_depth`. Gates not feeding the output are pruned, so the result has a
/// single sink.
inline ThresholdCircuit gen_tc(int n, int wires, int max_depth, Rng& rng) {
    require(n >= 1 && wires >= 1 && max_depth >= 1, "gen_tc: bad parameters");
    ThresholdCircuit c;
    c.num_inputs = n;
    for (int i = 0; i < n; ++i) c.gates.push_back({i, GateKind::Input, 0, {}});
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    int wires_left = wires;
    int next_id = n;
    while (wires_left > 0) {
        int kind_roll = static_cast<int>(rng.below(4));
        Gate g;
        g.id = next_id;
        int want = 0;
        if (kind_roll == 0) {
            g.kind = GateKind::Neg;
            want = 1;
        } else if (kind_roll == 1) {
            g.kind = GateKind::And;
            want = 2;
        } else if (kind_roll == 2) {
            g.kind = GateKind::Or;
            want = 2;
        } else {
            g.kind = GateKind::Th;
            want = 2 + static_cast<int>(rng.below(3));
        }
        want = std::min(want, wires_left);
        if (want == 0) break;
        // children must keep the new gate within the depth budget
        std::vector<int> eligible;
        for (int i = 0; i < next_id; ++i)
            if (depth[static_cast<std::size_t>(i)] <= max_depth - 1) eligible.push_back(i);
        if (eligible.empty()) break;
        int dmax = 0;
        for (int w = 0; w < want; ++w) {
            int pickv = eligible[static_cast<std::size_t>(rng.below(eligible.size()))];
            g.inputs.push_back(pickv);
            dmax = std::max(dmax, depth[static_cast<std::size_t>(pickv)]);
        }
        if (g.kind == GateKind::Th)
            g.theta = 1 + static_cast<int>(rng.below(g.inputs.size()));
        wires_left -= static_cast<int>(g.inputs.size());
        depth.push_back(dmax + 1);
        c.gates.push_back(std::move(g));
        ++next_id;
    }
    if (next_id == n) {
        // no gates fit; emit a single NEG of the first input
        c.gates.push_back({next_id, GateKind::Neg, 0, {0}});
        ++next_id;
    }
    // keep only the cone of the last gate
    int out_id = next_id - 1;
    std::vector<char> keep(static_cast<std::size_t>(next_id), 0);
    std::vector<int> stack{out_id};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (keep[static_cast<std::size_t>(v)]) continue;
        keep[static_cast<std::size_t>(v)] = 1;
        for (int u : c.gates[static_cast<std::size_t>(v)].inputs)
            if (!keep[static_cast<std::size_t>(u)]) stack.push_back(u);
    }
    ThresholdCircuit pruned;
    pruned.num_inputs = n;
    for (const auto& g : c.gates)
        if (g.kind == GateKind::Input || keep[static_cast<std::size_t>(g.id)]) pruned.gates.push_back(g);
    pruned.output = out_id;
    pruned.finalize();
    return pruned;
}

/// Random formula: a tree of exactly m gates over {NEG, AND, OR} with leaves
/// drawn from n variables (repetition allowed).
inline ThresholdCircuit gen_formula(int n, int m, Rng& rng) {
    require(n >= 1 && m >= 1, "gen_formula: bad parameters");
    ThresholdCircuit c;
    c.num_inputs = n;
    for (int i = 0; i < n; ++i) c.gates.push_back({i, GateKind::Input, 0, {}});
    int next_id = n;
    // builds a subtree with exactly `gates` internal nodes, returns root id
    auto rec = [&](auto&& self, int gates) -> int {
        if (gates == 0) return static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        bool neg = gates == 1 ? rng.coin() : rng.chance(1, 4);
        if (neg) {
            int child = self(self, gates - 1);
            c.gates.push_back({next_id, GateKind::Neg, 0, {child}});
            return next_id++;
        }
        int left = static_cast<int>(rng.below(static_cast<std::uint64_t>(gates)));  // 0..gates-1
        int a = self(self, left);
        int b = self(self, gates - 1 - left);
        c.gates.push_back({next_id, rng.coin() ? GateKind::And : GateKind::Or, 0, {a, b}});
        return next_id++;
    };
    c.output = rec(rec, m);
    c.finalize();
    return c;
}

}  // namespace redkit
