// Exhaustive reference solvers. Ground truth for every reduction in this
// repository; deliberately simple, no pruning beyond the one-vertex-per-part
// restriction on partitioned instances.
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

#include "redkit/instances.hpp"

namespace redkit {

struct OracleBudget {
    std::uint64_t max_candidates = 200'000'000ULL;
    double time_hint_sec = 600.0;  // soft wall-clock cap, checked coarsely
};

namespace detail {

// Counts work units against both budget caps; the clock is consulted only
// every 64k bumps so results stay deterministic unless the cap fires.
class BudgetMeter {
  public:
    explicit BudgetMeter(const OracleBudget& budget, const char* what)
        : budget_(budget), what_(what), start_(std::chrono::steady_clock::now()) {}

    void bump() {
        if (++count_ > budget_.max_candidates)
            throw BudgetExceeded(std::string(what_) + " exceeded candidate budget");
        if ((count_ & 0xffff) == 0) {
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            if (secs > budget_.time_hint_sec)
                throw BudgetExceeded(std::string(what_) + " exceeded the time hint");
        }
    }

  private:
    const OracleBudget& budget_;
    const char* what_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t count_ = 0;
};

}  // namespace detail

namespace detail {

// Presence/weight lookups; bitmask-keyed when the vertex count allows it.
class EdgeLookup {
  public:
    explicit EdgeLookup(const WeightedCliqueInstance& inst) : inst_(inst) {
        if (inst.n <= 64) {
            by_mask_.reserve(inst.edges.size() * 2);
            for (const auto& [e, w] : inst.edges) {
                std::uint64_t m = 0;
                for (int v : e) m |= (1ULL << v);
                by_mask_.emplace(m, &w);
            }
            use_mask_ = true;
        }
    }

    const BigInt* find(const std::vector<int>& sorted_subset) const {
        if (use_mask_) {
            std::uint64_t m = 0;
            for (int v : sorted_subset) m |= (1ULL << v);
            auto it = by_mask_.find(m);
            return it == by_mask_.end() ? nullptr : it->second;
        }
        auto it = inst_.edges.find(sorted_subset);
        return it == inst_.edges.end() ? nullptr : &it->second;
    }

  private:
    const WeightedCliqueInstance& inst_;
    bool use_mask_ = false;
    std::unordered_map<std::uint64_t, const BigInt*> by_mask_;
};

// Weight of S if S is a clique (every subset of size <= d present), else nullopt.
inline std::optional<BigInt> clique_weight_via(const EdgeLookup& lookup,
                                               const std::vector<int>& sorted_vertices, int d) {
    BigInt total = 0;
    bool ok = true;
    for_each_subset_le(sorted_vertices, d, [&](const std::vector<int>& sub) {
        if (!ok) return;
        const BigInt* w = lookup.find(sub);
        if (!w) {
            ok = false;
            return;
        }
        total += *w;
    });
    if (!ok) return std::nullopt;
    return total;
}

}  // namespace detail

/// Weight of the vertex set in `inst` if it forms a clique, else nullopt.
inline std::optional<BigInt> clique_weight(const WeightedCliqueInstance& inst,
                                           std::vector<int> vertices) {
    std::sort(vertices.begin(), vertices.end());
    detail::EdgeLookup lookup(inst);
    return detail::clique_weight_via(lookup, vertices, inst.d);
}

/// Visits every k-clique (with its weight) in deterministic order: candidate
/// sets ascending, or part-by-part tuples for partitioned instances. The
/// visitor returns false to stop early. Throws BudgetExceeded past the cap.
template <typename Fn>
void for_each_k_clique(const WeightedCliqueInstance& inst, const OracleBudget& budget, Fn&& fn) {
    detail::EdgeLookup lookup(inst);
    detail::BudgetMeter meter(budget, "clique enumeration");
    auto visit = [&](std::vector<int> s) -> bool {
        meter.bump();
        std::sort(s.begin(), s.end());
        auto w = detail::clique_weight_via(lookup, s, inst.d);
        if (!w) return true;
        CliqueSolution sol;
        sol.vertices = std::move(s);
        sol.weight = std::move(*w);
        return fn(sol);
    };
    if (inst.partition) {
        std::vector<std::vector<int>> parts(static_cast<std::size_t>(inst.k));
        for (int v = 0; v < inst.n; ++v)
            parts[static_cast<std::size_t>((*inst.partition)[static_cast<std::size_t>(v)])]
                .push_back(v);
        for (const auto& p : parts)
            if (p.empty()) return;  // no tuple covers every part
        std::vector<int> pick(static_cast<std::size_t>(inst.k), 0);
        bool stop = false;
        auto rec = [&](auto&& self, int part) -> void {
            if (stop) return;
            if (part == inst.k) {
                std::vector<int> s;
                s.reserve(pick.size());
                for (int i = 0; i < inst.k; ++i)
                    s.push_back(parts[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])]);
                if (!visit(std::move(s))) stop = true;
                return;
            }
            for (std::size_t i = 0; i < parts[static_cast<std::size_t>(part)].size(); ++i) {
                pick[static_cast<std::size_t>(part)] = static_cast<int>(i);
                self(self, part + 1);
                if (stop) return;
            }
        };
        rec(rec, 0);
    } else {
        if (inst.k > inst.n) return;
        std::vector<int> comb(static_cast<std::size_t>(inst.k));
        for (int i = 0; i < inst.k; ++i) comb[static_cast<std::size_t>(i)] = i;
        bool stop = false;
        for (;;) {
            if (!visit(comb)) {
                stop = true;
            }
            if (stop) return;
            // next combination in ascending order
            int i = inst.k - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == inst.n - inst.k + i) --i;
            if (i < 0) return;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < inst.k; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

inline std::vector<CliqueSolution> enumerate_k_cliques(const WeightedCliqueInstance& inst,
                                                       const OracleBudget& budget = {}) {
    std::vector<CliqueSolution> out;
    for_each_k_clique(inst, budget, [&](const CliqueSolution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

/// First k-clique of weight exactly inst.t, or nullopt.
inline std::optional<CliqueSolution> solve_exact_weight_clique(const WeightedCliqueInstance& inst,
                                                               const OracleBudget& budget = {}) {
    std::optional<CliqueSolution> found;
    for_each_k_clique(inst, budget, [&](const CliqueSolution& s) {
        if (s.weight == inst.t) {
            found = s;
            return false;
        }
        return true;
    });
    return found;
}

/// Minimum-weight k-clique (ties: first in enumeration order), or nullopt.
inline std::optional<CliqueSolution> solve_min_weight_clique(const WeightedCliqueInstance& inst,
                                                             const OracleBudget& budget = {}) {
    std::optional<CliqueSolution> best;
    for_each_k_clique(inst, budget, [&](const CliqueSolution& s) {
        if (!best || s.weight < best->weight) best = s;
        return true;
    });
    return best;
}

// ---------------------------------------------------------------------------
// Orthogonal vectors

/// One index per family such that the coordinatewise product sums to zero.
/// D == 0 with all families non-empty yields the first tuple (empty sum).
inline std::optional<std::vector<int>> solve_k_ov(const OVInstance& ov) {
    for (const auto& fam : ov.families)
        if (fam.empty()) return std::nullopt;
    if (ov.k == 0) return std::vector<int>{};
    std::vector<int> idx(static_cast<std::size_t>(ov.k), 0);
    for (;;) {
        bool orthogonal = true;
        for (int j = 0; j < ov.dim && orthogonal; ++j) {
            bool all_one = true;
            for (int f = 0; f < ov.k; ++f) {
                if (!ov.families[static_cast<std::size_t>(f)]
                                [static_cast<std::size_t>(idx[static_cast<std::size_t>(f)])]
                                [static_cast<std::size_t>(j)]) {
                    all_one = false;
                    break;
                }
            }
            if (all_one) orthogonal = false;  // this coordinate contributes 1
        }
        if (orthogonal) return idx;
        int f = ov.k - 1;
        while (f >= 0) {
            if (++idx[static_cast<std::size_t>(f)] <
                static_cast<int>(ov.families[static_cast<std::size_t>(f)].size()))
                break;
            idx[static_cast<std::size_t>(f)] = 0;
            --f;
        }
        if (f < 0) return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Circuits

struct CircuitEval {
    bool output = false;
    std::vector<std::uint8_t> values;  // per gate position
};

/// Evaluates the circuit in topological order. TH_theta fires iff at least
/// theta in-wires carry 1; AND and OR are TH_fanin and TH_1.
inline CircuitEval eval_circuit(const ThresholdCircuit& c,
                                const std::vector<std::uint8_t>& assignment) {
    if (static_cast<int>(assignment.size()) != c.num_inputs)
        throw ParseError("assignment length differs from input count");
    CircuitEval r;
    r.values.assign(c.gates.size(), 0);
    const auto& inputs = c.input_gate_indices();
    for (std::size_t i = 0; i < inputs.size(); ++i)
        r.values[static_cast<std::size_t>(inputs[i])] = assignment[i] ? 1 : 0;
    for (int gi : c.topo_order()) {
        const Gate& g = c.gates[static_cast<std::size_t>(gi)];
        if (g.kind == GateKind::Input) continue;
        int ones = 0;
        for (int in_id : g.inputs) ones += r.values[static_cast<std::size_t>(c.index_of(in_id))];
        bool v = false;
        switch (g.kind) {
            case GateKind::Neg: v = ones == 0; break;
            case GateKind::And: v = ones == static_cast<int>(g.inputs.size()); break;
            case GateKind::Or: v = ones >= 1; break;
            case GateKind::Th: v = ones >= g.theta; break;
            case GateKind::Input: break;
        }
        r.values[static_cast<std::size_t>(gi)] = v ? 1 : 0;
    }
    r.output = r.values[static_cast<std::size_t>(c.index_of(c.output))] != 0;
    return r;
}

/// Exhaustive satisfiability over all 2^n assignments, counter order
/// (input bit i is bit i of the counter).
inline std::optional<std::vector<std::uint8_t>> solve_circuit_sat(const ThresholdCircuit& c,
                                                                  const OracleBudget& budget = {}) {
    if (c.num_inputs > 62) throw BudgetExceeded("circuit-sat: too many inputs for brute force");
    std::uint64_t total = 1ULL << c.num_inputs;
    detail::BudgetMeter meter(budget, "circuit-sat");
    std::vector<std::uint8_t> x(static_cast<std::size_t>(c.num_inputs), 0);
    for (std::uint64_t m = 0; m < total; ++m) {
        meter.bump();
        for (int i = 0; i < c.num_inputs; ++i)
            x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((m >> i) & 1);
        if (eval_circuit(c, x).output) return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// CNF

/// DPLL with unit propagation driven by per-variable occurrence lists.
/// `assumptions` pins variables before search. The first satisfying
/// assignment in false-first branching order wins, so results are
/// deterministic; unconstrained variables come back false.
inline std::optional<std::vector<std::uint8_t>> solve_cnf_sat(
    const CnfFormula& f, const OracleBudget& budget = {},
    const std::vector<std::pair<int, bool>>& assumptions = {}) {
    f.validate();
    if (f.is_canonical_false()) return std::nullopt;
    const int n = f.num_vars;
    std::vector<std::int8_t> val(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> occur(static_cast<std::size_t>(n));
    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci)
        for (int lit : f.clauses[ci])
            occur[static_cast<std::size_t>(std::abs(lit) - 1)].push_back(static_cast<int>(ci));

    std::vector<int> trail;
    detail::BudgetMeter meter(budget, "cnf-sat");
    auto bump = [&]() { meter.bump(); };

    // clause status under the current assignment
    enum { CONFLICT, UNIT, OPEN, SAT };
    auto clause_state = [&](int ci, int& unit_lit) {
        int unassigned = 0;
        unit_lit = 0;
        for (int lit : f.clauses[static_cast<std::size_t>(ci)]) {
            std::int8_t v = val[static_cast<std::size_t>(std::abs(lit) - 1)];
            if (v == -1) {
                ++unassigned;
                unit_lit = lit;
            } else if ((lit > 0) == (v == 1)) {
                return +SAT;
            }
        }
        if (unassigned == 0) return +CONFLICT;
        return unassigned == 1 ? +UNIT : +OPEN;
    };

    // assigns var := b, propagates via occurrence lists; false on conflict
    auto propagate = [&](int var0, std::int8_t b0) -> bool {
        std::vector<std::pair<int, std::int8_t>> queue{{var0, b0}};
        std::size_t head = 0;
        while (head < queue.size()) {
            auto [var, b] = queue[head++];
            auto& slot = val[static_cast<std::size_t>(var)];
            if (slot != -1) {
                if (slot != b) return false;
                continue;
            }
            slot = b;
            trail.push_back(var);
            bump();
            for (int ci : occur[static_cast<std::size_t>(var)]) {
                int unit_lit = 0;
                int st = clause_state(ci, unit_lit);
                if (st == CONFLICT) return false;
                if (st == UNIT)
                    queue.push_back({std::abs(unit_lit) - 1,
                                     unit_lit > 0 ? std::int8_t(1) : std::int8_t(0)});
            }
        }
        return true;
    };

    // initial fixpoint: assumptions, then pre-existing unit/empty clauses
    for (auto [v, b] : assumptions) {
        if (v < 1 || v > n) throw ParseError("assumption variable out of range");
        if (!propagate(v - 1, b ? 1 : 0)) return std::nullopt;
    }
    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
        int unit_lit = 0;
        int st = clause_state(static_cast<int>(ci), unit_lit);
        if (st == CONFLICT) return std::nullopt;
        if (st == UNIT &&
            !propagate(std::abs(unit_lit) - 1, unit_lit > 0 ? std::int8_t(1) : std::int8_t(0)))
            return std::nullopt;
    }

    auto search = [&](auto&& self, int from) -> bool {
        int var = -1;
        for (int i = from; i < n; ++i)
            if (val[static_cast<std::size_t>(i)] == -1) {
                var = i;
                break;
            }
        if (var == -1) {
            // everything assigned; propagation kept all clauses non-conflicting,
            // so only fully-open clauses could remain -- there are none
            return true;
        }
        for (std::int8_t b : {std::int8_t(0), std::int8_t(1)}) {
            std::size_t mark = trail.size();
            if (propagate(var, b) && self(self, var + 1)) return true;
            while (trail.size() > mark) {
                val[static_cast<std::size_t>(trail.back())] = -1;
                trail.pop_back();
            }
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    std::vector<std::uint8_t> out(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = val[static_cast<std::size_t>(i)] == 1 ? 1 : 0;
    return out;
}

/// Exact maximum number of simultaneously satisfiable clauses, by exhaustive
/// search over all assignments; first maximizer in counter order wins.
inline std::pair<int, std::vector<std::uint8_t>> solve_max_sat(const CnfFormula& f,
                                                               const OracleBudget& budget = {}) {
    f.validate();
    if (f.num_vars > 62) throw BudgetExceeded("max-sat: too many variables for brute force");
    std::uint64_t total = 1ULL << f.num_vars;
    detail::BudgetMeter meter(budget, "max-sat");
    int best = -1;
    std::vector<std::uint8_t> best_x;
    std::vector<std::uint8_t> x(static_cast<std::size_t>(f.num_vars), 0);
    for (std::uint64_t m = 0; m < total; ++m) {
        meter.bump();
        for (int i = 0; i < f.num_vars; ++i)
            x[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((m >> i) & 1);
        int sat = 0;
        for (const auto& cl : f.clauses) {
            for (int lit : cl) {
                if ((lit > 0) == (x[static_cast<std::size_t>(std::abs(lit) - 1)] != 0)) {
                    ++sat;
                    break;
                }
            }
        }
        if (sat > best) {
            best = sat;
            best_x = x;
        }
    }
    return {best, best_x};
}

}  // namespace redkit
