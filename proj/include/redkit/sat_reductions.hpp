// Max-d-SAT to minimum-weight k-clique: parts enumerate the assignments of
// variable blocks, and each clause pays -1 on exactly one edge of the clique
// picked by an assignment.
#pragma once

#include "redkit/instances.hpp"
#include "redkit/oracles.hpp"

namespace redkit {

/// Contiguous variable blocks of size ceil(n/k) or floor(n/k) covering
/// variables 1..n; the oversized blocks come first.
inline std::vector<std::vector<int>> partition_variables(int n, int k) {
    require(k >= 1 && k <= n, "partition_variables: need 1 <= k <= n");
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(k));
    int base = n / k, rem = n % k;
    int v = 1;
    for (int i = 0; i < k; ++i) {
        int size = base + (i < rem ? 1 : 0);
        for (int j = 0; j < size; ++j) blocks[static_cast<std::size_t>(i)].push_back(v++);
    }
    return blocks;
}

namespace detail {

struct NormalizedCnf {
    std::vector<std::vector<int>> clauses;  // deduplicated literals, no tautologies
    int always_satisfied = 0;               // tautological clauses removed
};

inline NormalizedCnf normalize_clauses(const CnfFormula& cnf) {
    NormalizedCnf out;
    for (const auto& cl : cnf.clauses) {
        std::vector<int> lits = cl;
        std::sort(lits.begin(), lits.end(), [](int a, int b) {
            int va = std::abs(a), vb = std::abs(b);
            return va != vb ? va < vb : a < b;
        });
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        bool taut = false;
        for (std::size_t i = 0; i + 1 < lits.size(); ++i)
            if (lits[i] == -lits[i + 1]) taut = true;
        if (taut) {
            ++out.always_satisfied;
            continue;
        }
        if (lits.empty()) continue;  // an empty clause is never satisfied; weight 0 everywhere
        out.clauses.push_back(std::move(lits));
    }
    return out;
}

}  // namespace detail

/// Builds the complete k-partite d-hypergraph whose part i holds one vertex
/// per assignment of the i-th variable block (block-local little-endian bit
/// order). An edge spanning parts {i_1..i_l} weighs -1 per clause that lives
/// inside those blocks, touches all of them, and is satisfied by the edge's
/// combined partial assignment; so every full assignment's clique weighs
/// exactly -(number of satisfied clauses). Tautological clauses (after
/// literal deduplication) are satisfied everywhere and charged to the empty
/// edge. The instance's target encodes the decision "min weight <= -t".
inline WeightedCliqueInstance maxsat_to_minweight_clique(const CnfFormula& cnf, int k, BigInt t,
                                                         std::optional<int> d_opt = {}) {
    cnf.validate();
    int width = cnf.width();
    int d = d_opt.value_or(std::max(width, 1));
    require(width <= d, "maxsat_to_minweight_clique: clause wider than d");
    require(k >= d, "maxsat_to_minweight_clique: requires k >= d");
    require(k <= cnf.num_vars, "maxsat_to_minweight_clique: requires k <= n");

    auto blocks = partition_variables(cnf.num_vars, k);
    auto norm = detail::normalize_clauses(cnf);

    // vertex layout: per part, 2^{block size} assignment vertices
    std::vector<int> part_base(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 0; i < k; ++i) {
        require(blocks[static_cast<std::size_t>(i)].size() <= 20,
                "maxsat_to_minweight_clique: block too large to enumerate");
        part_base[static_cast<std::size_t>(i) + 1] =
            part_base[static_cast<std::size_t>(i)] +
            (1 << blocks[static_cast<std::size_t>(i)].size());
    }
    WeightedCliqueInstance inst;
    inst.n = part_base[static_cast<std::size_t>(k)];
    inst.d = d;
    inst.k = k;
    inst.t = -t;
    std::vector<int> part(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < k; ++i)
        for (int v = part_base[static_cast<std::size_t>(i)]; v < part_base[static_cast<std::size_t>(i) + 1]; ++v)
            part[static_cast<std::size_t>(v)] = i;
    inst.partition = std::move(part);

    // block index of each variable
    std::vector<int> block_of(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
    std::vector<int> bit_of(static_cast<std::size_t>(cnf.num_vars) + 1, 0);
    for (int i = 0; i < k; ++i)
        for (std::size_t j = 0; j < blocks[static_cast<std::size_t>(i)].size(); ++j) {
            block_of[static_cast<std::size_t>(blocks[static_cast<std::size_t>(i)][j])] = i;
            bit_of[static_cast<std::size_t>(blocks[static_cast<std::size_t>(i)][j])] =
                static_cast<int>(j);
        }

    // group clauses by the exact set of parts they touch
    std::map<std::vector<int>, std::vector<const std::vector<int>*>> by_parts;
    for (const auto& cl : norm.clauses) {
        std::vector<int> parts;
        for (int lit : cl) parts.push_back(block_of[static_cast<std::size_t>(std::abs(lit))]);
        std::sort(parts.begin(), parts.end());
        parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
        by_parts[parts].push_back(&cl);
    }

    // complete k-partite edge set: one edge per part subset and assignment combo
    std::vector<int> chosen_parts;
    auto emit_edges_for_parts = [&](const std::vector<int>& parts) {
        auto clauses_it = by_parts.find(parts);
        std::vector<int> assign(parts.size(), 0);
        for (;;) {
            std::vector<int> edge;
            for (std::size_t i = 0; i < parts.size(); ++i)
                edge.push_back(part_base[static_cast<std::size_t>(parts[i])] +
                               assign[i]);
            BigInt w = 0;
            if (clauses_it != by_parts.end()) {
                for (const auto* cl : clauses_it->second) {
                    bool sat = false;
                    for (int lit : *cl) {
                        int var = std::abs(lit);
                        int bi = block_of[static_cast<std::size_t>(var)];
                        std::size_t pos =
                            static_cast<std::size_t>(std::lower_bound(parts.begin(), parts.end(), bi) -
                                                     parts.begin());
                        int bit = (assign[pos] >> bit_of[static_cast<std::size_t>(var)]) & 1;
                        if ((lit > 0) == (bit != 0)) {
                            sat = true;
                            break;
                        }
                    }
                    if (sat) w -= 1;
                }
            }
            inst.edges.emplace(std::move(edge), std::move(w));
            std::size_t i = parts.size();
            while (i-- > 0) {
                if (++assign[i] < (1 << blocks[static_cast<std::size_t>(parts[i])].size())) break;
                assign[i] = 0;
                if (i == 0) return;
            }
            if (parts.empty()) return;
        }
    };
    auto rec_parts = [&](auto&& self, int start) -> void {
        if (!chosen_parts.empty()) emit_edges_for_parts(chosen_parts);
        if (static_cast<int>(chosen_parts.size()) == d) return;
        for (int i = start; i < k; ++i) {
            chosen_parts.push_back(i);
            self(self, i + 1);
            chosen_parts.pop_back();
        }
    };
    rec_parts(rec_parts, 0);
    inst.edges.emplace(std::vector<int>{}, BigInt(-norm.always_satisfied));

    // the stated weight window and the vertex budget, checked on every build
    BigInt m(cnf.clauses.size());
    for (const auto& [e, w] : inst.edges) {
        check_bound(w >= -2 * m && w <= 2 * m, "maxsat reduction: weight outside [-2m, 2m]");
        check_bound(w >= -m && w <= 0, "maxsat reduction: weight outside [-m, 0]");
    }
    std::uint64_t ceil_nk =
        static_cast<std::uint64_t>((cnf.num_vars + k - 1) / k);
    check_bound(static_cast<std::uint64_t>(inst.n) <=
                    static_cast<std::uint64_t>(k) * (1ULL << ceil_nk),
                "maxsat reduction: vertex count exceeds k * 2^ceil(n/k)");
    inst.validate();
    return inst;
}

}  // namespace redkit
