// Unweighted endgame: k-partite hypergraph cliques to k-OV, k-OV to 2-OV,
// and the composed weighted-clique-to-2-OV pipeline.
#pragma once

#include "redkit/clique_reductions.hpp"
#include "redkit/instances.hpp"

namespace redkit {

/// Encodes an unweighted k-partite d-hypergraph as a k-OV instance with one
/// coordinate per missing part-respecting edge (lexicographic order of the
/// sorted vertex lists). Vertex v in part i gets coordinate 1 on non-edge h
/// iff h avoids part i or meets it exactly in v: a tuple of vectors is
/// orthogonal iff no non-edge fits inside the chosen vertices, i.e. iff they
/// form a clique. Weights are ignored; D == 0 whenever the instance is
/// complete. Total vector count is n.
inline OVInstance clique_to_kov(const WeightedCliqueInstance& inst) {
    require(inst.partition.has_value(), "clique_to_kov: instance must be k-partite");
    const auto& part = *inst.partition;
    std::vector<std::vector<int>> nonedges;
    detail::for_each_candidate_subset(inst, inst.d, [&](const std::vector<int>& sub) {
        if (!inst.has_edge(sub)) nonedges.push_back(sub);
    });
    OVInstance ov;
    ov.k = inst.k;
    ov.dim = static_cast<int>(nonedges.size());
    ov.families.resize(static_cast<std::size_t>(inst.k));
    for (int v = 0; v < inst.n; ++v) {
        int i = part[static_cast<std::size_t>(v)];
        std::vector<std::uint8_t> x(nonedges.size(), 0);
        for (std::size_t h = 0; h < nonedges.size(); ++h) {
            bool meets_part = false, contains_v = false;
            for (int u : nonedges[h]) {
                if (part[static_cast<std::size_t>(u)] == i) {
                    meets_part = true;
                    if (u == v) contains_v = true;
                }
            }
            x[h] = (!meets_part || contains_v) ? 1 : 0;
        }
        ov.families[static_cast<std::size_t>(i)].push_back(std::move(x));
    }
    return ov;
}

/// Halves a k-OV instance: the first family of the output lists the
/// coordinatewise products of all tuples from families 0..floor(k/2)-1, the
/// second those of the remaining families. Dimension is unchanged; family
/// sizes are the exact products of the input sizes (an empty input family
/// yields an empty product family, hence a no-instance, as it should).
inline OVInstance kov_to_2ov(const OVInstance& ov) {
    require(ov.k >= 2, "kov_to_2ov: needs at least two families");
    int half = ov.k / 2;
    auto build = [&](int from, int to) {
        std::vector<std::vector<std::uint8_t>> out;
        for (int f = from; f < to; ++f)
            if (ov.families[static_cast<std::size_t>(f)].empty()) return out;
        std::vector<std::size_t> idx(static_cast<std::size_t>(to - from), 0);
        for (;;) {
            std::vector<std::uint8_t> prod(static_cast<std::size_t>(ov.dim), 1);
            for (int f = from; f < to; ++f) {
                const auto& vec =
                    ov.families[static_cast<std::size_t>(f)][idx[static_cast<std::size_t>(f - from)]];
                for (int j = 0; j < ov.dim; ++j)
                    prod[static_cast<std::size_t>(j)] &= vec[static_cast<std::size_t>(j)];
            }
            out.push_back(std::move(prod));
            int f = to - from - 1;
            while (f >= 0) {
                if (++idx[static_cast<std::size_t>(f)] <
                    ov.families[static_cast<std::size_t>(from + f)].size())
                    break;
                idx[static_cast<std::size_t>(f)] = 0;
                --f;
            }
            if (f < 0) break;
        }
        return out;
    };
    OVInstance two;
    two.k = 2;
    two.dim = ov.dim;
    two.families.resize(2);
    two.families[0] = build(0, half);
    two.families[1] = build(half, ov.k);
    return two;
}

// ---------------------------------------------------------------------------
// Composition: exact-weight clique all the way to 2-OV

struct PipelineParams {
    std::optional<int> p;  // digit parameter for weight stripping; default sqrt(log2 n)
};

struct Pipeline2OVResult {
    std::vector<OVInstance> queries;  // OR-combined
    ReductionTrace trace;
};

/// The full chain: weights to non-negative, hashed below a polynomial bound,
/// stripped to unweighted k-partite hypergraphs, encoded as k-OV and halved
/// to 2-OV. Unweighted inputs (all weights zero, target zero) skip straight
/// to the last two stages. The disjunction over emitted 2-OV queries matches
/// the exact-weight answer of the input, up to the hashing stage's one-sided
/// error on no-instances.
template <typename Visitor>  // void(const OVInstance&)
ReductionTrace pipeline_clique_to_2ov_stream(const WeightedCliqueInstance& inst,
                                             const PipelineParams& params, Rng& rng,
                                             Visitor&& visit) {
    ReductionTrace trace;
    int p = params.p ? *params.p : default_strip_p(inst.n);
    trace.add("pipeline", "p", static_cast<std::int64_t>(p));

    std::uint64_t total_2ov = 0;
    auto emit_unweighted = [&](const WeightedCliqueInstance& unweighted) {
        OVInstance kov = clique_to_kov(unweighted);
        OVInstance two = kov_to_2ov(kov);
        ++total_2ov;
        trace.add("2ov", "N", static_cast<std::uint64_t>(two.total_vectors()));
        trace.add("2ov", "D", static_cast<std::int64_t>(two.dim));
        visit(static_cast<const OVInstance&>(two));
    };

    bool unweighted_input = inst.t == 0;
    for (const auto& [e, w] : inst.edges)
        if (w != 0) unweighted_input = false;
    if (unweighted_input) {
        trace.add("pipeline", "mode", std::string("unweighted"));
        emit_unweighted(make_k_partite(inst));
        trace.add("pipeline", "2ov_queries", total_2ov);
        return trace;
    }

    trace.add("pipeline", "mode", std::string("weighted"));
    auto nn = make_nonnegative(inst);
    if (!nn) {
        trace.add("pipeline", "trivially_no", std::uint64_t{1});
        trace.add("pipeline", "2ov_queries", std::uint64_t{0});
        return trace;
    }
    QuerySet hashed = reduce_weights_mod_prime(*nn, rng);
    trace.append(hashed.trace);
    std::uint64_t stripped_total = 0;
    for (std::size_t qi = 0; qi < hashed.queries.size(); ++qi) {
        // hashed weights can still be large enough that the requested p would
        // overflow the carry reduction's arithmetic; bump it as needed
        int p_eff = feasible_strip_p(hashed.queries[qi], p);
        if (p_eff != p) trace.add("pipeline", "p_effective", static_cast<std::int64_t>(p_eff));
        std::uint64_t before = total_2ov;
        // the hashing stage guarantees polynomially bounded weights, but with
        // constants that dwarf n^12 at desk-scale n; declare a roomier exponent
        ReductionTrace st =
            strip_weights_stream(hashed.queries[qi], p_eff, emit_unweighted, false, 40);
        trace.append(st);
        stripped_total += total_2ov - before;
    }
    check_bound(stripped_total == total_2ov, "pipeline: stage counts are inconsistent");
    trace.add("pipeline", "hash_queries", static_cast<std::uint64_t>(hashed.queries.size()));
    trace.add("pipeline", "2ov_queries", total_2ov);
    return trace;
}

inline Pipeline2OVResult pipeline_clique_to_2ov(const WeightedCliqueInstance& inst,
                                                const PipelineParams& params, Rng& rng) {
    Pipeline2OVResult r;
    r.trace = pipeline_clique_to_2ov_stream(inst, params, rng,
                                            [&](const OVInstance& q) { r.queries.push_back(q); });
    return r;
}

}  // namespace redkit
