// Satisfiability-preserving compilation of sparse formulas and threshold
// circuits into bounded-width CNF with a small auxiliary-variable budget:
// tree decomposition, popcount/adder and binary-threshold gadgets, cut-set
// compilation via truth tables, plus depth reduction by wire removal and the
// branching compiler built on it.
#pragma once

#include <cmath>
#include <set>

#include "redkit/instances.hpp"
#include "redkit/oracles.hpp"

namespace redkit {

// ---------------------------------------------------------------------------
// Gadget circuits: fan-in-2 {NEG, AND, OR} networks with multiple outputs.

struct GadgetCircuit {
    // nodes 0..num_inputs-1 are the inputs; gate j is node num_inputs + j
    struct Node {
        char op;  // 'N', 'A', 'O'
        int a = -1, b = -1;
    };
    int num_inputs = 0;
    std::vector<Node> gates;
    std::vector<int> outputs;  // node ids; may reference inputs directly

    int gate_count() const { return static_cast<int>(gates.size()); }

    std::vector<std::uint8_t> eval_nodes(const std::vector<std::uint8_t>& in) const {
        std::vector<std::uint8_t> val(static_cast<std::size_t>(num_inputs) + gates.size(), 0);
        for (int i = 0; i < num_inputs; ++i) val[static_cast<std::size_t>(i)] = in[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < gates.size(); ++j) {
            const Node& g = gates[j];
            std::uint8_t a = val[static_cast<std::size_t>(g.a)];
            std::uint8_t b = g.b >= 0 ? val[static_cast<std::size_t>(g.b)] : 0;
            std::uint8_t v = 0;
            if (g.op == 'N') v = a ? 0 : 1;
            if (g.op == 'A') v = (a && b) ? 1 : 0;
            if (g.op == 'O') v = (a || b) ? 1 : 0;
            val[static_cast<std::size_t>(num_inputs) + j] = v;
        }
        return val;
    }

    std::vector<std::uint8_t> eval(const std::vector<std::uint8_t>& in) const {
        auto val = eval_nodes(in);
        std::vector<std::uint8_t> out;
        for (int o : outputs) out.push_back(val[static_cast<std::size_t>(o)]);
        return out;
    }
};

namespace detail {

// Node-id builder over a GadgetCircuit. -1 stands for constant zero, which
// lets the ripple adders drop gates at absent positions.
struct GadgetBuilder {
    GadgetCircuit c;
    explicit GadgetBuilder(int inputs) { c.num_inputs = inputs; }

    int emit(char op, int a, int b = -1) {
        c.gates.push_back({op, a, b});
        return c.num_inputs + static_cast<int>(c.gates.size()) - 1;
    }
    int neg(int x) { return emit('N', x); }
    int and_(int x, int y) {
        if (x < 0 || y < 0) return -1;
        return emit('A', x, y);
    }
    int or_(int x, int y) {
        if (x < 0) return y;
        if (y < 0) return x;
        return emit('O', x, y);
    }
    int xor_(int x, int y) {
        if (x < 0) return y;
        if (y < 0) return x;
        int o = emit('O', x, y);
        int a = emit('A', x, y);
        int na = emit('N', a);
        return emit('A', o, na);
    }
    // carry of a full adder; any argument may be absent
    int majority(int x, int y, int z) {
        int xy = and_(x, y);
        int xz = and_(x, z);
        int yz = and_(y, z);
        return or_(or_(xy, xz), yz);
    }
};

// Ripple addition of two little-endian bit vectors whose values are bounded
// by max_a and max_b; the result is trimmed to bit_length(max_a + max_b).
inline std::vector<int> ripple_add(GadgetBuilder& gb, const std::vector<int>& a,
                                   const std::vector<int>& b, std::uint64_t max_a,
                                   std::uint64_t max_b) {
    std::uint64_t max_sum = max_a + max_b;
    int width = max_sum == 0 ? 0 : 64 - __builtin_clzll(max_sum);
    std::vector<int> out;
    int carry = -1;
    for (int i = 0; i < width; ++i) {
        int ai = i < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(i)] : -1;
        int bi = i < static_cast<int>(b.size()) ? b[static_cast<std::size_t>(i)] : -1;
        int sum = gb.xor_(gb.xor_(ai, bi), carry);
        int cnext = gb.majority(ai, bi, carry);
        out.push_back(sum);
        carry = cnext;
    }
    // the final carry is already inside `width` because max_sum bounds the value
    return out;
}

}  // namespace detail

/// Adder for `count` integers of the given bit widths, combined pairwise in a
/// balanced tree of ripple adders. Inputs are concatenated little-endian; the
/// output is the little-endian sum, trimmed to the bits the maximum sum needs.
inline GadgetCircuit build_adder_mixed(const std::vector<int>& widths) {
    int total_in = 0;
    for (int w : widths) {
        require(w >= 1, "build_adder_mixed: width must be positive");
        total_in += w;
    }
    detail::GadgetBuilder gb(total_in);
    std::vector<std::pair<std::vector<int>, std::uint64_t>> numbers;  // bits, max value
    int at = 0;
    for (int w : widths) {
        std::vector<int> bits;
        for (int i = 0; i < w; ++i) bits.push_back(at + i);
        at += w;
        numbers.push_back({bits, (w >= 64 ? ~0ULL : (1ULL << w) - 1)});
    }
    while (numbers.size() > 1) {
        std::vector<std::pair<std::vector<int>, std::uint64_t>> next;
        for (std::size_t i = 0; i + 1 < numbers.size(); i += 2) {
            auto sum = detail::ripple_add(gb, numbers[i].first, numbers[i + 1].first,
                                          numbers[i].second, numbers[i + 1].second);
            next.push_back({std::move(sum), numbers[i].second + numbers[i + 1].second});
        }
        if (numbers.size() % 2 == 1) next.push_back(std::move(numbers.back()));
        numbers = std::move(next);
    }
    gb.c.outputs = numbers.empty() ? std::vector<int>{} : numbers[0].first;
    return gb.c;
}

/// Adder summing `count` b-bit integers with at most 40*b*count gates;
/// outputs b + ceil(log2 count) little-endian sum bits (count == 1 wires the
/// inputs straight through).
inline GadgetCircuit build_adder(int b, int count) {
    require(b >= 1 && count >= 1, "build_adder: parameters must be positive");
    auto c = build_adder_mixed(std::vector<int>(static_cast<std::size_t>(count), b));
    int want = b + ceil_log2_u64(static_cast<std::uint64_t>(count));
    check_bound(static_cast<int>(c.outputs.size()) <= want,
                "build_adder: more output bits than the sum needs");
    while (static_cast<int>(c.outputs.size()) < want) {
        // pad the interface with a constant-zero bit (x0 AND NOT x0)
        c.gates.push_back({'N', 0, -1});
        int neg_id = c.num_inputs + static_cast<int>(c.gates.size()) - 1;
        c.gates.push_back({'A', 0, neg_id});
        c.outputs.push_back(neg_id + 1);
    }
    check_bound(c.gate_count() <= 40 * b * count, "build_adder: gate budget 40*b*l exceeded");
    return c;
}

/// Comparator deciding sum_i x_i 2^i >= theta over {NEG, AND, OR} with
/// fan-in 2 and at most 2r gates. theta == 0 is constant true; theta >= 2^r
/// is constant false.
inline GadgetCircuit build_binth(int r, std::uint64_t theta) {
    require(r >= 1, "build_binth: needs at least one input bit");
    detail::GadgetBuilder gb(r);
    auto const_true = [&]() { return gb.or_(0, gb.neg(0)); };
    auto const_false = [&]() { return gb.and_(0, gb.neg(0)); };
    // bits is a prefix x_0..x_{len-1} of the inputs
    auto rec = [&](auto&& self, int len, std::uint64_t th) -> int {
        if (th == 0) return const_true();
        if (len <= 0 || (len < 64 && th > (1ULL << len) - 1)) return const_false();
        if (th == 1) {
            int acc = 0;
            for (int i = 1; i < len; ++i) acc = gb.or_(acc, i);
            return acc;
        }
        int t = ceil_log2_u64(th);  // smallest t with 2^t >= th; th >= 2 so t >= 1
        int hi = -1;
        for (int i = t; i < len; ++i) hi = gb.or_(hi, i);
        std::uint64_t rest = th - (1ULL << (t - 1));
        int branch;
        if (rest == 0) {
            branch = t - 1;  // the bit alone decides
        } else if (t - 1 == 0 || rest > (1ULL << (t - 1)) - 1) {
            branch = -1;  // low bits cannot reach the remainder
        } else {
            branch = gb.and_(t - 1, self(self, t - 1, rest));
        }
        int out = gb.or_(hi, branch);
        if (out < 0) out = const_false();
        return out;
    };
    int out = rec(rec, r, theta);
    gb.c.outputs = {out};
    check_bound(gb.c.gate_count() <= 2 * r, "build_binth: gate budget 2r exceeded");
    return gb.c;
}

// ---------------------------------------------------------------------------
// Normalized circuits used by the compilers

namespace detail {

struct CNode {
    GateKind kind = GateKind::Input;  // Input, Neg or Th after normalization
    int theta = 0;
    std::vector<int> ins;  // node indices; wire multiplicity preserved
    bool folded = false;
    bool fold_val = false;
    int orig_id = -1;  // netlist id; gadget nodes get fresh ids
};

struct CompilerCircuit {
    int num_inputs = 0;
    std::vector<CNode> nodes;  // inputs first, then gates
    int output = -1;           // node index
    int next_id = 0;

    int wire_count() const {
        int w = 0;
        for (const auto& n : nodes) w += static_cast<int>(n.ins.size());
        return w;
    }

    std::vector<int> topo() const {
        std::vector<int> remaining(nodes.size(), 0), order;
        std::vector<std::vector<int>> fanout(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            remaining[i] = static_cast<int>(nodes[i].ins.size());
            for (int in : nodes[i].ins) fanout[static_cast<std::size_t>(in)].push_back(static_cast<int>(i));
        }
        std::vector<int> stack;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (remaining[i] == 0) stack.push_back(static_cast<int>(i));
        std::sort(stack.begin(), stack.end());
        std::size_t head = 0;
        while (head < stack.size()) {
            int x = stack[head++];
            order.push_back(x);
            for (int y : fanout[static_cast<std::size_t>(x)])
                if (--remaining[static_cast<std::size_t>(y)] == 0) stack.push_back(y);
        }
        check_bound(order.size() == nodes.size(), "compiler circuit contains a cycle");
        return order;
    }

    std::vector<int> depths() const {
        std::vector<int> d(nodes.size(), 0);
        for (int x : topo())
            for (int in : nodes[static_cast<std::size_t>(x)].ins)
                d[static_cast<std::size_t>(x)] =
                    std::max(d[static_cast<std::size_t>(x)], d[static_cast<std::size_t>(in)] + 1);
        return d;
    }

    int depth() const {
        int m = 0;
        for (int x : depths()) m = std::max(m, x);
        return m;
    }
};

/// Inputs first (declaration order: their position is the assignment bit),
/// then the remaining gates in topological order; AND and OR become TH.
inline CompilerCircuit normalize(const ThresholdCircuit& tc) {
    CompilerCircuit cc;
    cc.num_inputs = tc.num_inputs;
    std::vector<int> node_of(tc.gates.size(), -1);
    int max_id = -1;
    for (int gi : tc.input_gate_indices()) {
        node_of[static_cast<std::size_t>(gi)] = static_cast<int>(cc.nodes.size());
        CNode n;
        n.kind = GateKind::Input;
        n.orig_id = tc.gates[static_cast<std::size_t>(gi)].id;
        cc.nodes.push_back(std::move(n));
    }
    for (int gi : tc.topo_order()) {
        const Gate& g = tc.gates[static_cast<std::size_t>(gi)];
        max_id = std::max(max_id, g.id);
        if (g.kind == GateKind::Input) continue;
        CNode n;
        n.orig_id = g.id;
        int fan = static_cast<int>(g.inputs.size());
        switch (g.kind) {
            case GateKind::Neg: n.kind = GateKind::Neg; break;
            case GateKind::And: n.kind = GateKind::Th, n.theta = fan; break;
            case GateKind::Or: n.kind = GateKind::Th, n.theta = 1; break;
            case GateKind::Th: n.kind = GateKind::Th, n.theta = g.theta; break;
            case GateKind::Input: break;
        }
        for (int in_id : g.inputs)
            n.ins.push_back(node_of[static_cast<std::size_t>(tc.index_of(in_id))]);
        node_of[static_cast<std::size_t>(gi)] = static_cast<int>(cc.nodes.size());
        cc.nodes.push_back(std::move(n));
    }
    cc.output = node_of[static_cast<std::size_t>(tc.index_of(tc.output))];
    cc.next_id = max_id + 1;
    return cc;
}

/// Propagates constants bottom-up: folded children leave a threshold
/// decrement behind; thresholds at or below zero become true, thresholds
/// above the live fan-in become false.
inline void fold_constants(CompilerCircuit& cc) {
    for (int ni : cc.topo()) {
        CNode& nd = cc.nodes[static_cast<std::size_t>(ni)];
        if (nd.kind == GateKind::Input || nd.folded) continue;
        if (nd.kind == GateKind::Neg) {
            check_bound(!nd.ins.empty(), "fold: NEG lost its input without a guessed value");
            const CNode& ch = cc.nodes[static_cast<std::size_t>(nd.ins[0])];
            if (ch.folded) {
                nd.folded = true;
                nd.fold_val = !ch.fold_val;
                nd.ins.clear();
            }
            continue;
        }
        std::vector<int> live;
        for (int in : nd.ins) {
            const CNode& ch = cc.nodes[static_cast<std::size_t>(in)];
            if (ch.folded)
                nd.theta -= ch.fold_val ? 1 : 0;
            else
                live.push_back(in);
        }
        nd.ins = std::move(live);
        if (nd.theta <= 0) {
            nd.folded = true;
            nd.fold_val = true;
            nd.ins.clear();
        } else if (nd.theta > static_cast<int>(nd.ins.size())) {
            nd.folded = true;
            nd.fold_val = false;
            nd.ins.clear();
        }
    }
}

/// Appends a fan-in-2 gadget to the circuit, wiring its inputs to the given
/// nodes. Returns the node indices of the gadget outputs and collects every
/// created node into `created`.
inline std::vector<int> instantiate_gadget(CompilerCircuit& cc, const GadgetCircuit& g,
                                           const std::vector<int>& input_nodes,
                                           std::vector<int>& created) {
    require(static_cast<int>(input_nodes.size()) == g.num_inputs,
            "instantiate_gadget: input arity mismatch");
    std::vector<int> node_of(static_cast<std::size_t>(g.num_inputs) + g.gates.size(), -1);
    for (int i = 0; i < g.num_inputs; ++i)
        node_of[static_cast<std::size_t>(i)] = input_nodes[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < g.gates.size(); ++j) {
        const auto& gg = g.gates[j];
        CNode n;
        n.orig_id = cc.next_id++;
        if (gg.op == 'N') {
            n.kind = GateKind::Neg;
            n.ins = {node_of[static_cast<std::size_t>(gg.a)]};
        } else {
            n.kind = GateKind::Th;
            n.theta = gg.op == 'A' ? 2 : 1;
            n.ins = {node_of[static_cast<std::size_t>(gg.a)], node_of[static_cast<std::size_t>(gg.b)]};
        }
        int idx = static_cast<int>(cc.nodes.size());
        cc.nodes.push_back(std::move(n));
        node_of[static_cast<std::size_t>(g.num_inputs) + j] = idx;
        created.push_back(idx);
    }
    std::vector<int> outs;
    for (int o : g.outputs) outs.push_back(node_of[static_cast<std::size_t>(o)]);
    return outs;
}

// The cone of v up to the cut set: `internal` holds v and everything passed
// through; `leaves` the distinct inputs and cut-set members it depends on.
struct CutCone {
    std::vector<int> leaves;
    std::vector<int> internal;
};

inline CutCone cut_cone(const CompilerCircuit& cc, const std::set<int>& a, int v) {
    CutCone cone;
    std::set<int> seen{v};
    std::set<int> leaves;
    std::vector<int> stack{v};
    cone.internal.push_back(v);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int in : cc.nodes[static_cast<std::size_t>(x)].ins) {
            const CNode& ch = cc.nodes[static_cast<std::size_t>(in)];
            if (ch.folded) continue;  // constant, not a dependency
            if (ch.kind == GateKind::Input || a.count(in)) {
                leaves.insert(in);
                continue;
            }
            if (seen.insert(in).second) {
                cone.internal.push_back(in);
                stack.push_back(in);
            }
        }
    }
    cone.leaves.assign(leaves.begin(), leaves.end());
    return cone;
}

/// Evaluates node v when the cone leaves carry the bits of `mask` (in
/// cone.leaves order); folded nodes contribute their constants.
inline bool eval_cone(const CompilerCircuit& cc, const CutCone& cone, int v, std::uint32_t mask) {
    std::map<int, bool> val;
    for (std::size_t i = 0; i < cone.leaves.size(); ++i)
        val[cone.leaves[i]] = ((mask >> i) & 1) != 0;
    auto rec = [&](auto&& self, int x) -> bool {
        auto it = val.find(x);
        if (it != val.end()) return it->second;
        const CNode& nd = cc.nodes[static_cast<std::size_t>(x)];
        bool r = false;
        if (nd.folded) {
            r = nd.fold_val;
        } else if (nd.kind == GateKind::Neg) {
            r = !self(self, nd.ins[0]);
        } else {
            int ones = 0;
            for (int in : nd.ins) ones += self(self, in) ? 1 : 0;
            r = ones >= nd.theta;
        }
        val[x] = r;
        return r;
    };
    return rec(rec, v);
}

struct CoreCnf {
    CnfFormula cnf;
    int width = 0;
};

/// Compiles "y_v equals the value of v's cone" for every v in the cut set,
/// as truth tables over the cone leaves. Variables: inputs take 1..n in
/// declaration order, cut members take n+1.. in node order.
inline CoreCnf compile_with_cut(const CompilerCircuit& cc, const std::set<int>& a, int width_cap,
                                const std::vector<std::pair<int, bool>>& pinned_units,
                                bool output_unit) {
    CoreCnf out;
    std::vector<int> x_var(static_cast<std::size_t>(cc.num_inputs), 0);
    std::map<int, int> y_var;
    int next_var = 0;
    std::vector<std::string> names;
    for (int i = 0; i < cc.num_inputs; ++i) {
        x_var[static_cast<std::size_t>(i)] = ++next_var;
        names.push_back("x" + std::to_string(cc.nodes[static_cast<std::size_t>(i)].orig_id));
    }
    for (int v : a) {
        y_var[v] = ++next_var;
        names.push_back("y" + std::to_string(cc.nodes[static_cast<std::size_t>(v)].orig_id));
    }
    auto leaf_var = [&](int node) {
        return cc.nodes[static_cast<std::size_t>(node)].kind == GateKind::Input &&
                       !y_var.count(node)
                   ? x_var[static_cast<std::size_t>(node)]
                   : y_var.at(node);
    };
    out.cnf.num_vars = next_var;
    out.cnf.var_names = std::move(names);

    if (output_unit) {
        check_bound(a.count(cc.output) == 1, "compile: output gate missing from the cut set");
        out.cnf.clauses.push_back({y_var.at(cc.output)});
        out.width = 1;
    }
    for (int v : a) {
        int yv = y_var.at(v);
        const CNode& nd = cc.nodes[static_cast<std::size_t>(v)];
        if (nd.kind == GateKind::Input) {
            // the cut variable mirrors the input variable
            int xv = x_var[static_cast<std::size_t>(v)];
            out.cnf.clauses.push_back({yv, -xv});
            out.cnf.clauses.push_back({-yv, xv});
            out.width = std::max(out.width, 2);
            continue;
        }
        if (nd.folded) {
            out.cnf.clauses.push_back({nd.fold_val ? yv : -yv});
            out.width = std::max(out.width, 1);
            continue;
        }
        CutCone cone = cut_cone(cc, a, v);
        int nl = static_cast<int>(cone.leaves.size());
        require(nl + 1 <= width_cap, "constraint width cap exceeded: cone of gate " +
                                         std::to_string(nd.orig_id) + " needs " +
                                         std::to_string(nl + 1));
        require(nl <= 22, "constraint truth table too large to enumerate");
        for (std::uint32_t mask = 0; mask < (1u << nl); ++mask) {
            bool b = eval_cone(cc, cone, v, mask);
            std::vector<int> clause;
            for (int i = 0; i < nl; ++i) {
                int lv = leaf_var(cone.leaves[static_cast<std::size_t>(i)]);
                clause.push_back(((mask >> i) & 1) ? -lv : lv);
            }
            clause.push_back(b ? yv : -yv);
            out.width = std::max(out.width, static_cast<int>(clause.size()));
            out.cnf.clauses.push_back(std::move(clause));
        }
    }
    for (auto [node, val] : pinned_units) {
        int yv = y_var.at(node);
        out.cnf.clauses.push_back({val ? yv : -yv});
        out.width = std::max(out.width, 1);
    }
    return out;
}

// Validates formula shape: fan-in <= 2 over {NEG, AND, OR}, and every
// non-input gate feeds exactly one wire (except the output, which feeds none).
inline void require_formula(const ThresholdCircuit& tc) {
    std::map<int, int> outdeg;
    for (const auto& g : tc.gates) {
        if (g.kind == GateKind::Th)
            throw ParseError("formula may not contain TH gates");
        if (g.inputs.size() > 2) throw ParseError("formula gate with fan-in above two");
        for (int in : g.inputs) outdeg[in]++;
    }
    for (const auto& g : tc.gates) {
        if (g.kind == GateKind::Input) continue;
        int od = outdeg.count(g.id) ? outdeg.at(g.id) : 0;
        if (g.id == tc.output ? od != 0 : od != 1)
            throw ParseError("formula gates must form a tree");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tree decomposition for formulas

struct Decomposition {
    std::vector<int> a_gate_ids;  // netlist ids of the cut set
    int block_param = 0;          // the size parameter the cut was built for
    struct Component {
        int size = 0;
        int boundary = 0;  // distinct cut-set neighbors
    };
    std::vector<Component> components;
};

namespace detail {

// Greedy bottom-up splitting over the gate tree: repeatedly cut the deepest
// node whose live subtree reaches ell/2 nodes *or* has two cut subtrees
// hanging below it. The second trigger is what keeps every component's
// cut-set boundary at three or less; without it, pieces near the top could
// accumulate arbitrarily many severed children.
inline std::set<int> tree_cut_nodes(const CompilerCircuit& cc, int ell) {
    std::set<int> a;
    int nn = static_cast<int>(cc.nodes.size());
    std::vector<int> parent(static_cast<std::size_t>(nn), -1);
    std::vector<std::vector<int>> children(static_cast<std::size_t>(nn));
    for (int x = cc.num_inputs; x < nn; ++x)
        for (int in : cc.nodes[static_cast<std::size_t>(x)].ins)
            if (in >= cc.num_inputs) {
                parent[static_cast<std::size_t>(in)] = x;
                children[static_cast<std::size_t>(x)].push_back(in);
            }
    std::vector<char> alive(static_cast<std::size_t>(nn), 0);
    for (int x = cc.num_inputs; x < nn; ++x) alive[static_cast<std::size_t>(x)] = 1;
    std::vector<int> hang(static_cast<std::size_t>(nn), 0);
    auto topo = cc.topo();

    for (;;) {
        std::vector<int> size(static_cast<std::size_t>(nn), 0), hangsum(static_cast<std::size_t>(nn), 0);
        for (int x : topo) {
            if (x < cc.num_inputs || !alive[static_cast<std::size_t>(x)]) continue;
            size[static_cast<std::size_t>(x)] = 1;
            hangsum[static_cast<std::size_t>(x)] = hang[static_cast<std::size_t>(x)];
            for (int ch : children[static_cast<std::size_t>(x)])
                if (alive[static_cast<std::size_t>(ch)]) {
                    size[static_cast<std::size_t>(x)] += size[static_cast<std::size_t>(ch)];
                    hangsum[static_cast<std::size_t>(x)] += hangsum[static_cast<std::size_t>(ch)];
                }
        }
        std::vector<int> depth(static_cast<std::size_t>(nn), 0);
        for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
            int x = *it;
            if (x < cc.num_inputs || !alive[static_cast<std::size_t>(x)]) continue;
            int p = parent[static_cast<std::size_t>(x)];
            depth[static_cast<std::size_t>(x)] =
                (p >= 0 && alive[static_cast<std::size_t>(p)]) ? depth[static_cast<std::size_t>(p)] + 1 : 0;
        }
        int pick = -1;
        for (int x = cc.num_inputs; x < nn; ++x) {
            if (!alive[static_cast<std::size_t>(x)]) continue;
            bool trigger = 2 * size[static_cast<std::size_t>(x)] >= ell ||
                           hangsum[static_cast<std::size_t>(x)] >= 2;
            if (!trigger) continue;
            if (pick == -1 || depth[static_cast<std::size_t>(x)] > depth[static_cast<std::size_t>(pick)] ||
                (depth[static_cast<std::size_t>(x)] == depth[static_cast<std::size_t>(pick)] && x < pick))
                pick = x;
        }
        if (pick == -1) break;
        a.insert(pick);
        // remove the whole live subtree of pick
        std::vector<int> stack{pick};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (!alive[static_cast<std::size_t>(x)]) continue;
            alive[static_cast<std::size_t>(x)] = 0;
            for (int ch : children[static_cast<std::size_t>(x)]) stack.push_back(ch);
        }
        int p = parent[static_cast<std::size_t>(pick)];
        if (p >= 0 && alive[static_cast<std::size_t>(p)]) hang[static_cast<std::size_t>(p)] += 1;
    }
    return a;
}

// Independent post-scan of the three decomposition guarantees.
inline std::vector<Decomposition::Component> scan_components(const CompilerCircuit& cc,
                                                             const std::set<int>& a, int ell,
                                                             int m) {
    int nn = static_cast<int>(cc.nodes.size());
    std::vector<int> comp(static_cast<std::size_t>(nn), -1);
    std::vector<Decomposition::Component> comps;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nn));
    for (int x = cc.num_inputs; x < nn; ++x)
        for (int in : cc.nodes[static_cast<std::size_t>(x)].ins)
            if (in >= cc.num_inputs) {
                adj[static_cast<std::size_t>(x)].push_back(in);
                adj[static_cast<std::size_t>(in)].push_back(x);
            }
    for (int x = cc.num_inputs; x < nn; ++x) {
        if (comp[static_cast<std::size_t>(x)] != -1 || a.count(x)) continue;
        int id = static_cast<int>(comps.size());
        comps.push_back({});
        std::set<int> boundary;
        std::vector<int> stack{x};
        comp[static_cast<std::size_t>(x)] = id;
        while (!stack.empty()) {
            int y = stack.back();
            stack.pop_back();
            comps[static_cast<std::size_t>(id)].size += 1;
            for (int z : adj[static_cast<std::size_t>(y)]) {
                if (a.count(z)) {
                    boundary.insert(z);
                    continue;
                }
                if (comp[static_cast<std::size_t>(z)] == -1) {
                    comp[static_cast<std::size_t>(z)] = id;
                    stack.push_back(z);
                }
            }
        }
        comps[static_cast<std::size_t>(id)].boundary = static_cast<int>(boundary.size());
    }
    for (const auto& c : comps) {
        check_bound(c.size <= ell, "decomposition: component larger than the block parameter");
        check_bound(c.boundary <= 3, "decomposition: component touches more than three cut nodes");
    }
    check_bound(static_cast<long>(a.size()) * ell <= 6L * m,
                "decomposition: cut set exceeds 6m/l");
    return comps;
}

}  // namespace detail

/// Cut set for the gate tree of a formula: at most 6m/l nodes whose removal
/// leaves components of at most l gates, each adjacent to at most three cut
/// nodes. The three guarantees are re-verified by a direct scan on every
/// call; the greedy construction is replaceable, the scan is the contract.
inline Decomposition decompose_tree(const ThresholdCircuit& formula, int ell) {
    require(ell >= 1, "decompose_tree: block parameter must be positive");
    detail::require_formula(formula);
    auto cc = detail::normalize(formula);
    int m = static_cast<int>(cc.nodes.size()) - cc.num_inputs;
    auto a = detail::tree_cut_nodes(cc, ell);
    Decomposition d;
    d.block_param = ell;
    for (int x : a) d.a_gate_ids.push_back(cc.nodes[static_cast<std::size_t>(x)].orig_id);
    d.components = detail::scan_components(cc, a, ell, m);
    return d;
}

// ---------------------------------------------------------------------------
// Subcircuit extraction

struct Subcircuit {
    ThresholdCircuit circuit;       // cut gates re-typed as inputs; v is the output
    std::vector<int> input_origin;  // original gate id per subcircuit input, declaration order
};

/// Induced subcircuit on the gates from which v is reachable without passing
/// through the cut set: cut gates and original inputs become the inputs.
inline Subcircuit extract_subcircuit(const ThresholdCircuit& c, const std::set<int>& a_ids,
                                     int v_id) {
    int vi = c.index_of(v_id);
    std::set<int> reach{vi};
    std::vector<int> stack{vi};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        const Gate& g = c.gates[static_cast<std::size_t>(x)];
        if (x != vi && (a_ids.count(g.id) || g.kind == GateKind::Input)) continue;
        for (int in_id : g.inputs) {
            int ii = c.index_of(in_id);
            if (reach.insert(ii).second) stack.push_back(ii);
        }
    }
    Subcircuit sub;
    // inputs first (ascending id), then internal gates in original order
    std::vector<int> leaf_ids, internal_idx;
    for (int gi : c.topo_order()) {
        if (!reach.count(gi)) continue;
        const Gate& g = c.gates[static_cast<std::size_t>(gi)];
        bool leaf = gi != vi && (a_ids.count(g.id) || g.kind == GateKind::Input);
        if (g.kind == GateKind::Input && gi == vi) leaf = true;  // a bare input cone
        if (leaf)
            leaf_ids.push_back(g.id);
        else
            internal_idx.push_back(gi);
    }
    std::sort(leaf_ids.begin(), leaf_ids.end());
    for (int id : leaf_ids) {
        sub.circuit.gates.push_back({id, GateKind::Input, 0, {}});
        sub.input_origin.push_back(id);
    }
    sub.circuit.num_inputs = static_cast<int>(leaf_ids.size());
    for (int gi : internal_idx) sub.circuit.gates.push_back(c.gates[static_cast<std::size_t>(gi)]);
    sub.circuit.output = v_id;
    sub.circuit.finalize();
    return sub;
}

/// Truth-table clauses expressing "variable L+1 equals the subcircuit value",
/// over variables 1..L for the subcircuit inputs (declaration order) and
/// L+1 for the output indicator. Errors out when L+1 exceeds the width cap.
inline std::vector<std::vector<int>> constraint_to_cnf(const Subcircuit& sub,
                                                       int width_cap = 64) {
    int nl = sub.circuit.num_inputs;
    require(nl + 1 <= width_cap, "constraint width cap exceeded");
    require(nl <= 22, "constraint truth table too large to enumerate");
    std::vector<std::vector<int>> clauses;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(nl), 0);
    for (std::uint32_t mask = 0; mask < (1u << nl); ++mask) {
        for (int i = 0; i < nl; ++i) bits[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        bool b = eval_circuit(sub.circuit, bits).output;
        std::vector<int> clause;
        for (int i = 0; i < nl; ++i) clause.push_back(((mask >> i) & 1) ? -(i + 1) : (i + 1));
        clause.push_back(b ? (nl + 1) : -(nl + 1));
        clauses.push_back(std::move(clause));
    }
    return clauses;
}

// ---------------------------------------------------------------------------
// Formula compiler

struct CompileReport {
    double eps = 0;
    int k = 0;     // clause-width budget
    int beta = 0;  // block parameter of the threshold replacement (tc path)
    int depth = 0;
    double c = 0;  // gates (or wires) per input
    std::size_t a_size = 0;
    int width = 0;
    std::size_t variables = 0;
    std::size_t clause_count = 0;
    std::size_t gadget_gates = 0;
    bool beta_overridden = false;
    bool budget_asserted = false;  // the eps-driven budgets were enforced
};

struct CompileResult {
    CnfFormula cnf;
    CompileReport report;
};

/// Formula satisfiability to k-CNF with at most (1+eps)n + 1 variables:
/// cut the gate tree with block parameter l = ceil(k/4) for k = ceil(24c/eps),
/// then express each cut gate's cone as a truth table over its at most 2l+1
/// variables, conjoined with the unit clause forcing the output true.
inline CompileResult formula_to_kcnf(const ThresholdCircuit& formula, double eps) {
    require(eps > 0, "formula_to_kcnf: eps must be positive");
    detail::require_formula(formula);
    auto cc = detail::normalize(formula);
    int n = cc.num_inputs;
    require(n >= 1, "formula_to_kcnf: formula has no inputs");
    int m = static_cast<int>(cc.nodes.size()) - n;
    double c = static_cast<double>(m) / n;
    int k = std::max(3, static_cast<int>(std::ceil(24.0 * c / eps)));
    int ell = std::max(1, (k + 3) / 4);

    auto a_nodes = detail::tree_cut_nodes(cc, ell);
    (void)detail::scan_components(cc, a_nodes, ell, m);  // re-verify the cut guarantees
    std::size_t cut_size = a_nodes.size();
    a_nodes.insert(cc.output);
    auto core = detail::compile_with_cut(cc, a_nodes, k, {}, true);

    CompileResult res;
    res.cnf = std::move(core.cnf);
    res.report.eps = eps;
    res.report.k = k;
    res.report.depth = cc.depth();
    res.report.c = c;
    res.report.a_size = a_nodes.size();
    res.report.width = core.width;
    res.report.variables = static_cast<std::size_t>(res.cnf.num_vars);
    res.report.clause_count = res.cnf.clauses.size();
    res.report.budget_asserted = true;
    check_bound(core.width <= 2 * ell + 1, "formula compiler: width exceeds 2l+1");
    check_bound(core.width <= k, "formula compiler: width exceeds k");
    check_bound(static_cast<double>(cut_size) <= eps * n + 1e-9,
                "formula compiler: cut set exceeds eps * n");
    check_bound(static_cast<double>(res.cnf.num_vars) <= (1.0 + eps) * n + 1 + 1e-9,
                "formula compiler: variable budget exceeded");
    return res;
}

// ---------------------------------------------------------------------------
// Threshold-circuit compiler

namespace detail {

struct TcPrepared {
    CompilerCircuit cc;
    std::set<int> a;
    std::size_t gadget_gates = 0;
};

// Replaces every threshold gate of fan-in >= beta: children are split into
// blocks of size <= beta, a popcount adder per block, one adder over the
// block counts and a binary comparator; the comparator output replaces the
// gate. Everything except the block-adder internals joins the cut set.
inline TcPrepared replace_large_gates(CompilerCircuit cc, int beta) {
    TcPrepared prep;
    std::set<int>& a = prep.a;
    int original_nodes = static_cast<int>(cc.nodes.size());
    for (int vi = 0; vi < original_nodes; ++vi) {
        if (cc.nodes[static_cast<std::size_t>(vi)].kind != GateKind::Th) continue;
        if (cc.nodes[static_cast<std::size_t>(vi)].folded) continue;
        int fanin = static_cast<int>(cc.nodes[static_cast<std::size_t>(vi)].ins.size());
        if (fanin < beta) continue;
        std::vector<int> ins = cc.nodes[static_cast<std::size_t>(vi)].ins;
        int theta = cc.nodes[static_cast<std::size_t>(vi)].theta;
        int blocks = (fanin + beta - 1) / beta;
        int b = ceil_log2_u64(static_cast<std::uint64_t>(beta)) + 1;  // bits per block count

        std::vector<int> count_bits;  // concatenated block-count outputs
        std::vector<int> count_widths;
        std::vector<int> a_extra;  // block-count output nodes
        for (int bi = 0; bi < blocks; ++bi) {
            std::vector<int> block(ins.begin() + bi * beta,
                                   ins.begin() + std::min<std::size_t>(ins.size(),
                                                                       static_cast<std::size_t>(bi + 1) * beta));
            std::vector<int> created;
            auto bits = instantiate_gadget(
                cc, build_adder_mixed(std::vector<int>(block.size(), 1)), block, created);
            prep.gadget_gates += created.size();
            for (int nb : bits) {
                count_bits.push_back(nb);
                if (cc.nodes[static_cast<std::size_t>(nb)].kind != GateKind::Input)
                    a_extra.push_back(nb);
            }
            count_widths.push_back(static_cast<int>(bits.size()));
        }
        std::vector<int> created_c2d;
        auto sum_bits = instantiate_gadget(cc, build_adder_mixed(count_widths), count_bits,
                                           created_c2d);
        auto binth = build_binth(static_cast<int>(sum_bits.size()),
                                 static_cast<std::uint64_t>(theta));
        auto out = instantiate_gadget(cc, binth, sum_bits, created_c2d);
        prep.gadget_gates += created_c2d.size();
        check_bound(static_cast<int>(created_c2d.size()) <= 44 * b * blocks,
                    "threshold replacement: combiner budget 44*b*l exceeded");
        // the gate itself becomes a single-wire alias of the comparator output
        cc.nodes[static_cast<std::size_t>(vi)].kind = GateKind::Th;
        cc.nodes[static_cast<std::size_t>(vi)].theta = 1;
        cc.nodes[static_cast<std::size_t>(vi)].ins = {out[0]};

        std::size_t added_before = a.size();
        for (int x : created_c2d) a.insert(x);
        for (int x : a_extra) a.insert(x);
        a.insert(vi);
        check_bound(a.size() - added_before <= static_cast<std::size_t>(50 * b * blocks),
                    "threshold replacement: cut additions exceed 50*b*l");
    }
    prep.cc = std::move(cc);
    return prep;
}

inline int auto_beta(double c, double eps) {
    int beta = 2;
    while (100.0 * c * (std::log2(static_cast<double>(beta)) + 1.0) / beta > eps) {
        ++beta;
        require(beta <= 1 << 24, "beta selection ran away");
    }
    double closed_form = 2000.0 * (c / eps) * std::log2(2.0 * c / eps);
    if (eps <= 1.0 && c >= 1.0)
        check_bound(static_cast<double>(beta) <= std::ceil(closed_form) + 1e-9,
                    "beta exceeds the closed-form bound");
    return beta;
}

inline CompileResult tc_compile_core(CompilerCircuit cc, int orig_inputs, int orig_wires,
                                     double eps, std::optional<int> beta_override,
                                     const std::vector<std::pair<int, bool>>& pins,
                                     bool output_unit) {
    int n = orig_inputs;
    double c = std::max(1.0, static_cast<double>(orig_wires) / std::max(1, n));
    int depth = cc.depth();
    int beta = beta_override ? *beta_override : auto_beta(c, eps);
    require(beta >= 2, "tc compiler: beta must be at least 2");

    auto prep = replace_large_gates(std::move(cc), beta);
    for (auto [node, val] : pins) {
        (void)val;
        prep.a.insert(node);
    }
    if (output_unit) prep.a.insert(prep.cc.output);

    // Width budget beta^depth, kept within integer range. On depth-1
    // circuits a replaced gate's block-count cone spans up to beta original
    // inputs, so those clauses need beta+1 variables; beta^depth only
    // dominates from depth 2, hence the floor.
    std::int64_t width_cap = 1;
    for (int i = 0; i < depth && width_cap <= (1 << 26); ++i) width_cap *= beta;
    width_cap = std::min<std::int64_t>(width_cap, 1 << 26);
    width_cap = std::max<std::int64_t>(width_cap, beta + 1);

    auto core = compile_with_cut(prep.cc, prep.a, static_cast<int>(width_cap), pins, output_unit);

    CompileResult res;
    res.cnf = std::move(core.cnf);
    res.report.eps = eps;
    res.report.beta = beta;
    res.report.k = static_cast<int>(width_cap);
    res.report.depth = depth;
    res.report.c = c;
    res.report.a_size = prep.a.size();
    res.report.width = core.width;
    res.report.variables = static_cast<std::size_t>(res.cnf.num_vars);
    res.report.clause_count = res.cnf.clauses.size();
    res.report.gadget_gates = prep.gadget_gates;
    res.report.beta_overridden = beta_override.has_value();
    check_bound(core.width <= width_cap, "tc compiler: width exceeds beta^depth");
    if (!beta_override) {
        res.report.budget_asserted = true;
        check_bound(static_cast<double>(prep.a.size()) <= eps * n + 1 + pins.size() + 1e-9,
                    "tc compiler: cut set exceeds eps * n");
        check_bound(static_cast<double>(res.cnf.num_vars) <= (1.0 + eps) * n + 1 + pins.size() + 1e-9,
                    "tc compiler: variable budget exceeded");
    }
    return res;
}

}  // namespace detail

/// Threshold-circuit satisfiability to k-CNF: gates of fan-in >= beta are
/// replaced by popcount adders and a binary comparator, the comparator and
/// count gates join the cut set, and every cut gate's cone is compiled as a
/// truth table. Width stays within beta^depth; with beta derived from eps
/// (no override) the cut set stays within eps*n and the variable count
/// within (1+eps)n + 1.
inline CompileResult tc_to_kcnf(const ThresholdCircuit& tc, double eps,
                                std::optional<int> beta_override = {}) {
    require(eps > 0, "tc_to_kcnf: eps must be positive");
    auto cc = detail::normalize(tc);
    return detail::tc_compile_core(std::move(cc), tc.num_inputs, tc.wire_count(), eps,
                                   beta_override, {}, true);
}

// ---------------------------------------------------------------------------
// Depth reduction by wire removal

struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

struct ValiantResult {
    std::vector<std::size_t> removed;  // indices into the edge list
    int delta = 0;
    int r = 0;
    int residual_depth = 0;
    std::uint64_t removal_cap = 0;  // ceil(r*m/delta)
};

namespace detail {

inline std::vector<int> dag_depths(const Digraph& g, const std::vector<char>& edge_alive) {
    std::vector<int> indeg(static_cast<std::size_t>(g.n), 0);
    std::vector<std::vector<std::pair<int, std::size_t>>> out(static_cast<std::size_t>(g.n));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!edge_alive[e]) continue;
        out[static_cast<std::size_t>(g.edges[e].first)].push_back({g.edges[e].second, e});
        indeg[static_cast<std::size_t>(g.edges[e].second)]++;
    }
    std::vector<int> stack, depth(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v)
        if (indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
    std::size_t head = 0;
    std::size_t seen = 0;
    while (head < stack.size()) {
        int u = stack[head++];
        ++seen;
        for (auto [v, e] : out[static_cast<std::size_t>(u)]) {
            (void)e;
            depth[static_cast<std::size_t>(v)] =
                std::max(depth[static_cast<std::size_t>(v)], depth[static_cast<std::size_t>(u)] + 1);
            if (--indeg[static_cast<std::size_t>(v)] == 0) stack.push_back(v);
        }
    }
    require(seen == static_cast<std::size_t>(g.n), "valiant: graph has a cycle");
    return depth;
}

}  // namespace detail

/// Removes the r smallest of the depth-label bit classes: edge (u,v) belongs
/// to the class of the most significant bit where depth(u) and depth(v)
/// differ. Edges whose class is bit delta point into maximum-depth nodes and
/// can only ever end a path, so they are exempt from removal and counting.
/// |R| <= ceil(r*m/delta) and the residual depth is at most 2^(delta-r),
/// re-verified by recomputation.
inline ValiantResult valiant_reduce_depth(const Digraph& g, int r,
                                          std::optional<int> delta_opt = {}) {
    std::vector<char> alive(g.edges.size(), 1);
    auto depth = detail::dag_depths(g, alive);
    int d = 0;
    for (int x : depth) d = std::max(d, x);
    int delta = delta_opt.value_or(ceil_log2_u64(static_cast<std::uint64_t>(std::max(d, 1))));
    require(r >= 1 && r <= delta, "valiant: need 1 <= r <= delta");
    require(delta < 62 && d <= (1LL << delta), "valiant: depth exceeds 2^delta");

    std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(delta) + 1);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        auto [u, v] = g.edges[e];
        std::uint64_t du = static_cast<std::uint64_t>(depth[static_cast<std::size_t>(u)]);
        std::uint64_t dv = static_cast<std::uint64_t>(depth[static_cast<std::size_t>(v)]);
        check_bound(du < dv, "valiant: depth labels not increasing along an edge");
        int cls = 63 - __builtin_clzll(du ^ dv);
        classes[static_cast<std::size_t>(cls)].push_back(e);
    }
    std::vector<std::pair<std::size_t, int>> order;  // (size, class), classes 0..delta-1
    for (int cls = 0; cls < delta; ++cls)
        order.push_back({classes[static_cast<std::size_t>(cls)].size(), cls});
    std::sort(order.begin(), order.end());
    ValiantResult res;
    res.delta = delta;
    res.r = r;
    for (int i = 0; i < r; ++i)
        for (std::size_t e : classes[static_cast<std::size_t>(order[static_cast<std::size_t>(i)].second)]) {
            res.removed.push_back(e);
            alive[e] = 0;
        }
    std::sort(res.removed.begin(), res.removed.end());
    std::uint64_t m = static_cast<std::uint64_t>(g.edges.size());
    res.removal_cap = (static_cast<std::uint64_t>(r) * m + static_cast<std::uint64_t>(delta) - 1) /
                      static_cast<std::uint64_t>(delta);
    check_bound(res.removed.size() <= res.removal_cap, "valiant: removed more than ceil(rm/delta)");
    auto res_depth = detail::dag_depths(g, alive);
    for (int x : res_depth) res.residual_depth = std::max(res.residual_depth, x);
    check_bound(res.residual_depth <= (1LL << (delta - r)),
                "valiant: residual depth exceeds 2^(delta-r)");
    return res;
}

// ---------------------------------------------------------------------------
// Branching compiler

struct BranchFormula {
    std::vector<std::pair<int, bool>> pins;  // (gate id, guessed output value)
    CnfFormula cnf;
};

struct BranchingResult {
    std::vector<BranchFormula> branches;  // OR-combined; lexicographic in the guesses
    int delta = 0;
    int r = 0;
    std::size_t removed_wires = 0;
    ReductionTrace trace;
};

/// Guess-and-compile: a wire set R chosen by depth-label classes is removed,
/// the output value of each severed source gate is guessed (one guess per
/// gate, even when several of its wires are cut), thresholds absorb the
/// guessed ones, constants are folded, and each branch is compiled with the
/// guessed gates pinned into the cut set by unit clauses. The circuit is
/// satisfiable iff some branch formula is. |R| is held within eps*n/2 (by
/// lowering r or raising the class count when the first cut overshoots), so
/// there are at most 2^ceil(eps*n/2) branches.
inline BranchingResult tc_to_kcnf_branching(const ThresholdCircuit& tc, double eps,
                                            std::optional<int> beta_override = {}) {
    require(eps > 0, "tc_to_kcnf_branching: eps must be positive");
    BranchingResult out;
    auto base = detail::normalize(tc);
    int n = tc.num_inputs;
    int depth = base.depth();
    if (depth <= 1) {
        auto single = tc_to_kcnf(tc, eps, beta_override);
        out.branches.push_back({{}, std::move(single.cnf)});
        out.trace.add("branching", "mode", std::string("shallow"));
        out.trace.add("branching", "branches", std::uint64_t{1});
        return out;
    }
    int wires = base.wire_count();
    double c = std::max(1.0, static_cast<double>(wires) / std::max(1, n));
    int delta = ceil_log2_u64(static_cast<std::uint64_t>(depth));
    int r = std::clamp(static_cast<int>(std::ceil(eps * delta / (2.0 * c))), 1, delta);

    Digraph g;
    g.n = static_cast<int>(base.nodes.size());
    std::vector<std::pair<int, int>> wire_at;  // (target node, position)
    for (std::size_t x = 0; x < base.nodes.size(); ++x)
        for (std::size_t pos = 0; pos < base.nodes[x].ins.size(); ++pos) {
            g.edges.push_back({base.nodes[x].ins[pos], static_cast<int>(x)});
            wire_at.push_back({static_cast<int>(x), static_cast<int>(pos)});
        }

    ValiantResult vr;
    int r_eff = r, delta_eff = delta;
    for (;;) {
        vr = valiant_reduce_depth(g, r_eff, delta_eff);
        if (static_cast<double>(vr.removed.size()) <= eps * n / 2.0 + 1e-9) break;
        if (r_eff > 1) {
            --r_eff;
            continue;
        }
        ++delta_eff;  // more classes, smaller smallest class
        require(delta_eff <= 60, "branching: could not fit the removal budget");
    }
    out.delta = delta_eff;
    out.r = r_eff;
    out.removed_wires = vr.removed.size();
    check_bound(static_cast<double>(vr.removed.size()) <= eps * n / 2.0 + 1e-9,
                "branching: removed wires exceed eps*n/2");

    // guessed gates: distinct sources of removed wires
    std::set<int> source_set;
    for (std::size_t e : vr.removed) source_set.insert(g.edges[e].first);
    std::vector<int> sources(source_set.begin(), source_set.end());
    std::size_t s = sources.size();
    check_bound(s <= 62, "branching: too many guessed gates");

    for (std::uint64_t guess = 0; guess < (1ULL << s); ++guess) {
        std::map<int, bool> value;  // source node -> guessed output
        for (std::size_t j = 0; j < s; ++j)
            value[sources[j]] = ((guess >> (s - 1 - j)) & 1) != 0;

        detail::CompilerCircuit cc = base;
        // delete removed wires; thresholds absorb guessed ones, severed
        // negations fold immediately (their guessed input is known here)
        std::map<int, std::vector<int>> posns;  // target -> positions to drop
        for (std::size_t e : vr.removed)
            posns[wire_at[e].first].push_back(wire_at[e].second);
        for (auto& [target, drop] : posns) {
            auto& nd = cc.nodes[static_cast<std::size_t>(target)];
            std::sort(drop.begin(), drop.end());
            int absorbed = 0;
            std::vector<int> kept;
            std::size_t di = 0;
            for (std::size_t pos = 0; pos < nd.ins.size(); ++pos) {
                if (di < drop.size() && static_cast<int>(pos) == drop[di]) {
                    ++di;
                    if (value.at(nd.ins[pos])) ++absorbed;
                    continue;
                }
                kept.push_back(nd.ins[pos]);
            }
            if (nd.kind == GateKind::Neg) {
                nd.folded = true;
                nd.fold_val = absorbed == 0;
                nd.ins.clear();
            } else {
                nd.ins = std::move(kept);
                nd.theta -= absorbed;
            }
        }
        detail::fold_constants(cc);

        std::vector<std::pair<int, bool>> pins;        // node -> value, for live gates
        std::vector<std::pair<int, bool>> pin_report;  // gate id -> value
        bool contradicted = false;
        for (int src : sources) {
            bool val = value.at(src);
            pin_report.push_back({cc.nodes[static_cast<std::size_t>(src)].orig_id, val});
            const auto& nd = cc.nodes[static_cast<std::size_t>(src)];
            if (nd.folded) {
                if (nd.fold_val != val) contradicted = true;
            } else if (nd.kind == GateKind::Input) {
                pins.push_back({src, val});
            } else {
                pins.push_back({src, val});
            }
        }
        const auto& onode = cc.nodes[static_cast<std::size_t>(cc.output)];
        if (contradicted || (onode.folded && !onode.fold_val)) {
            out.branches.push_back({pin_report, CnfFormula::canonical_false(n)});
            continue;
        }
        bool out_unit = !onode.folded;
        double eps_inner =
            std::max(eps / 2.0 - static_cast<double>(pins.size()) / std::max(1, n), 1e-6);
        auto res = detail::tc_compile_core(std::move(cc), n, wires, eps_inner, beta_override,
                                           pins, out_unit);
        if (!beta_override)
            check_bound(static_cast<double>(res.cnf.num_vars) <= (1.0 + eps / 2.0) * n + 1 + 1e-9,
                        "branching: per-branch variable budget exceeded");
        out.branches.push_back({pin_report, std::move(res.cnf)});
    }
    out.trace.add("branching", "mode", std::string("split"));
    out.trace.add("branching", "delta", static_cast<std::int64_t>(out.delta));
    out.trace.add("branching", "r", static_cast<std::int64_t>(out.r));
    out.trace.add("branching", "removed_wires", static_cast<std::uint64_t>(out.removed_wires));
    out.trace.add("branching", "branches", static_cast<std::uint64_t>(out.branches.size()));
    return out;
}

}  // namespace redkit
