// Problem instances for the five families (weighted hypergraph clique,
// orthogonal vectors, threshold circuits, CNF) plus their text formats.
// All types are immutable value types once constructed; parse/serialize are
// pure and round-trip exactly.
#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "redkit/common.hpp"

namespace redkit {

// ---------------------------------------------------------------------------
// Weighted hypergraph clique

/// d-hypergraph with integer edge weights, a clique size k and a target
/// weight t. Edges are subsets of {0..n-1} of size <= d; the empty edge and
/// singletons are first-class. An optional partition maps each vertex to a
/// part in 0..k-1; when present, every edge meets each part at most once.
struct WeightedCliqueInstance {
    int n = 0;
    int d = 0;
    int k = 0;
    BigInt t = 0;
    std::map<std::vector<int>, BigInt> edges;
    std::optional<std::vector<int>> partition;

    bool has_edge(const std::vector<int>& e) const { return edges.count(e) != 0; }

    /// Max of |t| and all |w(e)|.
    BigInt max_weight() const {
        BigInt m = t < 0 ? BigInt(-t) : t;
        for (const auto& [e, w] : edges) {
            BigInt a = w < 0 ? BigInt(-w) : w;
            if (a > m) m = a;
        }
        return m;
    }

    std::uint64_t binom() const { return binom_le(k, d); }

    /// Throws ParseError if any type invariant fails.
    void validate() const {
        if (n < 0 || d < 0 || k < 0) throw ParseError("clique instance: negative parameter");
        for (const auto& [e, w] : edges) {
            (void)w;
            if (static_cast<int>(e.size()) > d)
                throw ParseError("edge cardinality exceeds d: {" + join_ints(e) + "}");
            int prev = -1;
            for (int v : e) {
                if (v < 0 || v >= n) throw ParseError("edge vertex out of range");
                if (v <= prev) throw ParseError("edge is not a sorted set: {" + join_ints(e) + "}");
                prev = v;
            }
        }
        if (partition) {
            if (static_cast<int>(partition->size()) != n)
                throw ParseError("partition must cover every vertex");
            for (int p : *partition)
                if (p < 0 || p >= k) throw ParseError("partition index out of range");
            for (const auto& [e, w] : edges) {
                (void)w;
                std::vector<char> seen(static_cast<std::size_t>(k), 0);
                for (int v : e) {
                    int p = (*partition)[static_cast<std::size_t>(v)];
                    if (seen[static_cast<std::size_t>(p)])
                        throw ParseError("edge meets a part twice: {" + join_ints(e) + "}");
                    seen[static_cast<std::size_t>(p)] = 1;
                }
            }
        }
    }
};

struct CliqueSolution {
    std::vector<int> vertices;  // sorted
    BigInt weight = 0;
};

// ---------------------------------------------------------------------------
// Orthogonal vectors

/// k families of bit vectors over {0,1}^D. D == 0 is legal (every tuple is
/// then orthogonal: the empty sum is zero).
struct OVInstance {
    int k = 0;
    int dim = 0;
    std::vector<std::vector<std::vector<std::uint8_t>>> families;

    void validate() const {
        if (k < 0 || dim < 0) throw ParseError("ov instance: negative parameter");
        if (static_cast<int>(families.size()) != k)
            throw ParseError("ov instance: family count mismatch");
        for (const auto& fam : families)
            for (const auto& v : fam) {
                if (static_cast<int>(v.size()) != dim)
                    throw ParseError("ov instance: vector length differs from D");
                for (auto b : v)
                    if (b > 1) throw ParseError("ov instance: non-binary value");
            }
    }

    std::size_t total_vectors() const {
        std::size_t s = 0;
        for (const auto& f : families) s += f.size();
        return s;
    }
};

// ---------------------------------------------------------------------------
// Threshold circuits

enum class GateKind { Input, Neg, And, Or, Th };

inline const char* gate_kind_name(GateKind g) {
    switch (g) {
        case GateKind::Input: return "INPUT";
        case GateKind::Neg: return "NEG";
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Th: return "TH";
    }
    return "?";
}

struct Gate {
    int id = 0;
    GateKind kind = GateKind::Input;
    int theta = 0;               // TH only
    std::vector<int> inputs;     // gate ids, in wire order (duplicates allowed)
};

/// DAG of gates over {INPUT, NEG, AND, OR, TH}. AND/OR are kept as parsed;
/// evaluation treats AND as TH_fanin and OR as TH_1. Exactly one gate is the
/// designated output; it must be a sink, and no other non-input gate may be.
struct ThresholdCircuit {
    int num_inputs = 0;
    std::vector<Gate> gates;     // declaration order
    int output = -1;             // gate id

    int index_of(int id) const {
        auto it = id_index_.find(id);
        if (it == id_index_.end()) throw ParseError("unknown gate id " + std::to_string(id));
        return it->second;
    }

    /// Input gate indices in declaration order; position in this list is the
    /// gate's bit position in an assignment.
    const std::vector<int>& input_gate_indices() const { return input_indices_; }

    const std::vector<int>& topo_order() const { return topo_; }

    int wire_count() const {
        int w = 0;
        for (const auto& g : gates) w += static_cast<int>(g.inputs.size());
        return w;
    }

    /// Longest wire path ending at each gate (inputs have depth 0).
    std::vector<int> gate_depths() const {
        std::vector<int> depth(gates.size(), 0);
        for (int gi : topo_) {
            for (int in_id : gates[static_cast<std::size_t>(gi)].inputs) {
                int ii = index_of(in_id);
                depth[static_cast<std::size_t>(gi)] =
                    std::max(depth[static_cast<std::size_t>(gi)], depth[static_cast<std::size_t>(ii)] + 1);
            }
        }
        return depth;
    }

    int depth() const {
        auto d = gate_depths();
        int m = 0;
        for (int x : d) m = std::max(m, x);
        return m;
    }

    /// Builds indices, checks acyclicity, fan-in rules, theta ranges and the
    /// single-output requirement. Must be called after construction.
    void finalize() {
        id_index_.clear();
        input_indices_.clear();
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (!id_index_.emplace(gates[i].id, static_cast<int>(i)).second)
                throw ParseError("duplicate gate id " + std::to_string(gates[i].id));
            if (gates[i].kind == GateKind::Input) input_indices_.push_back(static_cast<int>(i));
        }
        if (static_cast<int>(input_indices_.size()) != num_inputs)
            throw ParseError("input gate count differs from declared n");
        std::vector<int> outdeg(gates.size(), 0);
        for (const auto& g : gates) {
            int fan = static_cast<int>(g.inputs.size());
            switch (g.kind) {
                case GateKind::Input:
                    if (fan != 0) throw ParseError("INPUT gate with in-wires");
                    break;
                case GateKind::Neg:
                    if (fan != 1) throw ParseError("NEG gate must have fan-in 1");
                    break;
                case GateKind::And:
                case GateKind::Or:
                    if (fan < 1) throw ParseError("AND/OR gate with fan-in 0");
                    break;
                case GateKind::Th:
                    if (fan < 1) throw ParseError("TH gate with fan-in 0");
                    if (g.theta < 1 || g.theta > fan)
                        throw ParseError("theta out of range on gate " + std::to_string(g.id));
                    break;
            }
            for (int in_id : g.inputs) outdeg[static_cast<std::size_t>(index_of(in_id))]++;
        }
        // Kahn's algorithm; leftover nodes mean a cycle.
        topo_.clear();
        std::vector<int> remaining(gates.size(), 0);
        for (std::size_t i = 0; i < gates.size(); ++i)
            remaining[i] = static_cast<int>(gates[i].inputs.size());
        std::vector<int> stack;
        for (std::size_t i = 0; i < gates.size(); ++i)
            if (remaining[i] == 0) stack.push_back(static_cast<int>(i));
        std::vector<std::vector<int>> fanout(gates.size());
        for (std::size_t i = 0; i < gates.size(); ++i)
            for (int in_id : gates[i].inputs)
                fanout[static_cast<std::size_t>(index_of(in_id))].push_back(static_cast<int>(i));
        std::size_t head = 0;
        std::sort(stack.begin(), stack.end());
        while (head < stack.size()) {
            int gi = stack[head++];
            topo_.push_back(gi);
            for (int nxt : fanout[static_cast<std::size_t>(gi)])
                if (--remaining[static_cast<std::size_t>(nxt)] == 0) stack.push_back(nxt);
        }
        if (topo_.size() != gates.size()) throw ParseError("cycle detected in circuit");
        if (output < 0) throw ParseError("no output gate designated");
        int oi = index_of(output);
        if (outdeg[static_cast<std::size_t>(oi)] != 0)
            throw ParseError("designated output gate has out-wires");
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (outdeg[i] == 0 && static_cast<int>(i) != oi && gates[i].kind != GateKind::Input)
                throw ParseError("multiple output gates (gate " + std::to_string(gates[i].id) +
                                 " is also a sink)");
        }
    }

  private:
    std::map<int, int> id_index_;
    std::vector<int> input_indices_;
    std::vector<int> topo_;
};

// ---------------------------------------------------------------------------
// CNF

/// Clause list over variables 1..num_vars, literals as signed ints
/// (DIMACS convention). var_names holds an origin tag per variable
/// ("x<i>" for circuit inputs, "y<gate>" for auxiliaries) and may be empty.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<std::string> var_names;  // size num_vars or empty

    int width() const {
        std::size_t w = 0;
        for (const auto& c : clauses) w = std::max(w, c.size());
        return static_cast<int>(w);
    }

    bool is_canonical_false() const { return clauses.size() == 1 && clauses[0].empty(); }

    void validate() const {
        if (num_vars < 0) throw ParseError("cnf: negative variable count");
        if (!var_names.empty() && static_cast<int>(var_names.size()) != num_vars)
            throw ParseError("cnf: name table size mismatch");
        for (const auto& c : clauses) {
            if (c.empty() && !is_canonical_false())
                throw ParseError("cnf: empty clause in non-FALSE formula");
            for (int lit : c) {
                int v = lit < 0 ? -lit : lit;
                if (v < 1 || v > num_vars) throw ParseError("cnf: literal out of range");
            }
        }
    }

    static CnfFormula canonical_false(int num_vars) {
        CnfFormula f;
        f.num_vars = num_vars;
        f.clauses.push_back({});
        return f;
    }
};

// ---------------------------------------------------------------------------
// Parsing helpers

namespace detail {

inline std::vector<std::vector<std::string>> tokenize_lines(const std::string& text,
                                                            bool hash_comments) {
    std::vector<std::vector<std::string>> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (hash_comments) {
            auto pos = line.find('#');
            if (pos != std::string::npos) line.erase(pos);
        }
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) out.push_back(std::move(toks));
    }
    return out;
}

inline long parse_int(const std::string& s, const char* what) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (...) {
        throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    }
    if (pos != s.size()) throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    return v;
}

inline BigInt parse_bigint(const std::string& s, const char* what) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError(std::string("bad integer for ") + what + ": '" + s + "'");
    return BigInt(s);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hypergraph format
//   hg <n> <d> <k> <t>
//   p <vertex> <part>            (optional, at most one per vertex)
//   e <arity> <v1> ... <varity> <w>
// '#' starts a comment. Weights are decimal, optionally signed, unbounded.

inline WeightedCliqueInstance parse_clique_instance(const std::string& text) {
    auto lines = detail::tokenize_lines(text, true);
    if (lines.empty() || lines[0][0] != "hg" || lines[0].size() != 5)
        throw ParseError("expected header 'hg <n> <d> <k> <t>'");
    WeightedCliqueInstance inst;
    inst.n = static_cast<int>(detail::parse_int(lines[0][1], "n"));
    inst.d = static_cast<int>(detail::parse_int(lines[0][2], "d"));
    inst.k = static_cast<int>(detail::parse_int(lines[0][3], "k"));
    inst.t = detail::parse_bigint(lines[0][4], "t");
    if (inst.n < 0 || inst.d < 0 || inst.k < 0) throw ParseError("negative header field");
    std::vector<int> part;
    std::vector<char> part_seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        if (toks[0] == "e") {
            if (toks.size() < 3) throw ParseError("short edge line");
            int arity = static_cast<int>(detail::parse_int(toks[1], "arity"));
            if (arity < 0 || arity > inst.d) throw ParseError("edge cardinality out of range");
            if (static_cast<int>(toks.size()) != arity + 3)
                throw ParseError("edge line token count mismatch");
            std::vector<int> e;
            for (int i = 0; i < arity; ++i) {
                int v = static_cast<int>(detail::parse_int(toks[static_cast<std::size_t>(2 + i)], "vertex"));
                if (v < 0 || v >= inst.n) throw ParseError("edge vertex out of range");
                e.push_back(v);
            }
            std::vector<int> sorted = e;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw ParseError("edge is not a set: {" + join_ints(e) + "}");
            BigInt w = detail::parse_bigint(toks.back(), "weight");
            if (!inst.edges.emplace(std::move(sorted), std::move(w)).second)
                throw ParseError("duplicate edge: {" + join_ints(e) + "}");
        } else if (toks[0] == "p") {
            if (toks.size() != 3) throw ParseError("bad partition line");
            int v = static_cast<int>(detail::parse_int(toks[1], "vertex"));
            int p = static_cast<int>(detail::parse_int(toks[2], "part"));
            if (v < 0 || v >= inst.n) throw ParseError("partition vertex out of range");
            if (p < 0 || p >= inst.k) throw ParseError("partition index out of range");
            if (part.empty()) {
                part.assign(static_cast<std::size_t>(inst.n), 0);
                part_seen.assign(static_cast<std::size_t>(inst.n), 0);
            }
            if (part_seen[static_cast<std::size_t>(v)]) throw ParseError("duplicate partition line");
            part[static_cast<std::size_t>(v)] = p;
            part_seen[static_cast<std::size_t>(v)] = 1;
        } else {
            throw ParseError("unknown line kind '" + toks[0] + "'");
        }
    }
    if (!part.empty()) {
        for (int v = 0; v < inst.n; ++v)
            if (!part_seen[static_cast<std::size_t>(v)])
                throw ParseError("partition missing vertex " + std::to_string(v));
        inst.partition = std::move(part);
    }
    inst.validate();
    return inst;
}

inline std::string serialize_clique_instance(const WeightedCliqueInstance& inst) {
    std::ostringstream os;
    os << "hg " << inst.n << ' ' << inst.d << ' ' << inst.k << ' ' << inst.t << '\n';
    if (inst.partition)
        for (int v = 0; v < inst.n; ++v)
            os << "p " << v << ' ' << (*inst.partition)[static_cast<std::size_t>(v)] << '\n';
    for (const auto& [e, w] : inst.edges) {
        os << "e " << e.size();
        for (int v : e) os << ' ' << v;
        os << ' ' << w << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// OV format
//   ov <k> <D>
//   x <family> <bitstring>       (bitstring omitted when D == 0)

inline OVInstance parse_ov(const std::string& text) {
    auto lines = detail::tokenize_lines(text, true);
    if (lines.empty() || lines[0][0] != "ov" || lines[0].size() != 3)
        throw ParseError("expected header 'ov <k> <D>'");
    OVInstance ov;
    ov.k = static_cast<int>(detail::parse_int(lines[0][1], "k"));
    ov.dim = static_cast<int>(detail::parse_int(lines[0][2], "D"));
    if (ov.k < 0 || ov.dim < 0) throw ParseError("negative header field");
    ov.families.resize(static_cast<std::size_t>(ov.k));
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        if (toks[0] != "x") throw ParseError("unknown line kind '" + toks[0] + "'");
        if (!(toks.size() == 3 || (toks.size() == 2 && ov.dim == 0)))
            throw ParseError("bad vector line");
        int fam = static_cast<int>(detail::parse_int(toks[1], "family"));
        if (fam < 0 || fam >= ov.k) throw ParseError("family index out of range");
        std::vector<std::uint8_t> bits;
        if (toks.size() == 3) {
            const std::string& s = toks[2];
            if (static_cast<int>(s.size()) != ov.dim)
                throw ParseError("vector length differs from D");
            for (char ch : s) {
                if (ch != '0' && ch != '1') throw ParseError("non-binary character in vector");
                bits.push_back(static_cast<std::uint8_t>(ch - '0'));
            }
        }
        ov.families[static_cast<std::size_t>(fam)].push_back(std::move(bits));
    }
    ov.validate();
    return ov;
}

inline std::string serialize_ov(const OVInstance& ov) {
    std::ostringstream os;
    os << "ov " << ov.k << ' ' << ov.dim << '\n';
    for (int f = 0; f < ov.k; ++f)
        for (const auto& vec : ov.families[static_cast<std::size_t>(f)]) {
            os << "x " << f;
            if (ov.dim > 0) {
                os << ' ';
                for (auto b : vec) os << char('0' + b);
            }
            os << '\n';
        }
    return os.str();
}

// ---------------------------------------------------------------------------
// Circuit netlist format
//   tc <n_inputs>
//   g <id> INPUT
//   g <id> NEG|AND|OR <in...>
//   g <id> TH <theta> <in...>
//   out <id>

inline ThresholdCircuit parse_circuit(const std::string& text) {
    auto lines = detail::tokenize_lines(text, true);
    if (lines.empty() || lines[0][0] != "tc" || lines[0].size() != 2)
        throw ParseError("expected header 'tc <n_inputs>'");
    ThresholdCircuit c;
    c.num_inputs = static_cast<int>(detail::parse_int(lines[0][1], "n_inputs"));
    if (c.num_inputs < 0) throw ParseError("negative input count");
    bool saw_out = false;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        if (toks[0] == "out") {
            if (toks.size() != 2) throw ParseError("bad out line");
            if (saw_out) throw ParseError("multiple out lines");
            c.output = static_cast<int>(detail::parse_int(toks[1], "output id"));
            saw_out = true;
        } else if (toks[0] == "g") {
            if (toks.size() < 3) throw ParseError("short gate line");
            Gate g;
            g.id = static_cast<int>(detail::parse_int(toks[1], "gate id"));
            const std::string& kind = toks[2];
            std::size_t in_start = 3;
            if (kind == "INPUT") {
                g.kind = GateKind::Input;
            } else if (kind == "NEG") {
                g.kind = GateKind::Neg;
            } else if (kind == "AND") {
                g.kind = GateKind::And;
            } else if (kind == "OR") {
                g.kind = GateKind::Or;
            } else if (kind == "TH") {
                g.kind = GateKind::Th;
                if (toks.size() < 4) throw ParseError("TH gate missing theta");
                g.theta = static_cast<int>(detail::parse_int(toks[3], "theta"));
                in_start = 4;
            } else {
                throw ParseError("unknown gate kind '" + kind + "'");
            }
            for (std::size_t i = in_start; i < toks.size(); ++i)
                g.inputs.push_back(static_cast<int>(detail::parse_int(toks[i], "wire id")));
            c.gates.push_back(std::move(g));
        } else {
            throw ParseError("unknown line kind '" + toks[0] + "'");
        }
    }
    if (!saw_out) throw ParseError("missing out line");
    c.finalize();
    return c;
}

inline std::string serialize_circuit(const ThresholdCircuit& c) {
    std::ostringstream os;
    os << "tc " << c.num_inputs << '\n';
    for (const auto& g : c.gates) {
        os << "g " << g.id << ' ' << gate_kind_name(g.kind);
        if (g.kind == GateKind::Th) os << ' ' << g.theta;
        for (int in : g.inputs) os << ' ' << in;
        os << '\n';
    }
    os << "out " << c.output << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// DIMACS

inline std::string write_dimacs(const CnfFormula& f) {
    std::ostringstream os;
    os << "c width " << f.width() << '\n';
    if (!f.var_names.empty())
        for (int v = 1; v <= f.num_vars; ++v)
            os << "c origin " << v << ' ' << f.var_names[static_cast<std::size_t>(v - 1)] << '\n';
    os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (int lit : c) os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

inline CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    CnfFormula f;
    bool saw_header = false;
    long expect_clauses = -1;
    std::vector<int> cur;
    std::map<int, std::string> origins;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string key;
            if (ls >> key && key == "origin") {
                int v;
                std::string name;
                if (ls >> v >> name) origins[v] = name;
            }
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            long nv, nc;
            if (!(ls >> fmt >> nv >> nc) || fmt != "cnf") throw ParseError("bad DIMACS header");
            if (nv < 0 || nc < 0) throw ParseError("bad DIMACS header");
            f.num_vars = static_cast<int>(nv);
            expect_clauses = nc;
            saw_header = true;
            continue;
        }
        if (!saw_header) throw ParseError("DIMACS clause before header");
        ls.clear();
        ls.str(line);
        long lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(static_cast<int>(lit));
            }
        }
        if (ls.fail() && !ls.eof()) throw ParseError("bad DIMACS literal");
    }
    if (!saw_header) throw ParseError("missing DIMACS header");
    if (!cur.empty()) throw ParseError("unterminated clause");
    if (expect_clauses >= 0 && static_cast<long>(f.clauses.size()) != expect_clauses)
        throw ParseError("clause count differs from header");
    if (!origins.empty()) {
        f.var_names.assign(static_cast<std::size_t>(f.num_vars), "");
        for (const auto& [v, name] : origins)
            if (v >= 1 && v <= f.num_vars) f.var_names[static_cast<std::size_t>(v - 1)] = name;
    }
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Reduction traces: line-oriented stage/metric/value records.

struct ReductionTrace {
    struct Record {
        std::string stage, metric, value;
    };
    std::vector<Record> records;

    void add(const std::string& stage, const std::string& metric, const std::string& value) {
        records.push_back({stage, metric, value});
    }
    void add(const std::string& stage, const std::string& metric, const BigInt& value) {
        std::ostringstream os;
        os << value;
        add(stage, metric, os.str());
    }
    void add(const std::string& stage, const std::string& metric, std::int64_t value) {
        add(stage, metric, std::to_string(value));
    }
    void add(const std::string& stage, const std::string& metric, std::uint64_t value) {
        add(stage, metric, std::to_string(value));
    }
    void append(const ReductionTrace& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
    }
    std::string tsv() const {
        std::string s;
        for (const auto& r : records) s += r.stage + "\t" + r.metric + "\t" + r.value + "\n";
        return s;
    }
};

}  // namespace redkit
