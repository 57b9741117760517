// Command-line driver: instance generators, reductions, reference solvers
// and the verification harness. Batch-oriented; identical commands with the
// same seed produce identical bytes.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "redkit/circuit_compile.hpp"
#include "redkit/clique_reductions.hpp"
#include "redkit/generators.hpp"
#include "redkit/instances.hpp"
#include "redkit/oracles.hpp"
#include "redkit/ov_reductions.hpp"
#include "redkit/sat_reductions.hpp"
#include "redkit/verify.hpp"

namespace fs = std::filesystem;
using namespace redkit;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitDefect = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// write-then-rename so failures never leave partial files behind
void atomic_write(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write '" + path.string() + "'");
        out << content;
    }
    fs::rename(tmp, path);
}

void emit(const std::string& to, const std::string& content) {
    if (to.empty() || to == "-")
        std::cout << content;
    else
        atomic_write(to, content);
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    for (auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

struct QueryWriter {
    fs::path dir;
    std::string ext;
    ReductionTrace* trace = nullptr;
    std::size_t count = 0;

    std::string next_name() {
        char buf[32];
        std::snprintf(buf, sizeof buf, "q%05zu.%s", count, ext.c_str());
        return buf;
    }
    void write(const std::string& content) {
        std::string name = next_name();
        atomic_write(dir / name, content);
        if (trace) trace->add("emit", "file", name);
        ++count;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction toolkit: generators, reductions, solvers, verification"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->require_subcommand(1);
    std::string gen_out = "-";
    std::uint64_t gen_seed = 0;
    for (auto* sc : {gen}) (void)sc;

    auto* gen_clique_cmd = gen->add_subcommand("clique", "weighted hypergraph instance");
    CliqueGenParams cp;
    std::string cp_wmax = "50", cp_t;
    gen_clique_cmd->add_option("--n", cp.n, "vertices")->default_val(6);
    gen_clique_cmd->add_option("--d", cp.d, "max edge cardinality")->default_val(2);
    gen_clique_cmd->add_option("--k", cp.k, "clique size")->default_val(3);
    gen_clique_cmd->add_option("--wmax", cp_wmax, "weight magnitude bound");
    gen_clique_cmd->add_option("--t", cp_t, "target weight (default: random / planted sum)");
    gen_clique_cmd->add_option("--density", cp.density_pct, "edge presence %")->default_val(85);
    gen_clique_cmd->add_flag("--planted", cp.planted, "plant a clique hitting the target");
    gen_clique_cmd->add_flag("--partitioned", cp.partitioned, "emit a k-partite instance");
    gen_clique_cmd->add_flag("--nonneg", cp.nonnegative, "non-negative weights only");
    gen_clique_cmd->add_option("--seed", gen_seed, "rng seed")->required();
    gen_clique_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");

    auto* gen_ov_cmd = gen->add_subcommand("ov", "orthogonal-vectors instance");
    int ov_k = 2, ov_dim = 8, ov_per = 4, ov_ones = 50;
    gen_ov_cmd->add_option("--k", ov_k)->default_val(2);
    gen_ov_cmd->add_option("--dim", ov_dim)->default_val(8);
    gen_ov_cmd->add_option("--per-family", ov_per)->default_val(4);
    gen_ov_cmd->add_option("--ones", ov_ones, "density of ones, %")->default_val(50);
    gen_ov_cmd->add_option("--seed", gen_seed)->required();
    gen_ov_cmd->add_option("-o,--out", gen_out);

    auto* gen_cnf_cmd = gen->add_subcommand("cnf", "random CNF in DIMACS");
    int cnf_n = 8, cnf_m = 12, cnf_w = 3;
    gen_cnf_cmd->add_option("--n", cnf_n)->default_val(8);
    gen_cnf_cmd->add_option("--m", cnf_m)->default_val(12);
    gen_cnf_cmd->add_option("--width", cnf_w)->default_val(3);
    gen_cnf_cmd->add_option("--seed", gen_seed)->required();
    gen_cnf_cmd->add_option("-o,--out", gen_out);

    auto* gen_tc_cmd = gen->add_subcommand("tc", "random threshold circuit");
    int tc_n = 8, tc_wires = 16, tc_depth = 3;
    gen_tc_cmd->add_option("--n", tc_n)->default_val(8);
    gen_tc_cmd->add_option("--wires", tc_wires)->default_val(16);
    gen_tc_cmd->add_option("--depth", tc_depth)->default_val(3);
    gen_tc_cmd->add_option("--seed", gen_seed)->required();
    gen_tc_cmd->add_option("-o,--out", gen_out);

    // ---- reduce -------------------------------------------------------------
    auto* red = app.add_subcommand("reduce", "run a named reduction pipeline");
    std::string red_pipeline, red_in, red_out_dir = ".";
    std::uint64_t red_seed = 0;
    bool red_has_seed = false;
    int red_p = 0, red_k = 4;
    std::string red_t = "0";
    double red_eps = 1.0;
    int red_beta = 0;
    red->add_option("pipeline", red_pipeline,
                    "clique-to-2ov | tc-to-cnf | formula-to-cnf | maxsat-to-clique | "
                    "tc-to-cnf-branching")
        ->required();
    red->add_option("-i,--in", red_in, "input instance file")->required();
    red->add_option("-o,--out-dir", red_out_dir, "output directory")->default_val(".");
    red->add_option("--seed", red_seed, "rng seed (required for randomized stages)")
        ->each([&](const std::string&) { red_has_seed = true; });
    red->add_option("--p", red_p, "digit parameter for the weight stripping stage");
    red->add_option("--eps", red_eps, "variable-budget epsilon")->default_val(1.0);
    red->add_option("--beta", red_beta, "fan-in replacement threshold override");
    red->add_option("--k", red_k, "clique size for maxsat-to-clique")->default_val(4);
    red->add_option("--t", red_t, "decision target for maxsat-to-clique")->default_val("0");

    // ---- solve --------------------------------------------------------------
    auto* sol = app.add_subcommand("solve", "run a reference solver");
    std::string sol_problem, sol_in;
    std::uint64_t sol_budget = 200'000'000ULL;
    sol->add_option("problem", sol_problem,
                    "clique-exact | clique-min | ov | cnf-sat | max-sat | tc-sat")
        ->required();
    sol->add_option("-i,--in", sol_in, "input instance file")->required();
    sol->add_option("--budget", sol_budget, "candidate cap for exhaustive search");

    // ---- verify ---------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run a property suite");
    std::string ver_suite;
    int ver_trials = 100;
    std::uint64_t ver_seed = 0;
    ver->add_option("suite", ver_suite,
                    "preprocessing | prime-hash | square-trick | strip-weights | ov | maxsat | "
                    "formula | tc | valiant | pipeline | all")
        ->required();
    ver->add_option("--trials", ver_trials, "seeded trials per suite")->default_val(100);
    ver->add_option("--seed", ver_seed, "rng seed (mandatory: reports must be reproducible)")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Rng rng(gen_seed);
            if (gen_clique_cmd->parsed()) {
                cp.wmax = detail::parse_bigint(cp_wmax, "wmax");
                if (!cp_t.empty()) cp.t = detail::parse_bigint(cp_t, "t");
                emit(gen_out, serialize_clique_instance(gen_clique(cp, rng)));
            } else if (gen_ov_cmd->parsed()) {
                emit(gen_out, serialize_ov(gen_ov(ov_k, ov_dim, ov_per, ov_ones, rng)));
            } else if (gen_cnf_cmd->parsed()) {
                emit(gen_out, write_dimacs(gen_cnf(cnf_n, cnf_m, cnf_w, rng)));
            } else if (gen_tc_cmd->parsed()) {
                emit(gen_out, serialize_circuit(gen_tc(tc_n, tc_wires, tc_depth, rng)));
            }
            return 0;
        }

        if (red->parsed()) {
            fs::create_directories(red_out_dir);
            ReductionTrace trace;
            QueryWriter writer{fs::path(red_out_dir), "", &trace, 0};
            if (red_pipeline == "clique-to-2ov") {
                if (!red_has_seed) throw ParseError("clique-to-2ov needs --seed");
                auto inst = parse_clique_instance(read_file(red_in));
                Rng rng(red_seed);
                writer.ext = "ov";
                PipelineParams params;
                if (red_p > 0) params.p = red_p;
                ReductionTrace t = pipeline_clique_to_2ov_stream(
                    inst, params, rng,
                    [&](const OVInstance& q) { writer.write(serialize_ov(q)); });
                trace.append(t);
            } else if (red_pipeline == "tc-to-cnf") {
                auto tc = parse_circuit(read_file(red_in));
                writer.ext = "cnf";
                std::optional<int> beta;
                if (red_beta > 0) beta = red_beta;
                auto res = tc_to_kcnf(tc, red_eps, beta);
                writer.write(write_dimacs(res.cnf));
                trace.add("tc-to-cnf", "beta", static_cast<std::int64_t>(res.report.beta));
                trace.add("tc-to-cnf", "width", static_cast<std::int64_t>(res.report.width));
                trace.add("tc-to-cnf", "variables",
                          static_cast<std::uint64_t>(res.report.variables));
                trace.add("tc-to-cnf", "cut_size", static_cast<std::uint64_t>(res.report.a_size));
            } else if (red_pipeline == "formula-to-cnf") {
                auto f = parse_circuit(read_file(red_in));
                writer.ext = "cnf";
                auto res = formula_to_kcnf(f, red_eps);
                writer.write(write_dimacs(res.cnf));
                trace.add("formula-to-cnf", "k", static_cast<std::int64_t>(res.report.k));
                trace.add("formula-to-cnf", "width", static_cast<std::int64_t>(res.report.width));
                trace.add("formula-to-cnf", "variables",
                          static_cast<std::uint64_t>(res.report.variables));
            } else if (red_pipeline == "maxsat-to-clique") {
                auto f = parse_dimacs(read_file(red_in));
                writer.ext = "hg";
                auto inst =
                    maxsat_to_minweight_clique(f, red_k, detail::parse_bigint(red_t, "t"));
                writer.write(serialize_clique_instance(inst));
                trace.add("maxsat-to-clique", "vertices", static_cast<std::int64_t>(inst.n));
                trace.add("maxsat-to-clique", "edges",
                          static_cast<std::uint64_t>(inst.edges.size()));
            } else if (red_pipeline == "tc-to-cnf-branching") {
                auto tc = parse_circuit(read_file(red_in));
                writer.ext = "cnf";
                std::optional<int> beta;
                if (red_beta > 0) beta = red_beta;
                auto res = tc_to_kcnf_branching(tc, red_eps, beta);
                for (const auto& b : res.branches) {
                    std::string pins;
                    for (auto [gate, val] : b.pins)
                        pins += " " + std::to_string(gate) + "=" + (val ? "1" : "0");
                    trace.add("branch", "pins", pins.empty() ? "(none)" : pins.substr(1));
                    writer.write(write_dimacs(b.cnf));
                }
                trace.append(res.trace);
            } else {
                throw ParseError("unknown pipeline '" + red_pipeline + "'");
            }
            trace.add("reduce", "queries", static_cast<std::uint64_t>(writer.count));
            atomic_write(fs::path(red_out_dir) / "trace.tsv", trace.tsv());
            return 0;
        }

        if (sol->parsed()) {
            OracleBudget budget{sol_budget};
            std::string text = read_file(sol_in);
            if (sol_problem == "clique-exact" || sol_problem == "clique-min") {
                auto inst = parse_clique_instance(text);
                auto s = sol_problem == "clique-exact" ? solve_exact_weight_clique(inst, budget)
                                                       : solve_min_weight_clique(inst, budget);
                if (!s) {
                    std::cout << "NO\n";
                    return kExitNo;
                }
                std::cout << "YES clique " << join_ints(s->vertices) << " weight " << s->weight
                          << "\n";
                return kExitYes;
            }
            if (sol_problem == "ov") {
                auto ov = parse_ov(text);
                auto s = solve_k_ov(ov);
                if (!s) {
                    std::cout << "NO\n";
                    return kExitNo;
                }
                std::cout << "YES indices " << join_ints(*s) << "\n";
                return kExitYes;
            }
            if (sol_problem == "cnf-sat") {
                auto f = parse_dimacs(text);
                auto s = solve_cnf_sat(f, budget);
                if (!s) {
                    std::cout << "NO\n";
                    return kExitNo;
                }
                std::cout << "YES assignment " << bits_to_string(*s) << "\n";
                return kExitYes;
            }
            if (sol_problem == "max-sat") {
                auto f = parse_dimacs(text);
                auto [best, witness] = solve_max_sat(f, budget);
                std::cout << "OPT " << best << " assignment " << bits_to_string(witness) << "\n";
                return kExitYes;
            }
            if (sol_problem == "tc-sat") {
                auto tc = parse_circuit(text);
                auto s = solve_circuit_sat(tc, budget);
                if (!s) {
                    std::cout << "NO\n";
                    return kExitNo;
                }
                std::cout << "YES assignment " << bits_to_string(*s) << "\n";
                return kExitYes;
            }
            throw ParseError("unknown problem '" + sol_problem + "'");
        }

        if (ver->parsed()) {
            auto reports = run_verify_suite(ver_suite, ver_trials, ver_seed);
            bool all_ok = true;
            for (const auto& r : reports) {
                std::cout << r.text();
                all_ok &= r.ok();
            }
            return all_ok ? 0 : kExitNo;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const BoundViolation& e) {
        std::cerr << "bound violation (defect): " << e.what() << "\n";
        return kExitDefect;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
