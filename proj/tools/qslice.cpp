// qslice: map gate-level circuits onto cluster-based machines one time
// slice at a time, and reproduce the baseline-vs-fine-grained comparisons.
//
// Exit codes: 0 ok, 1 usage error, 2 input error, 3 capacity error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "qslice/benchgen.hpp"
#include "qslice/driver.hpp"
#include "qslice/mapper.hpp"

namespace {

using namespace qslice;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

PathAlgorithm algorithm_from_name(const std::string& s) {
    if (s == "static-oee") return PathAlgorithm::static_oee;
    if (s == "fgp-oee") return PathAlgorithm::fgp_oee;
    if (s == "fgp-roee") return PathAlgorithm::fgp_roee;
    throw Error("unknown algorithm '" + s + "'");
}

LookaheadKind lookahead_from_name(const std::string& s) {
    if (s == "constant") return LookaheadKind::constant;
    if (s == "expon" || s == "exponential") return LookaheadKind::exponential;
    if (s == "gauss" || s == "gaussian") return LookaheadKind::gaussian;
    throw Error("unknown lookahead kind '" + s + "'");
}

std::string stem_of(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int run_selftest() {
    MachineSpec m{3, 4, 1.0};
    Circuit c = gen_cuccaro(10, 12);
    Path st = static_path(c, m);
    Path fg = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    for (int t = 0; t < c.depth(); ++t) {
        InteractionGraph g = slice_graph(c, t);
        if (!is_valid(st.assignments[static_cast<std::size_t>(t)], g) ||
            !is_valid(fg.assignments[static_cast<std::size_t>(t)], g))
            throw Error("selftest: invalid assignment at slice " + std::to_string(t));
    }
    MappedCircuit mc = insert_movement(c, fg);
    std::int64_t swaps = 0;
    for (const auto& s : mc.circuit.slices)
        for (const auto& g : s.gates)
            if (g.kind == "swap-nl") ++swaps;
    if (swaps != mc.total_cost()) throw Error("selftest: movement count mismatch");
    Circuit rt = parse_circuit(emit_circuit(c));
    if (!(rt == c)) throw Error("selftest: text round-trip mismatch");
    std::cout << "selftest ok: depth=" << c.depth() << " static=" << path_cost(st)
              << " fgp-roee=" << path_cost(fg) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-sliced circuit mapping for cluster-based machines"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write a benchmark circuit file");
    std::string gen_family;
    BenchSpec bench;
    std::string gen_out = "-";
    gen->add_option("family", gen_family,
                    "cuccaro | qft_adder | multi_control_clean | multi_target_clean | "
                    "multi_target_dirty | random")
        ->required();
    gen->add_option("--data", bench.data_qubits, "data qubits")->required();
    gen->add_option("--total", bench.total_qubits, "machine qubits (default 100)");
    gen->add_option("--p", bench.p_edge, "edge probability (random)");
    gen->add_option("--samples", bench.samples, "sample layers (random)");
    gen->add_option("--seed", bench.seed, "rng seed")->envname("QSLICE_SEED");
    gen->add_option("-o,--out", gen_out, "output path ('-' for stdout)");

    // compile
    auto* comp = app.add_subcommand("compile", "map a circuit onto a machine");
    std::string comp_in, comp_alg = "fgp-roee", comp_look = "expon";
    std::string comp_out = "-", comp_csv;
    MachineSpec machine;
    double comp_sigma = 1.0;
    bool comp_timing = false;
    comp->add_option("--in", comp_in, "circuit file")->required();
    comp->add_option("--alg", comp_alg, "static-oee | fgp-oee | fgp-roee");
    comp->add_option("--lookahead", comp_look, "constant | expon | gauss");
    comp->add_option("--sigma", comp_sigma, "lookahead scale");
    comp->add_option("--clusters", machine.clusters, "cluster count (default 10)");
    comp->add_option("--capacity", machine.capacity, "qubits per cluster (default 10)");
    comp->add_option("-o,--out", comp_out, "mapped circuit path ('-' for stdout)");
    comp->add_option("--csv", comp_csv, "append a stats row here");
    comp->add_flag("--timing", comp_timing, "record wall time in the stats row");

    // sweep
    auto* sw = app.add_subcommand("sweep", "run a benchmark/algorithm grid");
    std::vector<std::string> sw_families{"cuccaro"};
    std::vector<int> sw_sizes{50, 76, 100};
    std::vector<std::string> sw_algs{"static-oee", "fgp-roee"};
    std::vector<std::string> sw_looks{"expon"};
    std::vector<double> sw_sigmas{1.0};
    std::string sw_csv = "-";
    SweepSpec sweep_spec;
    sw->add_option("--families", sw_families, "benchmark families")->delimiter(',');
    sw->add_option("--sizes", sw_sizes, "data qubit counts")->delimiter(',');
    sw->add_option("--algs", sw_algs, "algorithms")->delimiter(',');
    sw->add_option("--lookaheads", sw_looks, "lookahead kinds")->delimiter(',');
    sw->add_option("--sigmas", sw_sigmas, "lookahead scales")->delimiter(',');
    sw->add_option("--p", sweep_spec.p_edge, "edge probability (random family)");
    sw->add_option("--samples", sweep_spec.samples, "sample layers (random family)");
    sw->add_option("--seed", sweep_spec.seed, "rng seed")->envname("QSLICE_SEED");
    sw->add_option("--total", sweep_spec.total_qubits, "machine qubits");
    sw->add_option("--clusters", sweep_spec.machine.clusters, "cluster count");
    sw->add_option("--capacity", sweep_spec.machine.capacity, "qubits per cluster");
    sw->add_option("--jobs", sweep_spec.jobs, "parallel runs");
    sw->add_flag("--timing", sweep_spec.timing, "record wall times");
    sw->add_option("--csv", sw_csv, "CSV output path ('-' for stdout)");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "latency report for a mapped circuit file");
    std::string ev_in;
    ev->add_option("--in", ev_in, "mapped circuit file")->required();

    auto* self = app.add_subcommand("selftest", "quick built-in consistency check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) {
            bench.family = family_from_name(gen_family);
            Circuit c = generate(bench);
            std::string text = provenance_header(bench) + emit_circuit(c);
            if (gen_out == "-")
                std::cout << text;
            else
                write_file(gen_out, text);
            return 0;
        }
        if (comp->parsed()) {
            machine.validate();
            Circuit c = parse_circuit(read_file(comp_in));
            RunMeta meta{stem_of(comp_in), stem_of(comp_in), c.width, machine.size(), 0};
            LookaheadSpec look{lookahead_from_name(comp_look), comp_sigma};
            CompileOutcome out = compile_circuit(c, meta, machine, algorithm_from_name(comp_alg),
                                                 look, comp_timing);
            std::string text = emit_mapped(out.mapped);
            if (comp_out == "-")
                std::cout << text;
            else
                write_file(comp_out, text);
            if (!comp_csv.empty()) {
                std::ifstream probe(comp_csv);
                bool fresh = !probe.good() || probe.peek() == std::ifstream::traits_type::eof();
                probe.close();
                std::ofstream csv(comp_csv, std::ios::app);
                if (!csv) throw Error("cannot write '" + comp_csv + "'");
                if (fresh) csv << csv_header() << "\n";
                csv << to_csv(out.row) << "\n";
            }
            std::cerr << "nonlocal_ops=" << out.row.nonlocal_ops
                      << " depth_mapped=" << out.row.depth_mapped << "\n";
            return 0;
        }
        if (sw->parsed()) {
            sweep_spec.machine.validate();
            for (const auto& f : sw_families) sweep_spec.families.push_back(family_from_name(f));
            sweep_spec.sizes = sw_sizes;
            for (const auto& a : sw_algs) sweep_spec.algorithms.push_back(algorithm_from_name(a));
            for (const auto& l : sw_looks)
                for (double s : sw_sigmas)
                    sweep_spec.lookaheads.push_back({lookahead_from_name(l), s});
            std::vector<SweepFailure> failures;
            std::vector<StatsRow> rows = sweep(sweep_spec, &failures);
            std::ostringstream csv;
            csv << csv_header() << "\n";
            for (const auto& r : rows) csv << to_csv(r) << "\n";
            if (sw_csv == "-")
                std::cout << csv.str();
            else
                write_file(sw_csv, csv.str());
            for (const auto& [name, red] : reduction_summary(rows)) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.1f", red);
                std::cerr << "reduction " << name << ": " << buf << "%\n";
            }
            for (const auto& f : failures)
                std::cerr << "failed " << f.benchmark << " (" << f.algorithm << "): " << f.message
                          << "\n";
            return 0;
        }
        if (ev->parsed()) {
            MappedFileInfo info = parse_mapped(read_file(ev_in));
            std::cout << "depth=" << info.original_depth << " nonlocal_ops=" << info.total_cost
                      << " rounds=" << info.rounds << "\n";
            for (double mult : {5.0, 10.0, 100.0}) {
                LatencyEstimate e =
                    latency_estimate(info.original_depth, info.total_cost, info.rounds, mult);
                char seq[32], par[32];
                std::snprintf(seq, sizeof seq, "%.4g", e.sequential_ns / 1e6);
                std::snprintf(par, sizeof par, "%.4g", e.parallel_ns / 1e6);
                std::cout << "multiplier " << mult << "x: sequential " << seq << " ms, parallel "
                          << par << " ms\n";
            }
            return 0;
        }
        if (self->parsed()) return run_selftest();
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
