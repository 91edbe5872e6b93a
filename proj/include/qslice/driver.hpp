#pragma once

// Run plumbing shared by the CLI and the test suites: compile a circuit
// under a chosen algorithm, collect the per-run stats record, and sweep
// configuration grids into CSV.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "qslice/benchgen.hpp"
#include "qslice/circuit.hpp"
#include "qslice/mapper.hpp"

namespace qslice {

struct RunMeta {
    std::string benchmark; // e.g. "cuccaro-76" or an input file stem
    std::string family;
    int n_data = 0;
    int n_total = 0;
    std::uint64_t seed = 0;
};

struct StatsRow {
    RunMeta meta;
    int k = 0, p = 0;
    std::string algorithm;
    std::string lookahead; // "-" for the static baseline
    double sigma = 0.0;
    int depth_unmapped = 0;
    std::int64_t two_qubit_ops = 0;
    std::int64_t nonlocal_ops = 0;
    int depth_mapped = 0;
    std::int64_t seq_ns[3] = {0, 0, 0}; // multipliers 5, 10, 100
    std::int64_t par_ns[3] = {0, 0, 0};
    std::int64_t wall_ms = 0;
};

inline std::string csv_header() {
    return "benchmark,family,n_data,n_total,k,p,algorithm,lookahead,sigma,seed,"
           "depth_unmapped,two_qubit_ops,nonlocal_ops,depth_mapped,"
           "seq_ns_5x,seq_ns_10x,seq_ns_100x,par_ns_5x,par_ns_10x,par_ns_100x,wall_ms";
}

inline std::string to_csv(const StatsRow& r) {
    std::ostringstream out;
    char sig[32];
    std::snprintf(sig, sizeof sig, "%g", r.sigma);
    out << r.meta.benchmark << ',' << r.meta.family << ',' << r.meta.n_data << ','
        << r.meta.n_total << ',' << r.k << ',' << r.p << ',' << r.algorithm << ','
        << r.lookahead << ',' << sig << ',' << r.meta.seed << ',' << r.depth_unmapped << ','
        << r.two_qubit_ops << ',' << r.nonlocal_ops << ',' << r.depth_mapped;
    for (auto v : r.seq_ns) out << ',' << v;
    for (auto v : r.par_ns) out << ',' << v;
    out << ',' << r.wall_ms;
    return out.str();
}

struct CompileOutcome {
    Path path;
    MappedCircuit mapped;
    StatsRow row;
};

// `timing` stamps wall_ms into the row; off by default so identical runs
// produce byte-identical CSV.
inline CompileOutcome compile_circuit(const Circuit& c, const RunMeta& meta,
                                      const MachineSpec& machine, PathAlgorithm algorithm,
                                      const LookaheadSpec& lookahead, bool timing = false) {
    auto t0 = std::chrono::steady_clock::now();
    CompileOutcome out;
    switch (algorithm) {
        case PathAlgorithm::static_oee: out.path = static_path(c, machine); break;
        case PathAlgorithm::fgp_oee: out.path = fgp_path(c, machine, lookahead, false); break;
        case PathAlgorithm::fgp_roee: out.path = fgp_path(c, machine, lookahead, true); break;
    }
    out.mapped = insert_movement(c, out.path);

    StatsRow& r = out.row;
    r.meta = meta;
    r.k = machine.clusters;
    r.p = machine.capacity;
    r.algorithm = algorithm_name(algorithm);
    r.lookahead = algorithm == PathAlgorithm::static_oee ? "-" : lookahead.name();
    r.sigma = algorithm == PathAlgorithm::static_oee ? 0.0 : lookahead.sigma;
    r.depth_unmapped = c.depth();
    r.two_qubit_ops = c.two_qubit_count();
    r.nonlocal_ops = out.mapped.total_cost();
    r.depth_mapped = out.mapped.circuit.depth();
    const double mults[3] = {5.0, 10.0, 100.0};
    for (int i = 0; i < 3; ++i) {
        LatencyEstimate e = latency_estimate(c.depth(), r.nonlocal_ops,
                                             out.mapped.total_rounds(), mults[i]);
        r.seq_ns[i] = static_cast<std::int64_t>(e.sequential_ns + 0.5);
        r.par_ns[i] = static_cast<std::int64_t>(e.parallel_ns + 0.5);
    }
    if (timing)
        r.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return out;
}

struct SweepSpec {
    std::vector<BenchFamily> families;
    std::vector<int> sizes;
    std::vector<PathAlgorithm> algorithms;
    std::vector<LookaheadSpec> lookaheads; // ignored for the static baseline
    MachineSpec machine;
    int total_qubits = 100;
    double p_edge = 0.2; // random family
    int samples = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool timing = false;
};

struct SweepFailure {
    std::string benchmark;
    std::string algorithm;
    std::string message;
};

// Cross product of the grid, one row per run. Rows come back in canonical
// order regardless of job count; failed runs are reported, not fatal.
inline std::vector<StatsRow> sweep(const SweepSpec& spec,
                                   std::vector<SweepFailure>* failures = nullptr) {
    struct Task {
        BenchSpec bench;
        PathAlgorithm algorithm;
        LookaheadSpec lookahead;
    };
    std::vector<Task> tasks;
    for (BenchFamily f : spec.families)
        for (int n : spec.sizes) {
            BenchSpec b;
            b.family = f;
            b.data_qubits = n;
            b.total_qubits = spec.total_qubits;
            b.p_edge = spec.p_edge;
            b.samples = spec.samples;
            b.seed = spec.seed;
            for (PathAlgorithm a : spec.algorithms) {
                if (a == PathAlgorithm::static_oee) {
                    tasks.push_back({b, a, LookaheadSpec{}});
                } else {
                    for (const LookaheadSpec& l : spec.lookaheads) tasks.push_back({b, a, l});
                }
            }
        }

    std::vector<StatsRow> rows(tasks.size());
    std::vector<char> ok(tasks.size(), 0);
    std::vector<SweepFailure> fails(tasks.size());
    std::mutex next_mutex;
    std::size_t next = 0;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= tasks.size()) return;
                i = next++;
            }
            const Task& t = tasks[i];
            RunMeta meta{family_name(t.bench.family) + "-" + std::to_string(t.bench.data_qubits),
                         family_name(t.bench.family), t.bench.data_qubits, t.bench.total_qubits,
                         t.bench.seed};
            try {
                Circuit c = generate(t.bench);
                rows[i] = compile_circuit(c, meta, spec.machine, t.algorithm, t.lookahead,
                                          spec.timing)
                              .row;
                ok[i] = 1;
            } catch (const std::exception& e) {
                fails[i] = {meta.benchmark, algorithm_name(t.algorithm), e.what()};
            }
        }
    };
    int jobs = std::max(1, spec.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<StatsRow> out;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (ok[i])
            out.push_back(rows[i]);
        else if (failures)
            failures->push_back(fails[i]);
    }
    std::sort(out.begin(), out.end(), [](const StatsRow& x, const StatsRow& y) {
        auto key = [](const StatsRow& r) {
            return std::tie(r.meta.family, r.meta.n_data, r.algorithm, r.lookahead, r.sigma,
                            r.meta.seed);
        };
        return key(x) < key(y);
    });
    return out;
}

// Per-instance reduction of the relaxed scheme against the baseline, for
// every (family, size) present with both rows.
inline std::vector<std::pair<std::string, double>> reduction_summary(
    const std::vector<StatsRow>& rows) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& r : rows) {
        if (r.algorithm != "fgp-roee") continue;
        for (const auto& s : rows) {
            if (s.algorithm != "static-oee" || s.meta.benchmark != r.meta.benchmark) continue;
            double red = s.nonlocal_ops == 0
                             ? 0.0
                             : 100.0 * (1.0 - static_cast<double>(r.nonlocal_ops) /
                                                  static_cast<double>(s.nonlocal_ops));
            out.push_back({r.meta.benchmark, red});
            break;
        }
    }
    return out;
}

} // namespace qslice
