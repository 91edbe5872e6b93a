#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "qslice/benchgen.hpp"
#include "qslice/driver.hpp"
#include "qslice/mapper.hpp"
#include "support/oracles.hpp"
#include "support/sim.hpp"

using namespace qslice;
using namespace qslice::testsupport;

namespace {

// Applies a move set's swap layers to `from` and checks it lands on `to`.
void check_moves_realize(const MoveSet& ms, const Assignment& from, const Assignment& to) {
    Assignment cur = from;
    for (const auto& layer : ms.layers()) {
        std::set<int> touched;
        for (auto [x, y] : layer) {
            REQUIRE(touched.insert(x).second);
            REQUIRE(touched.insert(y).second);
            REQUIRE(cur.cluster_of(x) != cur.cluster_of(y));
            cur.exchange(x, y);
        }
    }
    REQUIRE(cur.same_placement(to));
}

Assignment scrambled(const MachineSpec& m, int width, std::mt19937_64& rng, int touches) {
    Assignment a = Assignment::initial(m, width);
    for (int i = 0; i < touches; ++i) {
        int x = static_cast<int>(rng() % static_cast<unsigned>(m.size()));
        int y = static_cast<int>(rng() % static_cast<unsigned>(m.size()));
        if (a.cluster_of(x) != a.cluster_of(y)) a.exchange(x, y);
    }
    return a;
}

} // namespace

TEST_CASE("identity transition costs nothing") {
    MachineSpec m{3, 3, 1.0};
    Assignment a = Assignment::initial(m, 7);
    MoveSet ms = comm_cost(a, a);
    REQUIRE(ms.cost() == 0);
    REQUIRE(ms.cycles.empty());
    REQUIRE(ms.residual_chains.empty());
    REQUIRE(ms.rounds() == 0);
}

TEST_CASE("a two-cycle costs one swap") {
    MachineSpec m{2, 2, 1.0};
    Assignment from = Assignment::initial(m, 4); // {0,1} | {2,3}
    Assignment to = from;
    to.exchange(1, 2);
    MoveSet ms = comm_cost(from, to);
    REQUIRE(ms.cost() == 1);
    REQUIRE(ms.cycles.size() == 1);
    REQUIRE(ms.cycles[0].length() == 2);
    check_moves_realize(ms, from, to);
}

TEST_CASE("a three-cycle costs two swaps") {
    MachineSpec m{3, 1, 1.0};
    Assignment from = Assignment::initial(m, 3); // 0|1|2
    Assignment to = from;
    to.exchange(0, 1); // 1|0|2
    to.exchange(0, 2); // 2|0|1 : 0->B, 1->C, 2->A
    MoveSet ms = comm_cost(from, to);
    REQUIRE(ms.cost() == 2);
    REQUIRE(ms.cycles.size() == 1);
    REQUIRE(ms.cycles[0].length() == 3);
    REQUIRE(ms.rounds() == 2);
    check_moves_realize(ms, from, to);
}

TEST_CASE("a lone move swaps with an idle slot") {
    MachineSpec m{2, 2, 1.0};
    Assignment from = Assignment::initial(m, 3); // qubits 0,1 | qubit 2, idle 3
    Assignment to = from;
    to.exchange(1, 3); // qubit 1 moves to cluster 1
    MoveSet ms = comm_cost(from, to);
    REQUIRE(ms.cost() == 1);
    REQUIRE(ms.cycles.empty());
    REQUIRE(ms.residual_moves().size() == 1);
    REQUIRE(ms.residual_moves()[0].mover == 1);
    REQUIRE(ms.residual_moves()[0].idle_partner == 3);
    check_moves_realize(ms, from, to);
}

TEST_CASE("comm cost rejects mismatched machines") {
    MachineSpec m{2, 2, 1.0}, m2{2, 3, 1.0};
    REQUIRE_THROWS_AS(comm_cost(Assignment::initial(m, 4), Assignment::initial(m2, 4)), Error);
}

TEST_CASE("cost matches the swap-sequence oracle on random transitions") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 120; ++trial) {
        int k = 2 + static_cast<int>(rng() % 5); // up to 6 clusters
        int p = 1 + static_cast<int>(rng() % 3);
        MachineSpec m{k, p, 1.0};
        int width = std::max(2, static_cast<int>(rng() % static_cast<unsigned>(m.size() + 1)));
        Assignment from = scrambled(m, width, rng, 6);
        Assignment to = scrambled(m, width, rng, 6);
        MoveSet ms = comm_cost(from, to);
        int oracle = min_swaps_oracle(from, to);
        INFO("trial " << trial << " k=" << k << " p=" << p << " width=" << width);
        REQUIRE(ms.cost() == oracle);
        check_moves_realize(ms, from, to);
    }
}

TEST_CASE("cost bounds in the displaced count") {
    std::mt19937_64 rng(73);
    MachineSpec m{4, 3, 1.0};
    for (int trial = 0; trial < 60; ++trial) {
        Assignment from = scrambled(m, 10, rng, 8);
        Assignment to = scrambled(m, 10, rng, 8);
        int displaced = 0;
        for (int q = 0; q < 10; ++q)
            if (from.cluster_of(q) != to.cluster_of(q)) ++displaced;
        MoveSet ms = comm_cost(from, to);
        REQUIRE(ms.cost() >= (displaced + 1) / 2);
        REQUIRE(ms.cost() <= displaced);
    }
}

TEST_CASE("fgp path on an already-satisfiable circuit has zero cost") {
    // every gate acts within the initial layout's first cluster
    Circuit c = asap_schedule({{"cx", 0, 1, {}}, {"cx", 2, 3, {}}, {"cx", 0, 2, {}}}, 4);
    MachineSpec m{2, 4, 1.0};
    Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    REQUIRE(path_cost(p) == 0);
    for (std::size_t t = 1; t < p.assignments.size(); ++t)
        REQUIRE(p.assignments[t].same_placement(p.assignments[t - 1]));
}

TEST_CASE("static path on a cluster-internal circuit has zero cost") {
    Circuit c = asap_schedule({{"cx", 0, 1, {}}, {"cx", 2, 3, {}}}, 4);
    MachineSpec m{2, 4, 1.0};
    REQUIRE(path_cost(static_path(c, m)) == 0);
}

TEST_CASE("static repair uses one op out and one op back") {
    // One violated pair in one slice; the adjacent slices are satisfiable
    // from the static assignment, so the qubit goes out and comes back.
    std::string text = "qubits 4\ncx 0 1\n--\ncx 0 3\n--\ncx 0 1\n";
    Circuit c = parse_circuit(text);
    MachineSpec m{2, 3, 1.0};
    Path p = static_path(c, m);
    auto sets = transition_move_sets(p);
    REQUIRE(sets.size() == 2);
    REQUIRE(sets[0].cost() == 1);
    REQUIRE(sets[1].cost() == 1);
}

TEST_CASE("paths are valid at every slice") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 4; ++trial) {
        Circuit c = gen_random(10, 0.3, 3, rng(), 12);
        MachineSpec m{3, 4, 1.0};
        for (bool relaxed : {true, false}) {
            Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0), relaxed);
            REQUIRE(static_cast<int>(p.assignments.size()) == c.depth());
            for (int t = 0; t < c.depth(); ++t) {
                InteractionGraph g = slice_graph(c, t);
                REQUIRE(is_valid(p.assignments[static_cast<std::size_t>(t)], g));
            }
        }
        Path s = static_path(c, m);
        for (int t = 0; t < c.depth(); ++t) {
            InteractionGraph g = slice_graph(c, t);
            REQUIRE(is_valid(s.assignments[static_cast<std::size_t>(t)], g));
        }
    }
}

TEST_CASE("width beyond the machine is a capacity error") {
    Circuit c = asap_schedule({{"cx", 0, 9, {}}}, 10);
    MachineSpec m{2, 4, 1.0};
    REQUIRE_THROWS_AS(fgp_path(c, m, LookaheadSpec::exponential(1.0)), CapacityError);
    REQUIRE_THROWS_AS(static_path(c, m), CapacityError);
}

TEST_CASE("zero-cost paths leave the circuit unchanged") {
    Circuit c = asap_schedule({{"cx", 0, 1, {}}, {"cx", 2, 3, {}}}, 4);
    MachineSpec m{2, 4, 1.0};
    Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    MappedCircuit mc = insert_movement(c, p);
    REQUIRE(mc.total_cost() == 0);
    REQUIRE(mc.circuit.depth() == c.depth());
    REQUIRE(mc.circuit.slices == c.slices);
}

TEST_CASE("one two-cycle transition inserts one movement layer") {
    std::string text = "qubits 4\ncx 0 1\ncx 2 3\n--\ncx 0 2\ncx 1 3\n";
    Circuit c = parse_circuit(text);
    MachineSpec m{2, 2, 1.0};
    Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    MappedCircuit mc = insert_movement(c, p);
    REQUIRE(mc.transitions.size() == 1);
    REQUIRE(mc.total_cost() >= 1);
    std::int64_t swaps = 0;
    for (const auto& s : mc.circuit.slices)
        for (const auto& g : s.gates)
            if (g.kind == "swap-nl") ++swaps;
    REQUIRE(swaps == mc.total_cost());
}

TEST_CASE("inserted swaps equal the path cost on benchmarks") {
    for (const Circuit& c : {gen_cuccaro(10, 12), gen_random(8, 0.4, 3, 5, 12)}) {
        MachineSpec m{3, 4, 1.0};
        for (bool relaxed : {true, false}) {
            Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0), relaxed);
            MappedCircuit mc = insert_movement(c, p);
            REQUIRE(mc.total_cost() == path_cost(p));
            std::int64_t swaps = 0;
            for (const auto& s : mc.circuit.slices)
                for (const auto& g : s.gates)
                    if (g.kind == "swap-nl") ++swaps;
            REQUIRE(swaps == mc.total_cost());
        }
        Path s = static_path(c, m);
        MappedCircuit ms = insert_movement(c, s);
        REQUIRE(ms.total_cost() == path_cost(s));
    }
}

TEST_CASE("movement replay reproduces every assignment") {
    Circuit c = gen_random(9, 0.35, 3, 11, 12);
    MachineSpec m{3, 4, 1.0};
    Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    Assignment cur = p.assignments.front();
    auto sets = transition_move_sets(p);
    for (std::size_t t = 1; t < p.assignments.size(); ++t) {
        for (const auto& layer : sets[t - 1].layers())
            for (auto [x, y] : layer) cur.exchange(x, y);
        REQUIRE(cur.same_placement(p.assignments[t]));
    }
}

TEST_CASE("mapped circuits replay like the original on basis states") {
    std::mt19937_64 rng(83);
    Circuit c = gen_cuccaro(10, 12);
    MachineSpec m{3, 4, 1.0};
    for (bool use_static : {false, true}) {
        Path p = use_static ? static_path(c, m) : fgp_path(c, m, LookaheadSpec::exponential(1.0));
        MappedCircuit mc = insert_movement(c, p);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<char> bits = bits_of(rng(), 12);
            auto plain = replay_circuit(c, bits, Assignment::initial(m, c.width));
            auto mapped = replay_circuit(mc.circuit, bits, mc.initial);
            REQUIRE(mapped.colocated);
            REQUIRE(mapped.bits == plain.bits);
            REQUIRE(mapped.placement.same_placement(mc.final_placement));
        }
    }
}

TEST_CASE("mapped text round-trips through parse_mapped") {
    Circuit c = gen_random(8, 0.4, 2, 19, 12);
    MachineSpec m{3, 4, 1.0};
    Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    MappedCircuit mc = insert_movement(c, p);
    std::string text = emit_mapped(mc);
    MappedFileInfo info = parse_mapped(text);
    REQUIRE(info.width == m.size());
    REQUIRE(info.logical_width == c.width);
    REQUIRE(info.original_depth == c.depth());
    REQUIRE(info.total_cost == mc.total_cost());
    REQUIRE(info.rounds == mc.total_rounds());
    REQUIRE(info.depth_mapped == mc.circuit.depth());
}

TEST_CASE("parse_mapped wants annotations when movement exists") {
    std::string text = "qubits 4\ncx 0 1\n--\nswap-nl 1 2\n--\ncx 0 1\n";
    REQUIRE_THROWS_AS(parse_mapped(text), Error);
}

TEST_CASE("latency fixtures") {
    // depth 265, 1297 moves: 2.0 / 4.0 / 39 ms sequential
    for (auto [mult, ms] : {std::pair{5.0, 2.0}, {10.0, 4.0}, {100.0, 39.0}}) {
        LatencyEstimate e = latency_estimate(265, 1297, 400, mult);
        REQUIRE(e.sequential_ns / 1e6 == Catch::Approx(ms).epsilon(0.03));
    }
    // depth 265, 218 moves: 0.41 / 0.73 / 6.6 ms sequential
    for (auto [mult, ms] : {std::pair{5.0, 0.41}, {10.0, 0.73}, {100.0, 6.6}}) {
        LatencyEstimate e = latency_estimate(265, 218, 120, mult);
        REQUIRE(e.sequential_ns / 1e6 == Catch::Approx(ms).epsilon(0.03));
    }
}

TEST_CASE("latency properties") {
    LatencyEstimate none = latency_estimate(100, 0, 0, 10.0);
    REQUIRE(none.sequential_ns == 100 * 300.0);
    REQUIRE(none.parallel_ns == 100 * 300.0);
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 50; ++trial) {
        int depth = 1 + static_cast<int>(rng() % 500);
        std::int64_t moves = static_cast<std::int64_t>(rng() % 2000);
        std::int64_t rounds = moves == 0 ? 0 : 1 + static_cast<std::int64_t>(rng() % moves);
        double mult = 1.0 + static_cast<double>(rng() % 100);
        LatencyEstimate e = latency_estimate(depth, moves, rounds, mult);
        REQUIRE(e.parallel_ns <= e.sequential_ns);
        // communication component is linear in the multiplier
        LatencyEstimate e2 = latency_estimate(depth, moves, rounds, 2.0 * mult);
        double comm1 = e.sequential_ns - depth * 300.0;
        double comm2 = e2.sequential_ns - depth * 300.0;
        REQUIRE(comm2 == Catch::Approx(2.0 * comm1));
    }
    REQUIRE_THROWS_AS(latency_estimate(10, 5, 2, 0.5), Error);
}

TEST_CASE("empty circuits map to empty paths") {
    Circuit c;
    c.width = 4;
    MachineSpec m{2, 2, 1.0};
    Path p = fgp_path(c, m, LookaheadSpec::exponential(1.0));
    REQUIRE(p.assignments.empty());
    MappedCircuit mc = insert_movement(c, p);
    REQUIRE(mc.total_cost() == 0);
    REQUIRE(mc.circuit.depth() == 0);
}
