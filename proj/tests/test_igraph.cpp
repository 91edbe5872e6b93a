#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "qslice/benchgen.hpp"
#include "qslice/interaction_graph.hpp"

using namespace qslice;

namespace {
Gate cx(int a, int b) { return {"cx", a, b, {}}; }

Circuit reference_circuit() {
    return asap_schedule({cx(0, 1), cx(2, 3), cx(1, 2), cx(0, 3), cx(0, 1), cx(2, 3), cx(1, 2),
                          cx(0, 1), cx(2, 3), cx(0, 3)},
                         4);
}
} // namespace

TEST_CASE("total graph counts pairwise interactions") {
    Circuit c = asap_schedule({cx(0, 1), cx(0, 1)}, 2);
    InteractionGraph g = total_interaction_graph(c);
    REQUIRE(g.weight(0, 1) == Weight{0, 2.0});
    REQUIRE(g.weight(1, 0) == Weight{0, 2.0});
}

TEST_CASE("total graph of an empty circuit is edgeless") {
    REQUIRE(total_interaction_graph(Circuit{4, {}}).edges().empty());
}

TEST_CASE("slice graphs sum to the total graph") {
    for (const Circuit& c :
         {reference_circuit(), gen_cuccaro(10, 12), gen_random(10, 0.4, 2, 3, 10)}) {
        InteractionGraph total = total_interaction_graph(c);
        std::map<std::pair<int, int>, double> sum;
        for (int t = 0; t < c.depth(); ++t) {
            InteractionGraph s = slice_graph(c, t);
            for (const auto& [e, w] : s.edges()) sum[e] += w.finite;
        }
        REQUIRE(sum.size() == total.edges().size());
        for (const auto& [e, w] : total.edges()) REQUIRE(sum[e] == w.finite);
    }
}

TEST_CASE("slice graph is a sub-matching") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c = gen_random(12, 0.5, 3, rng(), 12);
        for (int t = 0; t < c.depth(); ++t) {
            std::map<int, int> degree;
            InteractionGraph s = slice_graph(c, t);
            for (const auto& [e, w] : s.edges()) {
                degree[e.first]++;
                degree[e.second]++;
                REQUIRE(w.required == 1);
            }
            for (const auto& [v, d] : degree) REQUIRE(d <= 1);
        }
    }
}

TEST_CASE("slice graph of single-qubit gates is edgeless") {
    Circuit c = asap_schedule({{"h", 0, {}, {}}, {"rz", 1, {}, 0.5}}, 3);
    REQUIRE(slice_graph(c, 0).edges().empty());
}

TEST_CASE("slice index is range checked") {
    Circuit c = asap_schedule({cx(0, 1)}, 2);
    REQUIRE_THROWS_AS(slice_graph(c, 1), Error);
    REQUIRE_THROWS_AS(slice_graph(c, -1), Error);
}

TEST_CASE("lookahead function values") {
    REQUIRE(lookahead_value(LookaheadSpec::exponential(1.0), 2) == 0.25);
    REQUIRE(lookahead_value(LookaheadSpec::constant(0.0), 1) == 0.0);
    REQUIRE(lookahead_value(LookaheadSpec::constant(0.0), 5) == 0.0);
    REQUIRE(lookahead_value(LookaheadSpec::gaussian(2.0), 2) == Catch::Approx(std::exp(-1.0)));
    REQUIRE(lookahead_value(LookaheadSpec::constant(3.0), 3) == 1.0);
    REQUIRE(lookahead_value(LookaheadSpec::constant(3.0), 4) == 0.0);
    double inf = std::numeric_limits<double>::infinity();
    REQUIRE(lookahead_value(LookaheadSpec::constant(inf), 1000) == 1.0);
    REQUIRE_THROWS_AS(lookahead_value(LookaheadSpec::exponential(0.0), 1), Error);
    REQUIRE_THROWS_AS(lookahead_value(LookaheadSpec::gaussian(-1.0), 1), Error);
    REQUIRE_THROWS_AS(lookahead_value(LookaheadSpec::exponential(1.0), 0), Error);
}

TEST_CASE("lookahead function is monotone non-increasing and non-negative") {
    for (LookaheadSpec spec : {LookaheadSpec::constant(4.0), LookaheadSpec::exponential(0.7),
                               LookaheadSpec::gaussian(2.5)}) {
        double prev = lookahead_value(spec, 1);
        REQUIRE(prev >= 0.0);
        for (int n = 2; n <= 50; ++n) {
            double v = lookahead_value(spec, n);
            REQUIRE(v >= 0.0);
            REQUIRE(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("lookahead graph weights future interactions") {
    // q0,q1 interact at slices 3 and 5; from t=2 with exponential sigma=1
    // the pair weighs 2^-1 + 2^-3 = 0.625.
    std::string text = "qubits 4\n";
    for (int t = 0; t < 6; ++t) {
        if (t) text += "--\n";
        text += (t == 3 || t == 5) ? "cx 0 1\n" : "cx 2 3\n";
    }
    Circuit c = parse_circuit(text);
    REQUIRE(c.depth() == 6);
    InteractionGraph g = lookahead_graph(c, 2, LookaheadSpec::exponential(1.0));
    REQUIRE(g.weight(0, 1).required == 0);
    REQUIRE(g.weight(0, 1).finite == Catch::Approx(0.625));
    REQUIRE(g.weight(2, 3).required == 1);
}

TEST_CASE("lookahead at the last slice has required flags only") {
    Circuit c = reference_circuit();
    int last = c.depth() - 1;
    InteractionGraph g = lookahead_graph(c, last, LookaheadSpec::exponential(1.0));
    InteractionGraph s = slice_graph(c, last);
    REQUIRE(g.edges().size() == s.edges().size());
    for (const auto& [e, w] : g.edges()) {
        REQUIRE(w.required == 1);
        REQUIRE(w.finite == 0.0);
        REQUIRE(s.weight(e.first, e.second).required == 1);
    }
}

TEST_CASE("unbounded constant lookahead counts future interactions") {
    Circuit c = reference_circuit();
    double inf = std::numeric_limits<double>::infinity();
    InteractionIndex index(c);
    for (int t = 0; t < c.depth(); ++t) {
        InteractionGraph g = lookahead_graph(c, index, t, LookaheadSpec::constant(inf));
        std::map<std::pair<int, int>, int> future;
        for (int m = t + 1; m < c.depth(); ++m)
            for (const auto& gate : c.slices[static_cast<std::size_t>(m)].gates)
                if (gate.two_qubit()) {
                    auto mm = std::minmax(gate.a, *gate.b);
                    future[{mm.first, mm.second}]++;
                }
        for (const auto& [e, w] : g.edges()) REQUIRE(w.finite == static_cast<double>(future[e]));
        for (const auto& [e, n] : future)
            REQUIRE(g.weight(e.first, e.second).finite == static_cast<double>(n));
    }
}

TEST_CASE("pointwise larger decay never shrinks a lookahead weight") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        Circuit c = gen_random(10, 0.3, 4, rng(), 10);
        InteractionIndex index(c);
        for (int t = 0; t < c.depth(); ++t) {
            InteractionGraph lo = lookahead_graph(c, index, t, LookaheadSpec::exponential(0.5));
            InteractionGraph hi = lookahead_graph(c, index, t, LookaheadSpec::exponential(2.0));
            for (const auto& [e, w] : lo.edges())
                REQUIRE(hi.weight(e.first, e.second).finite >= w.finite - 1e-12);
        }
    }
}

TEST_CASE("lookahead graphs have non-negative finite weights") {
    Circuit c = gen_cuccaro(10, 12);
    InteractionIndex index(c);
    for (int t = 0; t < c.depth(); ++t) {
        InteractionGraph g = lookahead_graph(c, index, t, LookaheadSpec::gaussian(1.5));
        for (const auto& [e, w] : g.edges()) REQUIRE(w.finite >= 0.0);
    }
}

TEST_CASE("exponential with small sigma dominates later interactions") {
    // With sigma <= 1, an interaction at distance d outweighs the sum of
    // any single pair's interactions strictly after d.
    std::mt19937_64 rng(23);
    for (double sigma : {0.5, 1.0}) {
        LookaheadSpec spec = LookaheadSpec::exponential(sigma);
        for (int trial = 0; trial < 10; ++trial) {
            int T = 2 + static_cast<int>(rng() % 40);
            int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(T));
            double sum_after = 0.0;
            for (int m = d + 1; m <= T; ++m) sum_after += lookahead_value(spec, m);
            REQUIRE(lookahead_value(spec, d) >= sum_after);
        }
    }
}

TEST_CASE("graph dump is stable") {
    InteractionGraph g(4);
    g.add(2, 0, {1, 0.5});
    g.add(1, 3, {0, 2.0});
    REQUIRE(dump_graph(g) == "0 2 1 0.5\n1 3 0 2\n");
}

TEST_CASE("self-loops are rejected") {
    InteractionGraph g(4);
    REQUIRE_THROWS_AS(g.add(1, 1, {0, 1.0}), Error);
}
