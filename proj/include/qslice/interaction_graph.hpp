#pragma once

// Interaction graphs over circuit qubits: the whole-circuit graph, per-slice
// graphs, and per-slice graphs with decayed future-interaction weights.

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "qslice/circuit.hpp"
#include "qslice/weight.hpp"

namespace qslice {

class InteractionGraph {
public:
    using EdgeMap = std::map<std::pair<int, int>, Weight>;

    explicit InteractionGraph(int n = 0) : n_(n) {}

    int size() const { return n_; }

    void add(int a, int b, Weight w) {
        if (a == b) throw Error("self-loop on vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n_ || b >= n_)
            throw Error("edge endpoint out of range");
        if (a > b) std::swap(a, b);
        edges_[{a, b}] += w;
    }

    Weight weight(int a, int b) const {
        if (a > b) std::swap(a, b);
        auto it = edges_.find({a, b});
        return it == edges_.end() ? Weight{} : it->second;
    }

    const EdgeMap& edges() const { return edges_; }

    bool operator==(const InteractionGraph&) const = default;

private:
    int n_;
    EdgeMap edges_;
};

// Edge weight = number of two-qubit gates on that pair over the whole circuit.
inline InteractionGraph total_interaction_graph(const Circuit& c) {
    InteractionGraph g(c.width);
    for (const auto& s : c.slices)
        for (const auto& gate : s.gates)
            if (gate.two_qubit()) g.add(gate.a, *gate.b, {0, 1.0});
    return g;
}

// Edges of a single slice carry a hard co-location flag; their finite
// component is 1 so that slice graphs sum to the total interaction graph.
inline InteractionGraph slice_graph(const Circuit& c, int t) {
    if (t < 0 || t >= c.depth())
        throw Error("slice index " + std::to_string(t) + " out of range");
    InteractionGraph g(c.width);
    for (const auto& gate : c.slices[static_cast<std::size_t>(t)].gates)
        if (gate.two_qubit()) g.add(gate.a, *gate.b, {1, 1.0});
    return g;
}

enum class LookaheadKind { constant, exponential, gaussian };

struct LookaheadSpec {
    LookaheadKind kind = LookaheadKind::exponential;
    double sigma = 1.0;

    static LookaheadSpec constant(double sigma) { return {LookaheadKind::constant, sigma}; }
    static LookaheadSpec exponential(double sigma) { return {LookaheadKind::exponential, sigma}; }
    static LookaheadSpec gaussian(double sigma) { return {LookaheadKind::gaussian, sigma}; }

    std::string name() const {
        switch (kind) {
            case LookaheadKind::constant: return "constant";
            case LookaheadKind::exponential: return "expon";
            case LookaheadKind::gaussian: return "gauss";
        }
        return "?";
    }
};

// Decay applied to an interaction n slices ahead. Monotone non-increasing
// and non-negative for every supported kind.
inline double lookahead_value(const LookaheadSpec& spec, int n) {
    if (n < 1) throw Error("lookahead distance must be >= 1");
    switch (spec.kind) {
        case LookaheadKind::constant:
            if (spec.sigma < 0) throw Error("constant lookahead needs sigma >= 0");
            return static_cast<double>(n) <= spec.sigma ? 1.0 : 0.0;
        case LookaheadKind::exponential:
            if (!(spec.sigma > 0)) throw Error("exponential lookahead needs sigma > 0");
            return std::exp2(-static_cast<double>(n) / spec.sigma);
        case LookaheadKind::gaussian:
            if (!(spec.sigma > 0)) throw Error("gaussian lookahead needs sigma > 0");
            return std::exp(-static_cast<double>(n) * n / (spec.sigma * spec.sigma));
    }
    throw Error("unknown lookahead kind");
}

// Per-pair ascending lists of the slices where the pair interacts.
// Built once per circuit so each lookahead graph costs O(pairs in window).
class InteractionIndex {
public:
    explicit InteractionIndex(const Circuit& c) {
        for (int t = 0; t < c.depth(); ++t)
            for (const auto& g : c.slices[static_cast<std::size_t>(t)].gates)
                if (g.two_qubit()) {
                    auto key = std::minmax(g.a, *g.b);
                    slices_[{key.first, key.second}].push_back(t);
                }
    }

    const std::map<std::pair<int, int>, std::vector<int>>& by_pair() const { return slices_; }

private:
    std::map<std::pair<int, int>, std::vector<int>> slices_;
};

// Slice graph of t with hard flags on current edges plus, for every pair,
// the decayed count of its interactions after t. Contributions below
// `cutoff` are dropped; the decay is monotone so the scan stops there.
inline InteractionGraph lookahead_graph(const Circuit& c, const InteractionIndex& index, int t,
                                        const LookaheadSpec& spec, double cutoff = 1e-12) {
    if (t < 0 || t >= c.depth())
        throw Error("slice index " + std::to_string(t) + " out of range");
    InteractionGraph g(c.width);
    for (const auto& gate : c.slices[static_cast<std::size_t>(t)].gates)
        if (gate.two_qubit()) g.add(gate.a, *gate.b, {1, 0.0});
    for (const auto& [pair, when] : index.by_pair()) {
        double w = 0.0;
        auto it = std::upper_bound(when.begin(), when.end(), t);
        for (; it != when.end(); ++it) {
            double d = lookahead_value(spec, *it - t);
            if (d < cutoff) break;
            w += d;
        }
        if (w > 0.0) g.add(pair.first, pair.second, {0, w});
    }
    return g;
}

inline InteractionGraph lookahead_graph(const Circuit& c, int t, const LookaheadSpec& spec,
                                        double cutoff = 1e-12) {
    return lookahead_graph(c, InteractionIndex(c), t, spec, cutoff);
}

// Edge-list dump (`a b required finite`), one line per edge, for golden tests.
inline std::string dump_graph(const InteractionGraph& g) {
    std::ostringstream out;
    for (const auto& [e, w] : g.edges()) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.17g", w.finite);
        out << e.first << ' ' << e.second << ' ' << w.required << ' ' << buf << "\n";
    }
    return out.str();
}

} // namespace qslice
