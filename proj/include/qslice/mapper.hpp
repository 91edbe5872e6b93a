#pragma once

// Path construction (one valid assignment per slice), non-local
// communication between consecutive assignments via cycle extraction,
// movement insertion, and latency estimates.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qslice/circuit.hpp"
#include "qslice/interaction_graph.hpp"
#include "qslice/machine.hpp"
#include "qslice/partitioner.hpp"

namespace qslice {

struct MoveCycle {
    std::vector<int> clusters; // visited in order; movers[i]: clusters[i] -> clusters[i+1 mod L]
    std::vector<int> movers;
    int length() const { return static_cast<int>(clusters.size()); }
};

struct ResidualMove {
    int mover = 0;
    int from_cluster = 0;
    int to_cluster = 0;
    int idle_partner = 0;
};

// One transition's moves: rotation cycles plus lone moves resolved by
// swapping with an idle slot-holder. A length-L cycle costs L-1 swaps,
// each residual move costs 1.
struct MoveSet {
    std::vector<MoveCycle> cycles;
    // Residual edges grouped into maximal chains; moves within one chain
    // share a bubbling idle partner and are realized back to front.
    std::vector<std::vector<ResidualMove>> residual_chains;

    std::int64_t cost() const {
        std::int64_t c = 0;
        for (const auto& cy : cycles) c += cy.length() - 1;
        for (const auto& ch : residual_chains) c += static_cast<std::int64_t>(ch.size());
        return c;
    }

    std::vector<ResidualMove> residual_moves() const {
        std::vector<ResidualMove> out;
        for (const auto& ch : residual_chains) out.insert(out.end(), ch.begin(), ch.end());
        return out;
    }

    // Parallel swap layers: cycles and chains advance independently, the
    // swaps inside one cycle or chain are sequential.
    std::vector<std::vector<std::pair<int, int>>> layers() const {
        std::vector<std::vector<std::pair<int, int>>> out;
        auto put = [&](std::size_t layer, int x, int y) {
            if (out.size() <= layer) out.resize(layer + 1);
            out[layer].push_back({std::min(x, y), std::max(x, y)});
        };
        for (const auto& cy : cycles)
            for (std::size_t j = 0; j + 1 < cy.movers.size(); ++j)
                put(j, cy.movers[j], cy.movers[j + 1]);
        for (const auto& ch : residual_chains)
            for (std::size_t j = 0; j < ch.size(); ++j)
                put(j, ch[ch.size() - 1 - j].mover, ch[ch.size() - 1 - j].idle_partner);
        for (auto& l : out) std::sort(l.begin(), l.end());
        return out;
    }

    std::int64_t rounds() const {
        std::int64_t r = 0;
        for (const auto& cy : cycles) r = std::max<std::int64_t>(r, cy.length() - 1);
        for (const auto& ch : residual_chains) r = std::max<std::int64_t>(r, static_cast<std::int64_t>(ch.size()));
        return r;
    }
};

namespace detail {

// Dense k x k count matrix of cluster-to-cluster moves.
struct MoveCounts {
    int k = 0;
    std::vector<int> m;
    explicit MoveCounts(int clusters) : k(clusters), m(static_cast<std::size_t>(clusters) * clusters, 0) {}
    int& at(int i, int j) { return m[static_cast<std::size_t>(i) * k + j]; }
    int at(int i, int j) const { return m[static_cast<std::size_t>(i) * k + j]; }
    int edges() const {
        int e = 0;
        for (int v : m) e += v;
        return e;
    }
};

// True when the remaining edges form no directed cycle (they can then all
// be realized as idle swaps).
inline bool acyclic(const MoveCounts& m) {
    std::vector<int> indeg(static_cast<std::size_t>(m.k), 0);
    for (int i = 0; i < m.k; ++i)
        for (int j = 0; j < m.k; ++j)
            if (m.at(i, j) > 0) indeg[static_cast<std::size_t>(j)] += m.at(i, j);
    std::vector<int> order;
    std::vector<char> dead(static_cast<std::size_t>(m.k), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < m.k; ++v) {
            if (dead[static_cast<std::size_t>(v)] || indeg[static_cast<std::size_t>(v)] != 0) continue;
            dead[static_cast<std::size_t>(v)] = 1;
            changed = true;
            for (int j = 0; j < m.k; ++j)
                if (m.at(v, j) > 0) indeg[static_cast<std::size_t>(j)] -= m.at(v, j);
        }
    }
    for (int v = 0; v < m.k; ++v)
        if (!dead[static_cast<std::size_t>(v)]) return false;
    return true;
}

// Greedy packing, shortest cycles first with lexicographic tie-breaks.
// Used to seed the exact search; always leaves an acyclic remainder.
inline std::vector<std::vector<int>> greedy_packing(MoveCounts m) {
    std::vector<std::vector<int>> cycles;
    for (int len = 2; len <= m.k; ++len) {
        for (;;) {
            // The lexicographically first cycle of exactly `len` clusters,
            // listed from its smallest member.
            std::vector<int> path;
            auto dfs = [&](auto&& self, int v) -> bool {
                if (static_cast<int>(path.size()) == len) {
                    if (m.at(v, path.front()) > 0) {
                        m.at(v, path.front())--;
                        return true;
                    }
                    return false;
                }
                for (int j = path.front() + 1; j < m.k; ++j) {
                    if (m.at(v, j) <= 0) continue;
                    bool used = false;
                    for (int u : path)
                        if (u == j) used = true;
                    if (used) continue;
                    m.at(v, j)--;
                    path.push_back(j);
                    if (self(self, j)) return true;
                    path.pop_back();
                    m.at(v, j)++;
                }
                return false;
            };
            bool found = false;
            for (int s = 0; s < m.k && !found; ++s) {
                path = {s};
                found = dfs(dfs, s);
            }
            if (!found) break;
            cycles.push_back(path);
        }
    }
    return cycles;
}

// Bounded exact search for a maximum cycle packing. Seeded with the greedy
// answer, so the result is never worse than greedy, is deterministic, and
// is optimal whenever the search completes within budget.
struct PackSearch {
    MoveCounts m;
    std::vector<std::vector<int>> current;
    std::vector<std::vector<int>> best;
    std::int64_t budget = 4'000'000;

    explicit PackSearch(MoveCounts counts) : m(std::move(counts)) {}

    void run() {
        best = greedy_packing(m);
        dfs();
    }

    void dfs() {
        if (--budget <= 0) return;
        int ei = -1, ej = -1;
        for (int i = 0; i < m.k && ei < 0; ++i)
            for (int j = 0; j < m.k; ++j)
                if (m.at(i, j) > 0) {
                    ei = i;
                    ej = j;
                    break;
                }
        if (ei < 0) {
            if (current.size() > best.size()) best = current;
            return;
        }
        // With 2-cycles pre-extracted, every further cycle needs >= 3 edges.
        if (current.size() + static_cast<std::size_t>(m.edges()) / 3 <= best.size()) return;

        // Use edge (ei,ej) in a cycle: extend by a simple path ej -> ei.
        m.at(ei, ej)--;
        std::vector<int> path = {ei, ej};
        extend(path);
        m.at(ei, ej)++;

        // Or leave it as a residual move.
        m.at(ei, ej)--;
        dfs();
        m.at(ei, ej)++;
    }

    void extend(std::vector<int>& path) {
        if (--budget <= 0) return;
        int v = path.back();
        if (m.at(v, path.front()) > 0) {
            m.at(v, path.front())--;
            current.push_back(path);
            dfs();
            current.pop_back();
            m.at(v, path.front())++;
        }
        for (int j = 0; j < m.k; ++j) {
            if (m.at(v, j) <= 0 || j == path.front()) continue;
            bool used = false;
            for (int u : path)
                if (u == j) used = true;
            if (used) continue;
            m.at(v, j)--;
            path.push_back(j);
            extend(path);
            path.pop_back();
            m.at(v, j)++;
        }
    }
};

inline std::vector<int> canonical_cycle(std::vector<int> c) {
    auto mn = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), mn, c.end());
    return c;
}

} // namespace detail

// Moves needed to turn `from` into `to`: a directed multigraph on clusters
// with one edge per relocating circuit qubit is decomposed into as many
// rotation cycles as possible (2-cycles first), and what remains becomes
// chains of swaps with idle slot-holders.
inline MoveSet comm_cost(const Assignment& from, const Assignment& to) {
    if (from.slots() != to.slots() || from.clusters() != to.clusters() || from.width() != to.width())
        throw Error("mismatched slot-holder sets");
    const int k = from.clusters();
    detail::MoveCounts counts(k);
    std::map<std::pair<int, int>, std::vector<int>> movers; // (from,to) -> qubits, ascending
    for (int q = 0; q < from.width(); ++q) {
        int cf = from.cluster_of(q), ct = to.cluster_of(q);
        if (cf == ct) continue;
        counts.at(cf, ct)++;
        movers[{cf, ct}].push_back(q);
    }

    MoveSet ms;
    std::vector<std::vector<int>> packed;
    // All 2-cycles come out first; extracting one never hurts the optimum.
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            int t = std::min(counts.at(i, j), counts.at(j, i));
            for (int r = 0; r < t; ++r) packed.push_back({i, j});
            counts.at(i, j) -= t;
            counts.at(j, i) -= t;
        }
    // Exact search (bounded, deterministic) for the rest.
    detail::PackSearch search(counts);
    search.run();
    for (auto& c : search.best) {
        packed.push_back(detail::canonical_cycle(c));
        for (std::size_t i = 0; i < c.size(); ++i)
            counts.at(c[i], c[(i + 1) % c.size()])--;
    }
    std::sort(packed.begin(), packed.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });

    auto take_mover = [&](int i, int j) {
        auto& v = movers[{i, j}];
        int q = v.front();
        v.erase(v.begin());
        return q;
    };
    for (const auto& c : packed) {
        MoveCycle cy;
        cy.clusters = c;
        for (std::size_t i = 0; i < c.size(); ++i)
            cy.movers.push_back(take_mover(c[i], c[(i + 1) % c.size()]));
        ms.cycles.push_back(std::move(cy));
    }

    // Remaining edges are acyclic; walk them into maximal chains.
    std::vector<char> idle_used(static_cast<std::size_t>(from.slots()), 0);
    for (;;) {
        int si = -1, sj = -1;
        for (int i = 0; i < k && si < 0; ++i)
            for (int j = 0; j < k; ++j)
                if (counts.at(i, j) > 0) {
                    bool has_pred = false;
                    for (int p = 0; p < k; ++p)
                        if (counts.at(p, i) > 0) has_pred = true;
                    if (has_pred) continue; // start chains at sources
                    si = i;
                    sj = j;
                    break;
                }
        if (si < 0) {
            // no source found: either done or (with a truncated search) a
            // leftover loop; fall back to the first remaining edge
            for (int i = 0; i < k && si < 0; ++i)
                for (int j = 0; j < k; ++j)
                    if (counts.at(i, j) > 0) {
                        si = i;
                        sj = j;
                        break;
                    }
            if (si < 0) break;
        }
        std::vector<ResidualMove> chain;
        int i = si, j = sj;
        for (;;) {
            counts.at(i, j)--;
            chain.push_back({take_mover(i, j), i, j, -1});
            bool extended = false;
            for (int nx = 0; nx < k; ++nx)
                if (counts.at(j, nx) > 0) {
                    i = j;
                    j = nx;
                    extended = true;
                    break;
                }
            if (!extended) break;
        }
        // A bubbling idle from the chain's final cluster partners every move.
        int dest = chain.back().to_cluster;
        int idle = -1;
        for (int s = from.width(); s < from.slots(); ++s)
            if (!idle_used[static_cast<std::size_t>(s)] && from.cluster_of(s) == dest) {
                idle = s;
                break;
            }
        if (idle < 0) throw Error("no idle slot-holder available for residual move");
        idle_used[static_cast<std::size_t>(idle)] = 1;
        for (auto& mv : chain) mv.idle_partner = idle;
        ms.residual_chains.push_back(std::move(chain));
    }
    return ms;
}

enum class PathAlgorithm { static_oee, fgp_oee, fgp_roee };

inline std::string algorithm_name(PathAlgorithm a) {
    switch (a) {
        case PathAlgorithm::static_oee: return "static-oee";
        case PathAlgorithm::fgp_oee: return "fgp-oee";
        case PathAlgorithm::fgp_roee: return "fgp-roee";
    }
    return "?";
}

struct Path {
    PathAlgorithm algorithm = PathAlgorithm::fgp_roee;
    MachineSpec machine;
    std::vector<Assignment> assignments; // one per slice, all valid
};

inline std::vector<MoveSet> transition_move_sets(const Path& p) {
    std::vector<MoveSet> out;
    for (std::size_t t = 1; t < p.assignments.size(); ++t)
        out.push_back(comm_cost(p.assignments[t - 1], p.assignments[t]));
    return out;
}

inline std::int64_t path_cost(const Path& p) {
    std::int64_t c = 0;
    for (const auto& ms : transition_move_sets(p)) c += ms.cost();
    return c;
}

namespace detail {

// Minimal perturbation of the static assignment for one slice: each
// violated pair pulls one endpoint over, swapping with an idle slot-holder
// when possible and otherwise with a qubit that does not interact in this
// slice.
inline Assignment repair_static(const Assignment& base,
                                const std::vector<std::pair<int, int>>& pairs) {
    Assignment asg = base;
    auto pair_endpoint = [&](int x) {
        for (const auto& [a, b] : pairs)
            if (a == x || b == x) return true;
        return false;
    };
    auto satisfied_here = [&](int x) {
        for (const auto& [a, b] : pairs)
            if ((a == x || b == x) && asg.cluster_of(a) == asg.cluster_of(b)) return true;
        return false;
    };
    auto tier = [&](int x) {
        if (asg.is_idle(x)) return 0;
        if (!pair_endpoint(x)) return 1;
        if (!satisfied_here(x)) return 2;
        return 3; // never displace a satisfied pair
    };
    for (bool again = true; again;) {
        again = false;
        for (const auto& [a, b] : pairs) {
            if (asg.cluster_of(a) == asg.cluster_of(b)) continue;
            int bt = 4, bc = -1, bx = -1, bm = -1;
            for (auto [mover, anchor] : {std::pair{a, b}, std::pair{b, a}}) {
                int c = asg.cluster_of(anchor);
                for (int x : asg.members(c)) {
                    if (x == anchor) continue;
                    int t = tier(x);
                    if (t >= 3) continue;
                    if (t < bt || (t == bt && c < bc) || (t == bt && c == bc && x < bx)) {
                        bt = t;
                        bc = c;
                        bx = x;
                        bm = mover;
                    }
                }
            }
            if (bx >= 0) {
                asg.exchange(bm, bx);
            } else {
                // both clusters blocked: move the pair to the first cluster
                // with two displaceable slot-holders
                bool fixed = false;
                for (int c = 0; c < asg.clusters() && !fixed; ++c) {
                    std::vector<int> free;
                    for (int x : asg.members(c))
                        if (x != a && x != b && tier(x) < 3) free.push_back(x);
                    if (free.size() >= 2) {
                        asg.exchange(a, free[0]);
                        asg.exchange(b, free[1]);
                        fixed = true;
                    }
                }
                if (!fixed) throw Error("slice constraints do not fit the machine");
            }
            again = true;
        }
    }
    return asg;
}

inline void check_slice_fits(const MachineSpec& m, std::size_t pairs) {
    std::int64_t room = static_cast<std::int64_t>(m.clusters) * (m.capacity / 2);
    if (static_cast<std::int64_t>(pairs) > room)
        throw CapacityError("slice needs " + std::to_string(pairs) +
                            " co-located pairs but machine fits " + std::to_string(room));
}

} // namespace detail

// Owner-computes baseline: one whole-circuit partition, re-repaired from
// scratch for every slice, so displaced qubits bounce back home.
inline Path static_path(const Circuit& c, const MachineSpec& m) {
    m.validate();
    Assignment s = oee(total_interaction_graph(c), Assignment::initial(m, c.width));
    Path p{PathAlgorithm::static_oee, m, {}};
    for (int t = 0; t < c.depth(); ++t) {
        auto pairs = required_pairs(slice_graph(c, t));
        detail::check_slice_fits(m, pairs.size());
        p.assignments.push_back(detail::repair_static(s, pairs));
    }
    return p;
}

// Fine-grained partitioning: each slice's assignment comes from running the
// (relaxed) exchange partitioner on that slice's lookahead graph, seeded
// with the previous assignment; slice 0 is seeded with the static
// assignment.
inline Path fgp_path(const Circuit& c, const MachineSpec& m, const LookaheadSpec& d,
                     bool relaxed = true) {
    m.validate();
    InteractionIndex index(c);
    Assignment prev = oee(total_interaction_graph(c), Assignment::initial(m, c.width));
    Path p{relaxed ? PathAlgorithm::fgp_roee : PathAlgorithm::fgp_oee, m, {}};
    for (int t = 0; t < c.depth(); ++t) {
        InteractionGraph g = lookahead_graph(c, index, t, d);
        auto pairs = required_pairs(g);
        detail::check_slice_fits(m, pairs.size());
        if (relaxed) {
            prev = roee(g, prev);
        } else {
            prev = oee(g, prev);
            if (!is_valid(prev, g)) detail::repair_required(prev, pairs);
        }
        p.assignments.push_back(prev);
    }
    return p;
}

struct Transition {
    int before_slice = 0; // original slice index the moves precede
    std::int64_t cost = 0;
    std::int64_t rounds = 0;
};

struct MappedCircuit {
    Circuit circuit; // original slices interleaved with movement layers
    int logical_width = 0;
    int original_depth = 0;
    std::vector<char> movement_layer; // flag per slice of `circuit`
    std::vector<Transition> transitions;
    Assignment initial;
    Assignment final_placement;

    std::int64_t total_cost() const {
        std::int64_t c = 0;
        for (const auto& t : transitions) c += t.cost;
        return c;
    }
    std::int64_t total_rounds() const {
        std::int64_t r = 0;
        for (const auto& t : transitions) r += t.rounds;
        return r;
    }
};

// Interleaves movement layers realizing each transition before its slice.
// Checks along the way that every two-qubit gate runs with co-located
// operands.
inline MappedCircuit insert_movement(const Circuit& c, const Path& p) {
    if (static_cast<int>(p.assignments.size()) != c.depth())
        throw Error("path length does not match circuit depth");
    MappedCircuit mc;
    mc.logical_width = c.width;
    mc.original_depth = c.depth();
    mc.circuit.width = p.machine.size();
    if (c.depth() == 0) {
        mc.initial = Assignment::initial(p.machine, c.width);
        mc.final_placement = mc.initial;
        return mc;
    }
    mc.initial = p.assignments.front();
    mc.final_placement = p.assignments.back();
    for (int t = 0; t < c.depth(); ++t) {
        const Assignment& asg = p.assignments[static_cast<std::size_t>(t)];
        if (t > 0) {
            MoveSet ms = comm_cost(p.assignments[static_cast<std::size_t>(t) - 1], asg);
            auto layers = ms.layers();
            mc.transitions.push_back({t, ms.cost(), static_cast<std::int64_t>(layers.size())});
            for (const auto& layer : layers) {
                TimeSlice slice;
                for (auto [x, y] : layer) slice.gates.push_back({"swap-nl", x, y, {}});
                mc.circuit.slices.push_back(std::move(slice));
                mc.movement_layer.push_back(1);
            }
        }
        for (const auto& g : c.slices[static_cast<std::size_t>(t)].gates)
            if (g.two_qubit() && asg.cluster_of(g.a) != asg.cluster_of(*g.b))
                throw Error("path is not valid for slice " + std::to_string(t));
        mc.circuit.slices.push_back(c.slices[static_cast<std::size_t>(t)]);
        mc.movement_layer.push_back(0);
    }
    detail::canonicalize(mc.circuit);
    return mc;
}

inline std::string emit_mapped(const MappedCircuit& mc) {
    std::ostringstream out;
    out << "# width=" << mc.logical_width << "\n";
    out << "qubits " << mc.circuit.width << "\n";
    std::size_t next_transition = 0;
    for (std::size_t t = 0; t < mc.circuit.slices.size(); ++t) {
        if (t > 0) out << "--\n";
        if (mc.movement_layer[t] && (t == 0 || !mc.movement_layer[t - 1])) {
            const Transition& tr = mc.transitions[next_transition++];
            out << "## transition " << tr.before_slice << " cost=" << tr.cost << "\n";
        }
        std::vector<Gate> gs = mc.circuit.slices[t].gates;
        std::sort(gs.begin(), gs.end(), detail::gate_less);
        for (const auto& g : gs) {
            out << g.kind << ' ' << g.a;
            if (g.b) out << ' ' << *g.b;
            if (g.param) out << " @" << detail::format_param(*g.param);
            out << "\n";
        }
    }
    return out.str();
}

struct MappedFileInfo {
    int width = 0;             // machine slots in the file
    int logical_width = 0;     // from the `# width=` annotation when present
    int depth_mapped = 0;
    int original_depth = 0;
    std::int64_t total_cost = 0;
    std::int64_t rounds = 0;
    std::int64_t annotated_cost = 0;
};

inline MappedFileInfo parse_mapped(const std::string& text) {
    MappedFileInfo info;
    Circuit c = parse_circuit(text);
    info.width = c.width;
    info.depth_mapped = c.depth();

    bool any_annotation = false;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::string a, b;
            ls >> a >> b;
            if (a == "##" && b == "transition") {
                int idx;
                std::string costtok;
                if (ls >> idx >> costtok && costtok.rfind("cost=", 0) == 0) {
                    info.annotated_cost += std::stoll(costtok.substr(5));
                    any_annotation = true;
                }
            } else if (a == "#" && b.rfind("width=", 0) == 0) {
                info.logical_width = std::stoi(b.substr(6));
            }
        }
    }

    for (const auto& s : c.slices) {
        bool movement = !s.gates.empty();
        for (const auto& g : s.gates)
            if (g.kind != "swap-nl") movement = false;
        if (movement) {
            info.total_cost += static_cast<std::int64_t>(s.gates.size());
            info.rounds += 1;
        } else {
            info.original_depth += 1;
        }
    }
    if (info.total_cost > 0 && !any_annotation)
        throw Error("mapped file has movement layers but no transition annotations");
    if (any_annotation && info.annotated_cost != info.total_cost)
        throw Error("transition annotations disagree with swap-nl count");
    if (info.logical_width == 0) info.logical_width = info.width;
    return info;
}

struct LatencyEstimate {
    double sequential_ns = 0.0;
    double parallel_ns = 0.0;
    double gate_time_ns = 300.0;
    double multiplier = 1.0;
};

// Sequential: every non-local swap serializes. Parallel: independent
// cycles advance together, so a transition costs its longest chain.
inline LatencyEstimate latency_estimate(int depth, std::int64_t total_moves, std::int64_t rounds,
                                        double multiplier, double gate_time_ns = 300.0) {
    if (multiplier < 1.0) throw Error("comm multiplier must be >= 1");
    LatencyEstimate e;
    e.gate_time_ns = gate_time_ns;
    e.multiplier = multiplier;
    e.sequential_ns = depth * gate_time_ns + static_cast<double>(total_moves) * multiplier * gate_time_ns;
    e.parallel_ns = depth * gate_time_ns + static_cast<double>(rounds) * multiplier * gate_time_ns;
    return e;
}

} // namespace qslice
