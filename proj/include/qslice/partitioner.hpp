#pragma once

// Capacity-bounded k-way partitioning by pairwise exchange: cut weights,
// KL-style exchange gains, full OEE passes that realize the best prefix of
// a tentative exchange sequence, and the relaxed variant that stops as soon
// as every hard-flagged edge is internal to a cluster.

#include <utility>
#include <vector>

#include "qslice/interaction_graph.hpp"
#include "qslice/machine.hpp"
#include "qslice/weight.hpp"

namespace qslice {

inline Weight cut_weight(const InteractionGraph& g, const Assignment& a) {
    if (g.size() > a.slots()) throw Error("assignment does not cover all graph vertices");
    Weight w;
    for (const auto& [e, ew] : g.edges())
        if (a.cluster_of(e.first) != a.cluster_of(e.second)) w += ew;
    return w;
}

// Hard constraint edges of a graph, ascending. At most one per vertex when
// the graph comes from a time slice.
inline std::vector<std::pair<int, int>> required_pairs(const InteractionGraph& g) {
    std::vector<std::pair<int, int>> out;
    for (const auto& [e, w] : g.edges())
        if (w.required > 0) out.push_back(e);
    return out;
}

inline bool is_valid(const Assignment& a, const InteractionGraph& g) {
    for (const auto& [e, w] : g.edges())
        if (w.required > 0 && a.cluster_of(e.first) != a.cluster_of(e.second)) return false;
    return true;
}

struct Exchange {
    int a = 0;
    int b = 0;
    Weight gain;
};
using ExchangeLog = std::vector<Exchange>;

namespace detail {

// cost[v][c] = total weight between v and cluster c, kept incrementally.
class CostTable {
public:
    CostTable(const InteractionGraph& g, const Assignment& a) : graph_(&g) {
        adj_.resize(static_cast<std::size_t>(a.slots()));
        for (const auto& [e, w] : g.edges()) {
            adj_[static_cast<std::size_t>(e.first)].push_back({e.second, w});
            adj_[static_cast<std::size_t>(e.second)].push_back({e.first, w});
        }
        cost_.assign(static_cast<std::size_t>(a.slots()),
                     std::vector<Weight>(static_cast<std::size_t>(a.clusters())));
        for (int v = 0; v < a.slots(); ++v)
            for (const auto& [u, w] : adj_[static_cast<std::size_t>(v)])
                cost_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a.cluster_of(u))] += w;
    }

    Weight gain(const Assignment& a, int x, int y) const {
        int cx = a.cluster_of(x), cy = a.cluster_of(y);
        const auto& rx = cost_[static_cast<std::size_t>(x)];
        const auto& ry = cost_[static_cast<std::size_t>(y)];
        return rx[static_cast<std::size_t>(cy)] - rx[static_cast<std::size_t>(cx)] +
               ry[static_cast<std::size_t>(cx)] - ry[static_cast<std::size_t>(cy)] -
               2 * graph_->weight(x, y);
    }

    // Call with the assignment state *before* exchanging x and y.
    void apply_exchange(const Assignment& before, int x, int y) {
        int cx = before.cluster_of(x), cy = before.cluster_of(y);
        for (const auto& [u, w] : adj_[static_cast<std::size_t>(x)]) {
            auto& row = cost_[static_cast<std::size_t>(u)];
            row[static_cast<std::size_t>(cx)] -= w;
            row[static_cast<std::size_t>(cy)] += w;
        }
        for (const auto& [u, w] : adj_[static_cast<std::size_t>(y)]) {
            auto& row = cost_[static_cast<std::size_t>(u)];
            row[static_cast<std::size_t>(cy)] -= w;
            row[static_cast<std::size_t>(cx)] += w;
        }
    }

private:
    const InteractionGraph* graph_;
    std::vector<std::vector<std::pair<int, Weight>>> adj_;
    std::vector<std::vector<Weight>> cost_;
};

// Best unlocked cross-cluster pair by (gain, then smallest ids).
inline bool best_pair(const Assignment& a, const CostTable& table,
                      const std::vector<char>& locked, Exchange& out) {
    bool found = false;
    for (int x = 0; x < a.slots(); ++x) {
        if (locked[static_cast<std::size_t>(x)]) continue;
        for (int y = x + 1; y < a.slots(); ++y) {
            if (locked[static_cast<std::size_t>(y)]) continue;
            if (a.cluster_of(x) == a.cluster_of(y)) continue;
            Weight gn = table.gain(a, x, y);
            if (!found || gn > out.gain) {
                out = {x, y, gn};
                found = true;
            }
        }
    }
    return found;
}

inline int required_partner(const std::vector<std::pair<int, int>>& pairs, int v) {
    for (const auto& [a, b] : pairs) {
        if (a == v) return b;
        if (b == v) return a;
    }
    return -1;
}

// Deterministic sweep that co-locates every hard pair: for each violated
// pair, exchange one endpoint with an idle or unconstrained slot-holder of
// the other endpoint's cluster. Requires the pairs to fit the machine.
inline void repair_required(Assignment& asg, const std::vector<std::pair<int, int>>& pairs) {
    auto satisfied_here = [&](int x) {
        int p = required_partner(pairs, x);
        return p >= 0 && asg.cluster_of(p) == asg.cluster_of(x);
    };
    auto eligible = [&](int x) { return asg.is_idle(x) || !satisfied_here(x); };

    for (bool progressed = true; progressed;) {
        progressed = false;
        for (const auto& [a, b] : pairs) {
            if (asg.cluster_of(a) == asg.cluster_of(b)) continue;
            bool fixed = false;
            for (auto [mover, anchor] : {std::pair{a, b}, std::pair{b, a}}) {
                for (int x : asg.members(asg.cluster_of(anchor))) {
                    if (x == anchor || !eligible(x)) continue;
                    asg.exchange(mover, x);
                    fixed = true;
                    break;
                }
                if (fixed) break;
            }
            if (!fixed) {
                // Both clusters packed with satisfied pairs: relocate the
                // whole pair into the first cluster with two free slots.
                for (int c = 0; c < asg.clusters() && !fixed; ++c) {
                    std::vector<int> free;
                    for (int x : asg.members(c))
                        if (x != a && x != b && eligible(x)) free.push_back(x);
                    if (free.size() >= 2) {
                        asg.exchange(a, free[0]);
                        asg.exchange(b, free[1]);
                        fixed = true;
                    }
                }
            }
            if (!fixed) throw Error("slice constraints do not fit the machine");
            progressed = true;
        }
    }
}

inline void check_feasible(const InteractionGraph& g, const Assignment& seed) {
    auto pairs = required_pairs(g);
    std::int64_t room = static_cast<std::int64_t>(seed.clusters()) * (seed.capacity() / 2);
    if (static_cast<std::int64_t>(pairs.size()) > room)
        throw CapacityError("slice needs " + std::to_string(pairs.size()) +
                            " co-located pairs but machine fits " + std::to_string(room));
}

} // namespace detail

// Cut-weight change from exchanging the clusters of x and y, computed
// incrementally from per-cluster totals. Positive means the cut shrinks.
inline Weight exchange_gain(const InteractionGraph& g, const Assignment& a, int x, int y) {
    if (a.cluster_of(x) == a.cluster_of(y)) throw Error("exchange within one cluster");
    detail::CostTable table(g, a);
    return table.gain(a, x, y);
}

// Overall Extreme Exchange: each pass tentatively exchanges the best pair
// (locking both) until no cross-cluster pair is unlocked, then permanently
// realizes the prefix of the sequence with the largest cumulative gain.
// Stops when no pass yields a positive prefix. Never increases the cut.
inline Assignment oee(const InteractionGraph& g, Assignment seed, ExchangeLog* log = nullptr) {
    if (g.size() > seed.slots()) throw Error("assignment does not cover all graph vertices");
    for (;;) {
        Assignment pass_start = seed;
        detail::CostTable table(g, seed);
        std::vector<char> locked(static_cast<std::size_t>(seed.slots()), 0);
        std::vector<Exchange> tentative;
        Exchange e;
        while (detail::best_pair(seed, table, locked, e)) {
            table.apply_exchange(seed, e.a, e.b);
            seed.exchange(e.a, e.b);
            locked[static_cast<std::size_t>(e.a)] = 1;
            locked[static_cast<std::size_t>(e.b)] = 1;
            tentative.push_back(e);
        }
        Weight run, best;
        std::size_t best_len = 0;
        for (std::size_t i = 0; i < tentative.size(); ++i) {
            run += tentative[i].gain;
            if (run > best) {
                best = run;
                best_len = i + 1;
            }
        }
        seed = pass_start;
        if (!best.positive()) return seed;
        for (std::size_t i = 0; i < best_len; ++i) {
            seed.exchange(tentative[i].a, tentative[i].b);
            if (log) log->push_back(tentative[i]);
        }
    }
}

// Relaxed OEE: the same exchange choices, but realized eagerly and halted
// the moment every hard-flagged edge is internal. If a full pass ends with
// violations left (greedy gains can stall), a direct repair sweep finishes
// the job.
inline Assignment roee(const InteractionGraph& g, Assignment seed, ExchangeLog* log = nullptr) {
    if (g.size() > seed.slots()) throw Error("assignment does not cover all graph vertices");
    detail::check_feasible(g, seed);
    auto pairs = required_pairs(g);
    auto valid = [&] {
        for (const auto& [a, b] : pairs)
            if (seed.cluster_of(a) != seed.cluster_of(b)) return false;
        return true;
    };
    if (valid()) return seed;

    detail::CostTable table(g, seed);
    std::vector<char> locked(static_cast<std::size_t>(seed.slots()), 0);
    Exchange e;
    while (detail::best_pair(seed, table, locked, e)) {
        table.apply_exchange(seed, e.a, e.b);
        seed.exchange(e.a, e.b);
        locked[static_cast<std::size_t>(e.a)] = 1;
        locked[static_cast<std::size_t>(e.b)] = 1;
        if (log) log->push_back(e);
        if (valid()) return seed;
    }
    detail::repair_required(seed, pairs);
    return seed;
}

} // namespace qslice
