#pragma once

// Independent oracles the implementation is checked against: breadth-first
// search over swap sequences for minimum transition cost, and exhaustive
// dynamic programming over per-slice assignments for optimal path cost.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "qslice/interaction_graph.hpp"
#include "qslice/machine.hpp"
#include "qslice/partitioner.hpp"

namespace qslice::testsupport {

// Minimum number of swaps turning `from` into `to` (circuit-qubit
// placements; idle slot-holders are interchangeable). BFS over swap
// sequences; swaps touch movers and idles only, which loses no optimal
// solution because any other participant would itself become displaced.
inline int min_swaps_oracle(const Assignment& from, const Assignment& to) {
    const int k = from.clusters();
    std::vector<int> movers;
    for (int q = 0; q < from.width(); ++q)
        if (from.cluster_of(q) != to.cluster_of(q)) movers.push_back(q);
    std::vector<int> idle_count(static_cast<std::size_t>(k), 0);
    for (int s = from.width(); s < from.slots(); ++s)
        idle_count[static_cast<std::size_t>(from.cluster_of(s))]++;

    std::vector<int> start, goal;
    for (int q : movers) {
        start.push_back(from.cluster_of(q));
        goal.push_back(to.cluster_of(q));
    }
    auto key = [&](const std::vector<int>& pos, const std::vector<int>& idles) {
        std::vector<int> v = pos;
        v.insert(v.end(), idles.begin(), idles.end());
        return v;
    };
    std::map<std::vector<int>, int> dist;
    std::queue<std::pair<std::vector<int>, std::vector<int>>> queue;
    dist[key(start, idle_count)] = 0;
    queue.push({start, idle_count});
    while (!queue.empty()) {
        auto [pos, idles] = queue.front();
        queue.pop();
        int d = dist.at(key(pos, idles));
        if (pos == goal) return d;
        auto visit = [&](std::vector<int> npos, std::vector<int> nidle) {
            auto ky = key(npos, nidle);
            if (dist.count(ky)) return;
            dist[ky] = d + 1;
            queue.push({std::move(npos), std::move(nidle)});
        };
        for (std::size_t i = 0; i < pos.size(); ++i) {
            for (std::size_t j = i + 1; j < pos.size(); ++j) {
                if (pos[i] == pos[j]) continue;
                auto npos = pos;
                std::swap(npos[i], npos[j]);
                visit(std::move(npos), idles);
            }
            for (int c = 0; c < k; ++c) {
                if (c == pos[i] || idles[static_cast<std::size_t>(c)] == 0) continue;
                auto npos = pos;
                auto nidle = idles;
                nidle[static_cast<std::size_t>(c)]--;
                nidle[static_cast<std::size_t>(npos[i])]++;
                npos[i] = c;
                visit(std::move(npos), std::move(nidle));
            }
        }
    }
    return -1; // unreachable for well-formed inputs
}

// All capacity-respecting assignments of a small machine, fixed order.
inline std::vector<Assignment> all_assignments(const MachineSpec& m, int width) {
    std::vector<int> labels;
    for (int c = 0; c < m.clusters; ++c)
        for (int i = 0; i < m.capacity; ++i) labels.push_back(c);
    std::sort(labels.begin(), labels.end());
    std::vector<Assignment> out;
    do {
        // Assignment only mutates via exchange, so realize the label
        // vector by selection-sort swaps from the initial layout.
        Assignment a = Assignment::initial(m, width);
        std::vector<int> want = labels;
        std::vector<int> cur(static_cast<std::size_t>(m.size()));
        for (int s = 0; s < m.size(); ++s) cur[static_cast<std::size_t>(s)] = a.cluster_of(s);
        for (int s = 0; s < m.size(); ++s) {
            if (cur[static_cast<std::size_t>(s)] == want[static_cast<std::size_t>(s)]) continue;
            for (int t = s + 1; t < m.size(); ++t) {
                if (cur[static_cast<std::size_t>(t)] == want[static_cast<std::size_t>(s)] &&
                    cur[static_cast<std::size_t>(t)] != want[static_cast<std::size_t>(t)]) {
                    std::swap(cur[static_cast<std::size_t>(s)], cur[static_cast<std::size_t>(t)]);
                    a.exchange(s, t);
                    break;
                }
            }
        }
        out.push_back(a);
    } while (std::next_permutation(labels.begin(), labels.end()));
    return out;
}

// Exact minimum total transition cost over all valid assignment sequences,
// with transition costs from the BFS oracle.
inline std::int64_t optimal_path_cost(const Circuit& c, const MachineSpec& m) {
    auto assignments = all_assignments(m, c.width);
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> best(assignments.size(), 0);
    for (int t = 0; t < c.depth(); ++t) {
        InteractionGraph g = slice_graph(c, t);
        std::vector<std::int64_t> next(assignments.size(), inf);
        for (std::size_t j = 0; j < assignments.size(); ++j) {
            if (!is_valid(assignments[j], g)) continue;
            for (std::size_t i = 0; i < assignments.size(); ++i) {
                if (best[i] >= inf) continue;
                std::int64_t cost =
                    t == 0 ? best[i]
                           : best[i] + min_swaps_oracle(assignments[i], assignments[j]);
                next[j] = std::min(next[j], cost);
            }
        }
        best = std::move(next);
    }
    std::int64_t ans = inf;
    for (auto v : best) ans = std::min(ans, v);
    return ans;
}

} // namespace qslice::testsupport
