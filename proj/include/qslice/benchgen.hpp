#pragma once

// Deterministic benchmark circuit generators: ripple-carry and QFT adders,
// generalized-Toffoli and fan-out gates with clean or dirty ancilla, and
// seeded random interaction circuits.
//
// Reversible constructions are built first as x/cx/ccx networks (the form
// the classical replay tests exercise), then lowered to two-qubit gates:
// each Toffoli becomes the eight-gate cz/cx frame of its standard
// square-root-of-Z decomposition. Single-qubit bookkeeping is dropped at
// lowering; the mapper only ever sees pairwise interactions, and depth and
// operation counts track the two-qubit structure.

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qslice/circuit.hpp"

namespace qslice {

enum class BenchFamily {
    cuccaro,
    qft_adder,
    multi_control_clean,
    multi_target_clean,
    multi_target_dirty,
    random
};

inline std::string family_name(BenchFamily f) {
    switch (f) {
        case BenchFamily::cuccaro: return "cuccaro";
        case BenchFamily::qft_adder: return "qft_adder";
        case BenchFamily::multi_control_clean: return "multi_control_clean";
        case BenchFamily::multi_target_clean: return "multi_target_clean";
        case BenchFamily::multi_target_dirty: return "multi_target_dirty";
        case BenchFamily::random: return "random";
    }
    return "?";
}

inline BenchFamily family_from_name(const std::string& s) {
    for (BenchFamily f : {BenchFamily::cuccaro, BenchFamily::qft_adder,
                          BenchFamily::multi_control_clean, BenchFamily::multi_target_clean,
                          BenchFamily::multi_target_dirty, BenchFamily::random})
        if (family_name(f) == s) return f;
    throw Error("unknown benchmark family '" + s + "'");
}

struct BenchSpec {
    BenchFamily family = BenchFamily::cuccaro;
    int data_qubits = 0;
    int total_qubits = 100;
    double p_edge = 0.0;      // random only
    int samples = 1;          // random only
    std::uint64_t seed = 0;   // random only
};

// Reversible network primitive; the replay oracle simulates these directly.
struct LogicalGate {
    enum class Kind { x, cx, ccx };
    Kind kind = Kind::x;
    int a = 0;
    int b = -1;
    int c = -1;

    static LogicalGate X(int t) { return {Kind::x, t}; }
    static LogicalGate CX(int ctl, int t) { return {Kind::cx, ctl, t}; }
    static LogicalGate CCX(int c1, int c2, int t) { return {Kind::ccx, c1, c2, t}; }
};

// Two-qubit frame of the CCZ-based Toffoli: partial-Z rotations split into
// controlled-Z pairs around two CNOTs. Eight pair interactions per Toffoli.
inline void lower_ccx(int c1, int c2, int t, std::vector<Gate>& out) {
    out.push_back({"cz", c2, t, {}});
    out.push_back({"cz", c2, t, {}});
    out.push_back({"cx", c1, c2, {}});
    out.push_back({"cz", c2, t, {}});
    out.push_back({"cz", c2, t, {}});
    out.push_back({"cx", c1, c2, {}});
    out.push_back({"cz", c1, t, {}});
    out.push_back({"cz", c1, t, {}});
}

inline std::vector<Gate> lower_logical(const std::vector<LogicalGate>& net) {
    std::vector<Gate> out;
    for (const auto& g : net) {
        switch (g.kind) {
            case LogicalGate::Kind::x: break; // no pairwise interaction
            case LogicalGate::Kind::cx: out.push_back({"cx", g.a, g.b, {}}); break;
            case LogicalGate::Kind::ccx: lower_ccx(g.a, g.b, g.c, out); break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ripple-carry adder (majority / un-majority chain).
//
// data_qubits = 2b + 2 for b-bit addends: carry-in, interleaved b/a pairs,
// carry-out. The sum lands on the b register.

struct CuccaroLayout {
    int bits = 0;
    int carry_in = 0;
    int carry_out = 0;
    std::vector<int> a; // addend register (holds carries during the sweep)
    std::vector<int> b; // target register, receives a + b

    static CuccaroLayout make(int data_qubits) {
        if (data_qubits < 4) throw Error("ripple-carry adder needs at least 4 data qubits");
        CuccaroLayout l;
        l.bits = (data_qubits - 2) / 2;
        l.carry_in = 0;
        for (int i = 0; i < l.bits; ++i) {
            l.b.push_back(1 + 2 * i);
            l.a.push_back(2 + 2 * i);
        }
        l.carry_out = 2 * l.bits + 1;
        return l;
    }
};

inline std::vector<LogicalGate> cuccaro_network(const CuccaroLayout& l) {
    std::vector<LogicalGate> net;
    auto maj = [&](int c, int b, int a) {
        net.push_back(LogicalGate::CX(a, b));
        net.push_back(LogicalGate::CX(a, c));
        net.push_back(LogicalGate::CCX(c, b, a));
    };
    // Three-CNOT un-majority; its pair of X gates vanishes at lowering.
    auto uma = [&](int c, int b, int a) {
        net.push_back(LogicalGate::X(b));
        net.push_back(LogicalGate::CX(c, b));
        net.push_back(LogicalGate::CCX(c, b, a));
        net.push_back(LogicalGate::X(b));
        net.push_back(LogicalGate::CX(a, c));
        net.push_back(LogicalGate::CX(a, b));
    };
    int carry = l.carry_in;
    for (int i = 0; i < l.bits; ++i) {
        maj(carry, l.b[static_cast<std::size_t>(i)], l.a[static_cast<std::size_t>(i)]);
        carry = l.a[static_cast<std::size_t>(i)];
    }
    net.push_back(LogicalGate::CX(carry, l.carry_out));
    for (int i = l.bits - 1; i >= 0; --i) {
        int prev = i == 0 ? l.carry_in : l.a[static_cast<std::size_t>(i) - 1];
        uma(prev, l.b[static_cast<std::size_t>(i)], l.a[static_cast<std::size_t>(i)]);
    }
    return net;
}

inline Circuit gen_cuccaro(int data_qubits, int total_qubits) {
    if (data_qubits > total_qubits) throw Error("data qubits exceed machine size");
    CuccaroLayout l = CuccaroLayout::make(data_qubits);
    return asap_schedule(lower_logical(cuccaro_network(l)), total_qubits);
}

// ---------------------------------------------------------------------------
// QFT adder: Fourier transform of the target register followed by the
// controlled-phase additions; the sum is left in the Fourier basis. With
// two m-bit registers this is exactly m*m controlled-phase gates.

inline Circuit gen_qft_adder(int data_qubits, int total_qubits) {
    if (data_qubits % 2 != 0) throw Error("qft adder needs an even number of data qubits");
    if (data_qubits < 2) throw Error("qft adder needs at least 2 data qubits");
    if (data_qubits > total_qubits) throw Error("data qubits exceed machine size");
    const int m = data_qubits / 2;
    const double pi = 3.14159265358979323846;
    std::vector<Gate> gates;
    auto a = [&](int i) { return i; };
    auto b = [&](int i) { return m + i; };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            gates.push_back({"cp", b(j), b(i), pi / std::exp2(j - i)});
    for (int kq = 0; kq < m; ++kq)
        for (int j = 0; j <= kq; ++j)
            gates.push_back({"cp", a(j), b(kq), pi / std::exp2(kq - j)});
    return asap_schedule(gates, total_qubits);
}

// ---------------------------------------------------------------------------
// Generalized Toffoli with clean ancilla.
//
// With enough ancilla this is a balanced AND-tree (2(n-1)-1 Toffolis for n
// controls). With fewer, controls are grouped into blocks sized to the
// free scratch: each block's AND is computed into a dedicated ancilla by a
// scratch tree (computed then uncomputed), and the block products are
// combined with a borrowed-ancilla ladder.

namespace detail {

// target ^= AND(inputs), computed through a balanced tree whose internal
// nodes live in clean scratch; the scratch comes back clean. Needs
// |inputs| - 2 scratch qubits. Replaying the returned gates undoes the
// whole effect (each gate is an involution and the scratch round-trips).
inline std::vector<LogicalGate> tree_and(const std::vector<int>& inputs, int target,
                                         std::vector<int> scratch) {
    std::vector<LogicalGate> net;
    if (inputs.size() == 1) {
        net.push_back(LogicalGate::CX(inputs[0], target));
        return net;
    }
    if (inputs.size() == 2) {
        net.push_back(LogicalGate::CCX(inputs[0], inputs[1], target));
        return net;
    }
    std::vector<LogicalGate> compute;
    std::vector<int> level = inputs;
    while (level.size() > 2) {
        std::vector<int> next;
        std::size_t i = 0;
        for (; i + 1 < level.size(); i += 2) {
            if (scratch.empty()) throw Error("not enough scratch for control tree");
            int s = scratch.back();
            scratch.pop_back();
            compute.push_back(LogicalGate::CCX(level[i], level[i + 1], s));
            next.push_back(s);
        }
        if (i < level.size()) next.push_back(level[i]);
        level = next;
    }
    net = compute;
    net.push_back(LogicalGate::CCX(level[0], level[1], target));
    net.insert(net.end(), compute.rbegin(), compute.rend());
    return net;
}

// target ^= AND(controls) with n-2 borrowed (dirty, restored) helpers:
// the standard 4(n-2)-Toffoli V-chain, swept twice.
inline std::vector<LogicalGate> ladder_and(const std::vector<int>& controls, int target,
                                           const std::vector<int>& borrowed) {
    const int n = static_cast<int>(controls.size());
    std::vector<LogicalGate> net;
    if (n == 1) {
        net.push_back(LogicalGate::CX(controls[0], target));
        return net;
    }
    if (n == 2) {
        net.push_back(LogicalGate::CCX(controls[0], controls[1], target));
        return net;
    }
    if (static_cast<int>(borrowed.size()) < n - 2)
        throw Error("not enough borrowable qubits for ladder");
    auto sweep = [&] {
        net.push_back(LogicalGate::CCX(controls[static_cast<std::size_t>(n - 1)],
                                       borrowed[static_cast<std::size_t>(n - 3)], target));
        for (int i = n - 2; i >= 2; --i)
            net.push_back(LogicalGate::CCX(controls[static_cast<std::size_t>(i)],
                                           borrowed[static_cast<std::size_t>(i - 2)],
                                           borrowed[static_cast<std::size_t>(i - 1)]));
        net.push_back(LogicalGate::CCX(controls[0], controls[1], borrowed[0]));
        for (int i = 2; i <= n - 2; ++i)
            net.push_back(LogicalGate::CCX(controls[static_cast<std::size_t>(i)],
                                           borrowed[static_cast<std::size_t>(i - 2)],
                                           borrowed[static_cast<std::size_t>(i - 1)]));
    };
    sweep();
    sweep();
    return net;
}

} // namespace detail

inline std::vector<LogicalGate> multi_control_network(int data_qubits, int total_qubits) {
    const int controls = data_qubits - 1;
    const int target = data_qubits - 1;
    std::vector<int> ctl;
    for (int i = 0; i < controls; ++i) ctl.push_back(i);
    std::vector<int> ancilla;
    for (int i = data_qubits; i < total_qubits; ++i) ancilla.push_back(i);

    if (controls == 1) return {LogicalGate::CX(ctl[0], target)};
    if (controls == 2) return {LogicalGate::CCX(ctl[0], ctl[1], target)};
    if (ancilla.empty()) throw Error("generalized toffoli needs at least one clean ancilla");

    if (static_cast<int>(ancilla.size()) >= controls - 2)
        return detail::tree_and(ctl, target, ancilla);

    // Scarce ancilla: fold control blocks into ancilla-held products, then
    // combine the products and unfold the blocks. The ancilla pool is split
    // into as many independent lanes as can still cover all controls, so
    // narrow budgets degrade gracefully from parallel lanes to one long
    // sequential lane.
    // Dry-run the round-robin allocation for a lane count: covered controls
    // and the number of product cells it would pin.
    auto simulate = [&](int l, std::size_t& products_out) {
        std::vector<int> cells(static_cast<std::size_t>(l));
        for (std::size_t i = 0; i < ancilla.size(); ++i) cells[i % static_cast<std::size_t>(l)]++;
        std::vector<int> u(static_cast<std::size_t>(l), 0);
        std::size_t covered = 0;
        products_out = 0;
        for (bool placed = true; placed && covered < static_cast<std::size_t>(controls);) {
            placed = false;
            for (int i = 0; i < l && covered < static_cast<std::size_t>(controls); ++i) {
                if (u[static_cast<std::size_t>(i)] >= cells[static_cast<std::size_t>(i)]) continue;
                std::size_t scratch = static_cast<std::size_t>(
                    cells[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i)] - 1);
                covered += std::min(scratch + 2, static_cast<std::size_t>(controls) - covered);
                u[static_cast<std::size_t>(i)]++;
                products_out++;
                placed = true;
            }
        }
        return covered >= static_cast<std::size_t>(controls);
    };
    // Prefer the widest lane split that still covers every control and
    // leaves enough free cells to combine the products with a tree.
    int lanes = 1;
    for (int l = 6; l >= 2; --l) {
        std::size_t products_count = 0;
        if (!simulate(l, products_count)) continue;
        if (ancilla.size() - products_count + 2 >= products_count) {
            lanes = l;
            break;
        }
    }

    std::vector<std::vector<int>> lane_cells(static_cast<std::size_t>(lanes));
    for (std::size_t i = 0; i < ancilla.size(); ++i)
        lane_cells[i % static_cast<std::size_t>(lanes)].push_back(ancilla[i]);

    std::vector<LogicalGate> net;
    std::vector<std::vector<LogicalGate>> blocks;
    std::vector<int> products;
    std::vector<std::size_t> used(static_cast<std::size_t>(lanes), 0); // cells consumed per lane
    std::size_t next = 0;
    // Round-robin over lanes; each block takes one product cell plus the
    // lane's remaining cells as (restored) scratch.
    for (bool placed = true; placed && next < ctl.size();) {
        placed = false;
        for (int l = 0; l < lanes && next < ctl.size(); ++l) {
            auto& cells = lane_cells[static_cast<std::size_t>(l)];
            std::size_t u = used[static_cast<std::size_t>(l)];
            if (u >= cells.size()) continue;
            int product = cells[u];
            std::vector<int> scratch(cells.begin() + static_cast<std::ptrdiff_t>(u) + 1,
                                     cells.end());
            std::size_t size = std::min(scratch.size() + 2, ctl.size() - next);
            if (size < 1) continue;
            std::vector<int> block(ctl.begin() + static_cast<std::ptrdiff_t>(next),
                                   ctl.begin() + static_cast<std::ptrdiff_t>(next + size));
            next += size;
            used[static_cast<std::size_t>(l)]++;
            blocks.push_back(detail::tree_and(block, product, scratch));
            net.insert(net.end(), blocks.back().begin(), blocks.back().end());
            products.push_back(product);
            placed = true;
        }
    }

    std::vector<int> borrowed(ctl.begin(), ctl.begin() + static_cast<std::ptrdiff_t>(next));
    std::vector<int> free_cells;
    for (int l = 0; l < lanes; ++l) {
        const auto& cells = lane_cells[static_cast<std::size_t>(l)];
        for (std::size_t i = used[static_cast<std::size_t>(l)]; i < cells.size(); ++i)
            free_cells.push_back(cells[i]);
    }
    // Controls that found no block slot join the final gate directly.
    std::vector<int> combine = products;
    for (; next < ctl.size(); ++next) combine.push_back(ctl[next]);

    // Combine the products: a parallel tree when scratch is left, otherwise
    // the serial borrowed-ancilla ladder.
    auto final_gate = static_cast<int>(free_cells.size()) >= static_cast<int>(combine.size()) - 2
                          ? detail::tree_and(combine, target, free_cells)
                          : detail::ladder_and(combine, target, borrowed);
    net.insert(net.end(), final_gate.begin(), final_gate.end());
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
        net.insert(net.end(), it->begin(), it->end());
    return net;
}

inline Circuit gen_multi_control(int data_qubits, int total_qubits) {
    if (data_qubits < 2) throw Error("generalized toffoli needs at least 2 data qubits");
    if (data_qubits > 87)
        throw Error("generalized toffoli capped at 87 data qubits (decomposition depth)");
    if (data_qubits > total_qubits) throw Error("data qubits exceed machine size");
    return asap_schedule(lower_logical(multi_control_network(data_qubits, total_qubits)),
                         total_qubits);
}

// ---------------------------------------------------------------------------
// Multi-target fan-out: X on data_qubits-1 targets under one control.

inline std::vector<LogicalGate> multi_target_network(int data_qubits, int total_qubits,
                                                     bool clean_ancilla) {
    if (data_qubits < 2) throw Error("fan-out needs at least 2 data qubits");
    const int control = 0;
    const int targets = data_qubits - 1;
    std::vector<int> ancilla;
    for (int i = data_qubits; i < total_qubits; ++i) ancilla.push_back(i);

    std::vector<LogicalGate> net;
    // One helper per ~15 targets keeps the copy overhead worth its depth.
    int helpers = std::min<int>(static_cast<int>(ancilla.size()),
                                static_cast<int>(std::lround(targets / 15.0)));
    helpers = std::min(helpers, targets / 2);
    if (helpers == 0) {
        for (int t = 1; t <= targets; ++t) net.push_back(LogicalGate::CX(control, t));
        return net;
    }

    if (clean_ancilla) {
        // Copy the control into a doubling tree of clean ancilla, fan out
        // round-robin from all copies, then uncompute the copies.
        std::vector<int> drivers = {control};
        std::vector<LogicalGate> copy;
        for (int i = 0; i < helpers; ++i) {
            copy.push_back(LogicalGate::CX(drivers[static_cast<std::size_t>(i % static_cast<int>(drivers.size()))],
                                           ancilla[static_cast<std::size_t>(i)]));
            drivers.push_back(ancilla[static_cast<std::size_t>(i)]);
        }
        net = copy;
        for (int t = 1; t <= targets; ++t)
            net.push_back(LogicalGate::CX(drivers[static_cast<std::size_t>((t - 1) % static_cast<int>(drivers.size()))], t));
        net.insert(net.end(), copy.rbegin(), copy.rend());
        return net;
    }

    // Dirty helpers: each target group toggles twice around a control
    // toggle of its helper, cancelling the helper's unknown state. The
    // control drives one group directly. Phases are emitted breadth-first
    // (all first passes, all toggles, ...) so the helpers run in parallel.
    int direct = (targets + helpers) / (helpers + 1);
    int t = 1;
    for (int i = 0; i < direct && t <= targets; ++i, ++t)
        net.push_back(LogicalGate::CX(control, t));
    int remaining = targets - (t - 1);
    std::vector<std::pair<int, std::pair<int, int>>> groups; // helper -> [first, count]
    for (int gi = 0; gi < helpers && remaining > 0; ++gi) {
        int take = (remaining + (helpers - gi) - 1) / (helpers - gi);
        groups.push_back({ancilla[static_cast<std::size_t>(gi)], {t, take}});
        t += take;
        remaining -= take;
    }
    for (const auto& [h, g] : groups)
        for (int i = 0; i < g.second; ++i) net.push_back(LogicalGate::CX(h, g.first + i));
    for (const auto& [h, g] : groups) net.push_back(LogicalGate::CX(control, h));
    for (const auto& [h, g] : groups)
        for (int i = 0; i < g.second; ++i) net.push_back(LogicalGate::CX(h, g.first + i));
    for (const auto& [h, g] : groups) net.push_back(LogicalGate::CX(control, h));
    return net;
}

inline Circuit gen_multi_target(int data_qubits, int total_qubits, bool clean_ancilla) {
    if (data_qubits > total_qubits) throw Error("data qubits exceed machine size");
    return asap_schedule(lower_logical(multi_target_network(data_qubits, total_qubits, clean_ancilla)),
                         total_qubits);
}

// ---------------------------------------------------------------------------
// Random interaction layers: every unordered pair draws an edge with
// probability p per sample. The raw 64-bit stream comes from std::mt19937_64
// (a portable, specified sequence); doubles use the top 53 bits.

inline double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Circuit gen_random(int n, double p_edge, int samples, std::uint64_t seed,
                          int total_qubits) {
    if (n < 2) throw Error("random circuit needs at least 2 qubits");
    if (n > total_qubits) throw Error("data qubits exceed machine size");
    if (p_edge < 0.0 || p_edge > 1.0) throw Error("edge probability must be in [0, 1]");
    if (samples < 1) throw Error("need at least one sample");
    std::mt19937_64 rng(seed);
    std::vector<Gate> gates;
    for (int s = 0; s < samples; ++s) {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (uniform53(rng) < p_edge) edges.push_back({i, j});
        // The sampled gates all commute; emitting them as peeled maximal
        // matchings lets the packer reach near-edge-coloring depth.
        while (!edges.empty()) {
            std::vector<char> busy(static_cast<std::size_t>(n), 0);
            std::vector<std::pair<int, int>> rest;
            for (auto [i, j] : edges) {
                if (!busy[static_cast<std::size_t>(i)] && !busy[static_cast<std::size_t>(j)]) {
                    busy[static_cast<std::size_t>(i)] = busy[static_cast<std::size_t>(j)] = 1;
                    gates.push_back({"cz", i, j, {}});
                } else {
                    rest.push_back({i, j});
                }
            }
            edges = std::move(rest);
        }
    }
    return asap_schedule(gates, total_qubits);
}

// ---------------------------------------------------------------------------

inline Circuit generate(const BenchSpec& s) {
    switch (s.family) {
        case BenchFamily::cuccaro: return gen_cuccaro(s.data_qubits, s.total_qubits);
        case BenchFamily::qft_adder: return gen_qft_adder(s.data_qubits, s.total_qubits);
        case BenchFamily::multi_control_clean:
            return gen_multi_control(s.data_qubits, s.total_qubits);
        case BenchFamily::multi_target_clean:
            return gen_multi_target(s.data_qubits, s.total_qubits, true);
        case BenchFamily::multi_target_dirty:
            return gen_multi_target(s.data_qubits, s.total_qubits, false);
        case BenchFamily::random:
            return gen_random(s.data_qubits, s.p_edge, s.samples, s.seed, s.total_qubits);
    }
    throw Error("unknown benchmark family");
}

inline std::string provenance_header(const BenchSpec& s) {
    std::ostringstream out;
    out << "# family=" << family_name(s.family) << " data=" << s.data_qubits
        << " total=" << s.total_qubits;
    if (s.family == BenchFamily::random) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", s.p_edge);
        out << " p=" << buf << " samples=" << s.samples;
    }
    out << " seed=" << s.seed << "\n";
    return out.str();
}

} // namespace qslice
