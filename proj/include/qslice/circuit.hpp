#pragma once

// Circuit IR: 1- and 2-qubit gates packed into parallel time slices,
// ASAP scheduling, and the line-oriented text format.
//
// Text format, one directive per line:
//   qubits <n>                 header, must come first
//   <kind> <q0> [<q1>] [@<p>]  gate with optional real parameter
//   --                         slice barrier
//   # ...                      comment
// Emission is slice-major with a barrier between slices and gates sorted
// by first operand, so parse(emit(c)) reconstructs c exactly.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qslice {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class CapacityError : public Error {
public:
    using Error::Error;
};

using QubitId = int;

struct Gate {
    std::string kind;
    QubitId a = 0;
    std::optional<QubitId> b;
    std::optional<double> param;

    bool two_qubit() const { return b.has_value(); }
    bool operator==(const Gate&) const = default;
};

struct TimeSlice {
    std::vector<Gate> gates;
    bool operator==(const TimeSlice&) const = default;
};

struct Circuit {
    int width = 0;
    std::vector<TimeSlice> slices;

    int depth() const { return static_cast<int>(slices.size()); }
    std::int64_t two_qubit_count() const {
        std::int64_t n = 0;
        for (const auto& s : slices)
            for (const auto& g : s.gates)
                if (g.two_qubit()) ++n;
        return n;
    }
    bool operator==(const Circuit&) const = default;
};

inline void check_gate(const Gate& g, int width) {
    if (g.a < 0 || g.a >= width)
        throw Error("gate operand " + std::to_string(g.a) + " out of range [0, " +
                    std::to_string(width) + ")");
    if (g.b) {
        if (*g.b < 0 || *g.b >= width)
            throw Error("gate operand " + std::to_string(*g.b) + " out of range [0, " +
                        std::to_string(width) + ")");
        if (*g.b == g.a) throw Error("repeated operand " + std::to_string(g.a));
    }
}

namespace detail {

inline bool gate_less(const Gate& x, const Gate& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b.value_or(-1) != y.b.value_or(-1)) return x.b.value_or(-1) < y.b.value_or(-1);
    if (x.kind != y.kind) return x.kind < y.kind;
    return x.param.value_or(0.0) < y.param.value_or(0.0);
}

// Slices are gate sets; sorting makes equality and emission canonical.
inline void canonicalize(Circuit& c) {
    for (auto& s : c.slices) std::sort(s.gates.begin(), s.gates.end(), gate_less);
}

// ASAP packing with per-gate barrier floors (floor[i] = earliest slice of gate i).
inline Circuit asap_with_floors(const std::vector<Gate>& gates, int width,
                                const std::vector<int>* floors) {
    Circuit c;
    c.width = width;
    std::vector<int> frontier(static_cast<std::size_t>(width), 0);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        check_gate(g, width);
        int s = frontier[static_cast<std::size_t>(g.a)];
        if (g.b) s = std::max(s, frontier[static_cast<std::size_t>(*g.b)]);
        if (floors) s = std::max(s, (*floors)[i]);
        if (static_cast<int>(c.slices.size()) <= s) c.slices.resize(static_cast<std::size_t>(s) + 1);
        c.slices[static_cast<std::size_t>(s)].gates.push_back(g);
        frontier[static_cast<std::size_t>(g.a)] = s + 1;
        if (g.b) frontier[static_cast<std::size_t>(*g.b)] = s + 1;
    }
    canonicalize(c);
    return c;
}

inline std::string format_param(double p) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

} // namespace detail

// Packs each gate into the earliest slice after the last slice used by any
// of its operands; gates sharing a qubit keep their relative order.
inline Circuit asap_schedule(const std::vector<Gate>& gates, int width) {
    return detail::asap_with_floors(gates, width, nullptr);
}

inline std::string emit_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.width << "\n";
    for (std::size_t t = 0; t < c.slices.size(); ++t) {
        if (t > 0) out << "--\n";
        std::vector<Gate> gs = c.slices[t].gates;
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

inline Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int width = -1;
    std::vector<Gate> gates;
    std::vector<int> floors;
    std::vector<int> frontier;
    int barrier_floor = 0;

    auto current_depth = [&] {
        int d = barrier_floor;
        for (int f : frontier) d = std::max(d, f);
        return d;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        if (tok == "qubits") {
            if (width >= 0) throw ParseError(lineno, "duplicate qubits header");
            if (!(ls >> width) || width < 0) throw ParseError(lineno, "bad qubit count");
            frontier.assign(static_cast<std::size_t>(width), 0);
            continue;
        }
        if (width < 0) throw ParseError(lineno, "expected 'qubits <n>' header");
        if (tok == "--") {
            barrier_floor = current_depth();
            continue;
        }

        Gate g;
        g.kind = tok;
        std::vector<std::string> rest;
        while (ls >> tok) rest.push_back(tok);
        if (!rest.empty() && rest.back().size() > 1 && rest.back()[0] == '@') {
            try {
                std::size_t used = 0;
                g.param = std::stod(rest.back().substr(1), &used);
                if (used + 1 != rest.back().size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(lineno, "bad parameter '" + rest.back() + "'");
            }
            rest.pop_back();
        }
        if (rest.empty() || rest.size() > 2)
            throw ParseError(lineno, "expected 1 or 2 operands");
        try {
            g.a = std::stoi(rest[0]);
            if (rest.size() == 2) g.b = std::stoi(rest[1]);
        } catch (const std::exception&) {
            throw ParseError(lineno, "bad operand");
        }
        try {
            check_gate(g, width);
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }

        int s = std::max(barrier_floor, frontier[static_cast<std::size_t>(g.a)]);
        if (g.b) s = std::max(s, frontier[static_cast<std::size_t>(*g.b)]);
        frontier[static_cast<std::size_t>(g.a)] = s + 1;
        if (g.b) frontier[static_cast<std::size_t>(*g.b)] = s + 1;
        gates.push_back(std::move(g));
        floors.push_back(s);
    }
    if (width < 0) throw ParseError(lineno, "missing 'qubits <n>' header");

    Circuit c;
    c.width = width;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        int s = floors[i];
        if (static_cast<int>(c.slices.size()) <= s) c.slices.resize(static_cast<std::size_t>(s) + 1);
        c.slices[static_cast<std::size_t>(s)].gates.push_back(gates[i]);
    }
    detail::canonicalize(c);
    return c;
}

// Flattened slice-major gate list (the inverse of asap_schedule up to packing).
inline std::vector<Gate> flatten(const Circuit& c) {
    std::vector<Gate> out;
    for (const auto& s : c.slices)
        for (const auto& g : s.gates) out.push_back(g);
    return out;
}

} // namespace qslice
