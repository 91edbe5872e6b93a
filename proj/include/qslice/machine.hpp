#pragma once

// Machine model and slot-holder placements. The k*p slot-holders are the
// circuit qubits (ids < width) padded with idle qubits (ids >= width) so
// every move is an exchange and every cluster stays exactly full.

#include <string>
#include <vector>

#include "qslice/circuit.hpp"

namespace qslice {

struct MachineSpec {
    int clusters = 10;
    int capacity = 10;
    double comm_multiplier = 1.0;

    int size() const { return clusters * capacity; }

    void validate() const {
        if (clusters < 2) throw Error("need at least 2 clusters");
        if (capacity < 1) throw Error("cluster capacity must be >= 1");
        if (comm_multiplier < 1.0) throw Error("comm multiplier must be >= 1");
    }
};

class Assignment {
public:
    Assignment() = default;

    // Index-order layout: slot-holder i sits in cluster i / capacity.
    static Assignment initial(const MachineSpec& m, int width) {
        m.validate();
        if (width > m.size())
            throw CapacityError("circuit width " + std::to_string(width) +
                                " exceeds machine size " + std::to_string(m.size()));
        Assignment a;
        a.clusters_ = m.clusters;
        a.capacity_ = m.capacity;
        a.width_ = width;
        a.cluster_of_.resize(static_cast<std::size_t>(m.size()));
        for (int s = 0; s < m.size(); ++s)
            a.cluster_of_[static_cast<std::size_t>(s)] = s / m.capacity;
        return a;
    }

    int clusters() const { return clusters_; }
    int capacity() const { return capacity_; }
    int slots() const { return static_cast<int>(cluster_of_.size()); }
    // Number of circuit qubits; slot-holders at or past this are idle padding.
    int width() const { return width_; }
    bool is_idle(int s) const { return s >= width_; }

    int cluster_of(int s) const { return cluster_of_[static_cast<std::size_t>(s)]; }

    void exchange(int x, int y) {
        std::swap(cluster_of_[static_cast<std::size_t>(x)], cluster_of_[static_cast<std::size_t>(y)]);
    }

    // Slot-holders of one cluster, ascending.
    std::vector<int> members(int cluster) const {
        std::vector<int> out;
        for (int s = 0; s < slots(); ++s)
            if (cluster_of_[static_cast<std::size_t>(s)] == cluster) out.push_back(s);
        return out;
    }

    bool operator==(const Assignment&) const = default;

    // Placement equality over circuit qubits only; idle labels are
    // interchangeable, so they are compared as per-cluster counts.
    bool same_placement(const Assignment& o) const {
        if (width_ != o.width_ || slots() != o.slots() || clusters_ != o.clusters_) return false;
        for (int q = 0; q < width_; ++q)
            if (cluster_of(q) != o.cluster_of(q)) return false;
        return true;
    }

private:
    int clusters_ = 0;
    int capacity_ = 0;
    int width_ = 0;
    std::vector<int> cluster_of_;
};

} // namespace qslice
