#pragma once

// Two-level edge weight: an integer count of hard co-location constraints
// plus a real-valued accumulated interaction weight. Ordering is
// lexicographic, so a single hard constraint outweighs any finite total.

#include <cstdint>

namespace qslice {

struct Weight {
    std::int64_t required = 0;
    double finite = 0.0;

    friend constexpr Weight operator+(Weight x, Weight y) {
        return {x.required + y.required, x.finite + y.finite};
    }
    friend constexpr Weight operator-(Weight x, Weight y) {
        return {x.required - y.required, x.finite - y.finite};
    }
    constexpr Weight operator-() const { return {-required, -finite}; }
    Weight& operator+=(Weight o) {
        required += o.required;
        finite += o.finite;
        return *this;
    }
    Weight& operator-=(Weight o) {
        required -= o.required;
        finite -= o.finite;
        return *this;
    }
    friend constexpr Weight operator*(std::int64_t s, Weight w) {
        return {s * w.required, static_cast<double>(s) * w.finite};
    }

    friend constexpr bool operator==(Weight x, Weight y) {
        return x.required == y.required && x.finite == y.finite;
    }
    friend constexpr bool operator!=(Weight x, Weight y) { return !(x == y); }
    friend constexpr bool operator<(Weight x, Weight y) {
        if (x.required != y.required) return x.required < y.required;
        return x.finite < y.finite;
    }
    friend constexpr bool operator>(Weight x, Weight y) { return y < x; }
    friend constexpr bool operator<=(Weight x, Weight y) { return !(y < x); }
    friend constexpr bool operator>=(Weight x, Weight y) { return !(x < y); }

    constexpr bool positive() const {
        return required > 0 || (required == 0 && finite > 0.0);
    }
};

} // namespace qslice
