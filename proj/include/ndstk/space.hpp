#pragma once

#include "ndstk/rational.hpp"

namespace ndstk {

enum class Space { interval, circle };

inline const char* space_name(Space s) {
    return s == Space::interval ? "interval" : "circle";
}

// Metric on the underlying space: |x-y| on [0,1], arc distance on S^1.
inline Rat point_dist(Space space, const Rat& x, const Rat& y) {
    Rat d = rat_abs(x - y);
    if (space == Space::circle) {
        Rat wrap = 1 - d;
        if (wrap < d) return wrap;
    }
    return d;
}

// Canonical representative of a point of the space.
inline Rat reduce_point(Space space, const Rat& x) {
    if (space == Space::circle) return rat_mod1(x);
    if (x < 0 || x > 1) throw domain_error("point outside [0,1]: " + rat_str(x));
    return x;
}

}  // namespace ndstk
