#pragma once

#include "ndstk/plmap.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace ndstk {

// Finite nonempty compact subset: sorted, deduplicated rational points.
class FiniteCompact {
public:
    FiniteCompact(Space space, std::vector<Rat> points)
        : space_(space), points_(std::move(points)) {
        if (points_.empty()) throw argument_error("FiniteCompact: empty point set");
        for (auto& p : points_) p = reduce_point(space_, p);
        std::sort(points_.begin(), points_.end());
        points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    }

    Space space() const { return space_; }
    const std::vector<Rat>& points() const { return points_; }
    size_t size() const { return points_.size(); }
    const Rat& min() const { return points_.front(); }
    const Rat& max() const { return points_.back(); }

    bool contains(const Rat& x) const {
        return std::binary_search(points_.begin(), points_.end(), x);
    }

    bool subset_of(const FiniteCompact& other) const {
        return std::includes(other.points_.begin(), other.points_.end(),
                             points_.begin(), points_.end());
    }

    FiniteCompact unite(const FiniteCompact& other) const {
        std::vector<Rat> pts = points_;
        pts.insert(pts.end(), other.points_.begin(), other.points_.end());
        return FiniteCompact(space_, std::move(pts));
    }

    bool operator==(const FiniteCompact& other) const {
        return space_ == other.space_ && points_ == other.points_;
    }
    bool operator<(const FiniteCompact& other) const { return points_ < other.points_; }

private:
    Space space_;
    std::vector<Rat> points_;
};

// Hausdorff metric D_X on finite compacts, exact max-min over the point lists.
inline Rat hausdorff(const FiniteCompact& a, const FiniteCompact& b) {
    if (a.space() != b.space()) throw argument_error("hausdorff: mismatched spaces");
    auto directed = [&](const FiniteCompact& from, const FiniteCompact& to) {
        Rat worst(0);
        for (const auto& x : from.points()) {
            Rat best(-1);
            for (const auto& y : to.points()) {
                Rat d = point_dist(from.space(), x, y);
                if (best < 0 || d < best) best = d;
            }
            worst = rat_max(worst, best);
        }
        return worst;
    };
    return rat_max(directed(a, b), directed(b, a));
}

// Induced set map A -> f(A).
inline FiniteCompact induced_image(const PLMap& f, const FiniteCompact& a) {
    std::vector<Rat> pts;
    pts.reserve(a.size());
    for (const auto& p : a.points()) pts.push_back(f.eval(p));
    return FiniteCompact(a.space(), std::move(pts));
}

// Point of a finite product X^k, max-metric.
struct ProductPoint {
    Space space;
    std::vector<Rat> coords;
};

inline Rat product_dist(const ProductPoint& a, const ProductPoint& b) {
    if (a.coords.size() != b.coords.size())
        throw argument_error("product_dist: dimension mismatch");
    Rat worst(0);
    for (size_t i = 0; i < a.coords.size(); ++i)
        worst = rat_max(worst, point_dist(a.space, a.coords[i], b.coords[i]));
    return worst;
}

// The lift X^m -> K_m(X): a tuple collapses to its underlying set.
inline FiniteCompact phi(const ProductPoint& p) {
    if (p.coords.empty()) throw argument_error("phi: empty product point");
    return FiniteCompact(p.space, p.coords);
}

// Circle arc from a counterclockwise to b; a == b is a singleton unless
// full_circle is set, in which case a is the anchor.
struct Arc {
    Rat a;
    Rat b;
    bool full_circle = false;

    Rat length() const {
        if (full_circle) return Rat(1);
        return rat_mod1(b - a);
    }
    bool contains(const Rat& x) const {
        if (full_circle) return true;
        return rat_mod1(x - a) <= length();
    }
    bool operator==(const Arc& other) const {
        if (full_circle != other.full_circle) return false;
        if (full_circle) return rat_mod1(a) == rat_mod1(other.a);
        return rat_mod1(a) == rat_mod1(other.a) && rat_mod1(b) == rat_mod1(other.b);
    }
};

// Image of an arc under an orientation-preserving circle map; wraps to the
// full circle when the lift stretches the arc across a whole turn.
inline Arc arc_image(const PLMap& f, const Arc& arc) {
    if (f.space() != Space::circle) throw argument_error("arc_image: interval map");
    if (!f.orientation_preserving())
        throw argument_error("arc_image: orientation-reversing map");
    Rat fa = f.eval(arc.a);
    if (arc.full_circle) return Arc{fa, fa, true};
    Rat a0 = rat_mod1(arc.a);
    Rat len = arc.length();
    Rat hi = a0 + len;  // lift argument of b
    Rat lift_a = f.eval_lift(a0);
    Rat lift_b = hi <= 1 ? f.eval_lift(hi) : f.eval_lift(hi - 1) + f.degree();
    if (lift_b - lift_a >= 1) return Arc{fa, fa, true};
    return Arc{fa, rat_mod1(lift_b), false};
}

// Endpoint chart for the pairs (a, [a,b]) and (a, S^1): the semiconjugacy
// onto the 2-fold product.
inline ProductPoint psi(const Rat& anchor, const Arc& arc) {
    Rat a0 = rat_mod1(anchor);
    if (arc.full_circle) {
        if (rat_mod1(arc.a) != a0) throw argument_error("psi: anchor mismatch");
        return ProductPoint{Space::circle, {a0, a0}};
    }
    if (rat_mod1(arc.a) != a0) throw argument_error("psi: arc does not start at the point");
    return ProductPoint{Space::circle, {a0, rat_mod1(arc.b)}};
}

// Hausdorff distance between circle arcs. The distance-to-arc function is a
// sawtooth vanishing on the arc and peaking at the midpoint of its
// complement, so the sup over the other arc sits at an endpoint or the peak.
inline Rat arc_hausdorff(const Arc& a, const Arc& b) {
    auto point_to_arc = [](const Rat& x, const Arc& arc) -> Rat {
        if (arc.contains(x)) return Rat(0);
        Rat da = point_dist(Space::circle, x, rat_mod1(arc.a));
        Rat db = point_dist(Space::circle, x, rat_mod1(arc.b));
        return rat_min(da, db);
    };
    auto directed = [&](const Arc& from, const Arc& to) -> Rat {
        if (to.full_circle) return Rat(0);
        Rat worst = rat_max(point_to_arc(rat_mod1(from.a), to),
                            point_to_arc(rat_mod1(from.b), to));
        Rat peak = rat_mod1(rat_mod1(to.b) + (1 - to.length()) / 2);
        if (from.contains(peak)) worst = rat_max(worst, Rat((1 - to.length()) / 2));
        return worst;
    };
    return rat_max(directed(a, b), directed(b, a));
}

}  // namespace ndstk
