#pragma once

#include "ndstk/interval_union.hpp"
#include "ndstk/space.hpp"

#include <utility>
#include <vector>

namespace ndstk {

// Piecewise-linear self-map of [0,1] or S^1, given by exact rational nodes.
//
// Interval maps store node values in [0,1]. Circle maps store a lift: node
// values may leave [0,1], the last value equals the first plus the integer
// degree, and eval() reduces mod 1. Orientation-preserving means the lift is
// non-decreasing.
class PLMap {
public:
    struct Node {
        Rat x;
        Rat y;
        bool operator==(const Node&) const = default;
    };

    PLMap(Space space, std::vector<Node> nodes)
        : space_(space), nodes_(std::move(nodes)) {
        validate();
    }

    Space space() const { return space_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    static PLMap identity(Space space = Space::interval) {
        return PLMap(space, {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}});
    }

    static PLMap constant(const Rat& c, Space space = Space::interval) {
        return PLMap(space, {{Rat(0), c}, {Rat(1), c}});
    }

    static PLMap tent() {
        return PLMap(Space::interval,
                     {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(1), Rat(0)}});
    }

    // Rigid rotation of S^1 by angle in [0,1).
    static PLMap rotation(const Rat& angle) {
        if (angle < 0 || angle >= 1) throw argument_error("rotation angle outside [0,1)");
        return PLMap(Space::circle, {{Rat(0), angle}, {Rat(1), angle + 1}});
    }

    // Value of the lift at x in [0,1] (equals the map itself on interval maps).
    Rat eval_lift(const Rat& x) const {
        if (x < 0 || x > 1) throw domain_error("eval: point outside [0,1]: " + rat_str(x));
        size_t lo = 0, hi = nodes_.size() - 1;
        while (hi - lo > 1) {
            size_t mid = (lo + hi) / 2;
            if (nodes_[mid].x <= x) lo = mid; else hi = mid;
        }
        const Node& a = nodes_[lo];
        const Node& b = nodes_[hi];
        if (x == a.x) return a.y;
        if (x == b.x) return b.y;
        return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
    }

    Rat eval(const Rat& x) const {
        if (space_ == Space::circle) return rat_mod1(eval_lift(rat_mod1(x)));
        return eval_lift(x);
    }

    int degree() const {
        if (space_ != Space::circle) throw argument_error("degree: interval map");
        Rat d = nodes_.back().y - nodes_.front().y;
        return static_cast<int>(d.convert_to<long>());
    }

    bool orientation_preserving() const {
        for (size_t i = 1; i < nodes_.size(); ++i)
            if (nodes_[i].y < nodes_[i - 1].y) return false;
        return true;
    }

    // Number of maximal monotone laps. Flat runs merge into a neighbor.
    int lap_count() const {
        int laps = 1;
        int prev_sign = 0;
        for (size_t i = 1; i < nodes_.size(); ++i) {
            Rat dy = nodes_[i].y - nodes_[i - 1].y;
            int sign = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
            if (sign == 0) continue;
            if (prev_sign != 0 && sign != prev_sign) ++laps;
            prev_sign = sign;
        }
        return laps;
    }

    bool operator==(const PLMap& other) const {
        return space_ == other.space_ && nodes_ == other.nodes_;
    }

private:
    void validate() const {
        if (nodes_.size() < 2) throw argument_error("PLMap needs at least two nodes");
        if (nodes_.front().x != 0 || nodes_.back().x != 1)
            throw argument_error("PLMap nodes must span [0,1]");
        for (size_t i = 1; i < nodes_.size(); ++i)
            if (nodes_[i].x <= nodes_[i - 1].x)
                throw argument_error("PLMap x-coordinates must be strictly increasing");
        if (space_ == Space::interval) {
            for (const auto& n : nodes_)
                if (n.y < 0 || n.y > 1)
                    throw argument_error("interval PLMap values must lie in [0,1]");
        } else {
            Rat d = nodes_.back().y - nodes_.front().y;
            if (denominator(d) != 1)
                throw argument_error("circle PLMap lift must have integer degree");
        }
    }

    Space space_;
    std::vector<Node> nodes_;
};

namespace detail {
inline void require_interval(const PLMap& f, const char* what) {
    if (f.space() != Space::interval)
        throw argument_error(std::string(what) + ": circle maps unsupported");
}
}  // namespace detail

// Exact image of a union of closed intervals, computed per monotone lap.
inline IntervalUnion image(const PLMap& f, const IntervalUnion& u) {
    detail::require_interval(f, "image");
    IntervalUnion out;
    const auto& nodes = f.nodes();
    for (const auto& part : u.parts()) {
        for (size_t i = 0; i + 1 < nodes.size(); ++i) {
            Rat lo = rat_max(part.lo, nodes[i].x);
            Rat hi = rat_min(part.hi, nodes[i + 1].x);
            if (lo > hi) continue;
            Rat a = f.eval_lift(lo);
            Rat b = f.eval_lift(hi);
            out.add(std::move(a), std::move(b));
        }
    }
    return out.normalized();
}

// Exact preimage: one sub-interval per monotone lap intersecting u.
inline IntervalUnion preimage(const PLMap& f, const IntervalUnion& u) {
    detail::require_interval(f, "preimage");
    IntervalUnion out;
    const auto& nodes = f.nodes();
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Rat& x0 = nodes[i].x;
        const Rat& x1 = nodes[i + 1].x;
        const Rat& y0 = nodes[i].y;
        const Rat& y1 = nodes[i + 1].y;
        Rat vlo = rat_min(y0, y1);
        Rat vhi = rat_max(y0, y1);
        for (const auto& part : u.parts()) {
            Rat a = rat_max(part.lo, vlo);
            Rat b = rat_min(part.hi, vhi);
            if (a > b) continue;
            if (y0 == y1) {
                out.add(x0, x1);
                continue;
            }
            Rat slope_inv = (x1 - x0) / (y1 - y0);
            Rat pa = x0 + (a - y0) * slope_inv;
            Rat pb = x0 + (b - y0) * slope_inv;
            out.add(std::move(pa), std::move(pb));
        }
    }
    return out.normalized();
}

// Exact composition f . g on the interval (apply g first).
inline PLMap compose(const PLMap& f, const PLMap& g) {
    detail::require_interval(f, "compose");
    detail::require_interval(g, "compose");
    std::vector<Rat> xs;
    for (const auto& n : g.nodes()) xs.push_back(n.x);
    // Pull the breakpoints of f back through each lap of g.
    const auto& gn = g.nodes();
    for (size_t i = 0; i + 1 < gn.size(); ++i) {
        const Rat& y0 = gn[i].y;
        const Rat& y1 = gn[i + 1].y;
        if (y0 == y1) continue;
        Rat slope_inv = (gn[i + 1].x - gn[i].x) / (y1 - y0);
        Rat vlo = rat_min(y0, y1);
        Rat vhi = rat_max(y0, y1);
        for (const auto& fn : f.nodes()) {
            if (fn.x <= vlo || fn.x >= vhi) continue;
            xs.push_back(gn[i].x + (fn.x - y0) * slope_inv);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<PLMap::Node> nodes;
    nodes.reserve(xs.size());
    for (auto& x : xs) {
        Rat y = f.eval_lift(g.eval_lift(x));
        nodes.push_back({std::move(x), std::move(y)});
    }
    return PLMap(Space::interval, std::move(nodes));
}

// Exact sup-distance between two maps over the same space.
inline Rat uniform_distance(const PLMap& f, const PLMap& g) {
    if (f.space() != g.space())
        throw argument_error("uniform_distance: mismatched spaces");
    std::vector<Rat> xs;
    for (const auto& n : f.nodes()) xs.push_back(n.x);
    for (const auto& n : g.nodes()) xs.push_back(n.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Rat best(0);
    if (f.space() == Space::interval) {
        // |f-g| is piecewise linear, so the sup sits on the merged grid.
        for (const auto& x : xs)
            best = rat_max(best, rat_abs(f.eval_lift(x) - g.eval_lift(x)));
        return best;
    }
    // Circle: the lift difference is linear per merged segment; the circle
    // distance is the sawtooth distance of that line to the nearest integer,
    // maximal at segment endpoints or where the line crosses a half-integer.
    auto circ = [](const Rat& t) {
        Rat r = rat_mod1(t);
        return rat_min(r, Rat(1 - r));
    };
    for (size_t i = 0; i < xs.size(); ++i) {
        Rat d = f.eval_lift(xs[i]) - g.eval_lift(xs[i]);
        best = rat_max(best, circ(d));
        if (i + 1 < xs.size()) {
            Rat d2 = f.eval_lift(xs[i + 1]) - g.eval_lift(xs[i + 1]);
            // A half-integer strictly between d and d2 realizes distance 1/2.
            Rat a = rat_min(d, d2) * 2, b = rat_max(d, d2) * 2;
            Int c = numerator(a) / denominator(a);
            while (Rat(c) <= a) ++c;  // smallest integer > a
            if ((Rat(c) < b && c % 2 != 0) || (Rat(c + 1) < b))
                best = rat_max(best, Rat(1, 2));
        }
    }
    return best;
}

}  // namespace ndstk
