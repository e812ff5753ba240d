#pragma once

#include "ndstk/rational.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace ndstk {

// Finite union of disjoint closed rational intervals inside [0,1], kept
// sorted and merged. Degenerate intervals [a,a] are allowed.
class IntervalUnion {
public:
    struct Interval {
        Rat lo;
        Rat hi;
        bool operator==(const Interval&) const = default;
    };

    IntervalUnion() = default;

    static IntervalUnion empty() { return {}; }

    static IntervalUnion single(Rat lo, Rat hi) {
        IntervalUnion u;
        u.add(std::move(lo), std::move(hi));
        return u.normalized();
    }

    static IntervalUnion point(const Rat& x) { return single(x, x); }

    static IntervalUnion full() { return single(0, 1); }

    // Accumulates a raw interval; call normalized() when done.
    void add(Rat lo, Rat hi) {
        if (hi < lo) std::swap(lo, hi);
        if (hi < 0 || lo > 1) throw argument_error("interval outside [0,1]");
        if (lo < 0) lo = 0;
        if (hi > 1) hi = 1;
        parts_.push_back({std::move(lo), std::move(hi)});
    }

    IntervalUnion normalized() const {
        IntervalUnion out;
        if (parts_.empty()) return out;
        auto sorted = parts_;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Interval& a, const Interval& b) {
                      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
                  });
        out.parts_.push_back(sorted.front());
        for (size_t i = 1; i < sorted.size(); ++i) {
            Interval& last = out.parts_.back();
            if (sorted[i].lo <= last.hi) {
                if (sorted[i].hi > last.hi) last.hi = sorted[i].hi;
            } else {
                out.parts_.push_back(sorted[i]);
            }
        }
        return out;
    }

    bool is_empty() const { return parts_.empty(); }
    size_t size() const { return parts_.size(); }
    const std::vector<Interval>& parts() const { return parts_; }

    bool contains(const Rat& x) const {
        for (const auto& p : parts_)
            if (p.lo <= x && x <= p.hi) return true;
        return false;
    }

    bool contains(const IntervalUnion& other) const {
        for (const auto& q : other.parts_) {
            bool inside = false;
            for (const auto& p : parts_)
                if (p.lo <= q.lo && q.hi <= p.hi) { inside = true; break; }
            if (!inside) return false;
        }
        return true;
    }

    IntervalUnion unite(const IntervalUnion& other) const {
        IntervalUnion raw;
        raw.parts_ = parts_;
        raw.parts_.insert(raw.parts_.end(), other.parts_.begin(), other.parts_.end());
        return raw.normalized();
    }

    IntervalUnion intersect(const IntervalUnion& other) const {
        IntervalUnion out;
        for (const auto& p : parts_)
            for (const auto& q : other.parts_) {
                Rat lo = rat_max(p.lo, q.lo);
                Rat hi = rat_min(p.hi, q.hi);
                if (lo <= hi) out.parts_.push_back({lo, hi});
            }
        return out.normalized();
    }

    // Leftmost point, for shadowing witnesses.
    const Rat& min() const {
        if (parts_.empty()) throw argument_error("empty interval union has no min");
        return parts_.front().lo;
    }

    bool operator==(const IntervalUnion& other) const { return parts_ == other.parts_; }

private:
    std::vector<Interval> parts_;
};

}  // namespace ndstk
