#pragma once

#include "ndstk/hyperspace.hpp"

#include <utility>
#include <vector>

namespace ndstk {

// Piecewise-constant fuzzy set: strictly increasing thresholds
// 0 < a_1 < ... < a_k = 1 with nested finite compacts C_1 >= ... >= C_k.
// The level set at alpha in (a_i, a_{i+1}] is C_{i+1}.
class PCFuzzy {
public:
    PCFuzzy(std::vector<Rat> thresholds, std::vector<FiniteCompact> levels)
        : thresholds_(std::move(thresholds)), levels_(std::move(levels)) {
        if (thresholds_.empty() || thresholds_.size() != levels_.size())
            throw argument_error("PCFuzzy: thresholds/levels mismatch");
        if (thresholds_.back() != 1) throw argument_error("PCFuzzy: top threshold must be 1");
        for (size_t i = 0; i < thresholds_.size(); ++i) {
            if (thresholds_[i] <= 0) throw argument_error("PCFuzzy: thresholds must be positive");
            if (i > 0 && thresholds_[i] <= thresholds_[i - 1])
                throw argument_error("PCFuzzy: thresholds must be strictly increasing");
            if (i > 0 && !levels_[i].subset_of(levels_[i - 1]))
                throw argument_error("PCFuzzy: level sets must be nested");
        }
    }

    Space space() const { return levels_.front().space(); }
    const std::vector<Rat>& thresholds() const { return thresholds_; }
    const std::vector<FiniteCompact>& levels() const { return levels_; }
    const FiniteCompact& support() const { return levels_.front(); }
    const FiniteCompact& core() const { return levels_.back(); }

    // Membership value, read off the level structure.
    Rat membership(const Rat& x) const {
        Rat value(0);
        for (size_t i = 0; i < levels_.size(); ++i)
            if (levels_[i].contains(x)) value = thresholds_[i];
        return value;
    }

    // Canonical form: drop a threshold when its level equals the next one.
    PCFuzzy canonical() const {
        std::vector<Rat> ts;
        std::vector<FiniteCompact> ls;
        for (size_t i = 0; i < levels_.size(); ++i) {
            if (i + 1 < levels_.size() && levels_[i] == levels_[i + 1]) continue;
            ts.push_back(thresholds_[i]);
            ls.push_back(levels_[i]);
        }
        return PCFuzzy(std::move(ts), std::move(ls));
    }

    bool same_fuzzy_set(const PCFuzzy& other) const {
        PCFuzzy a = canonical(), b = other.canonical();
        return a.thresholds_ == b.thresholds_ && a.levels_ == b.levels_;
    }

    // Compares full stored structure, not the underlying function.
    bool operator==(const PCFuzzy& other) const {
        return thresholds_ == other.thresholds_ && levels_ == other.levels_;
    }
    bool operator<(const PCFuzzy& other) const {
        if (levels_ != other.levels_) return levels_ < other.levels_;
        return thresholds_ < other.thresholds_;
    }

private:
    std::vector<Rat> thresholds_;
    std::vector<FiniteCompact> levels_;
};

// Characteristic fuzzy set of a compact.
inline PCFuzzy chi(const FiniteCompact& k) {
    return PCFuzzy({Rat(1)}, {k});
}

// [u]_alpha for alpha in (0, 1].
inline const FiniteCompact& level_set(const PCFuzzy& u, const Rat& alpha) {
    if (alpha <= 0 || alpha > 1) throw argument_error("level_set: alpha outside (0,1]");
    const auto& ts = u.thresholds();
    for (size_t i = 0; i < ts.size(); ++i)
        if (alpha <= ts[i]) return u.levels()[i];
    return u.levels().back();  // unreachable: ts.back() == 1
}

// Zadeh extension applied levelwise: [f~(u)]_alpha = f([u]_alpha).
inline PCFuzzy zadeh_extend(const PLMap& f, const PCFuzzy& u) {
    std::vector<FiniteCompact> levels;
    levels.reserve(u.levels().size());
    for (const auto& c : u.levels()) levels.push_back(induced_image(f, c));
    return PCFuzzy(u.thresholds(), std::move(levels));
}

// Rewrites both fuzzy sets on the union of their threshold grids; each output
// equals its input as a fuzzy set.
inline std::pair<PCFuzzy, PCFuzzy> refine_common(const PCFuzzy& u, const PCFuzzy& v) {
    std::vector<Rat> merged = u.thresholds();
    merged.insert(merged.end(), v.thresholds().begin(), v.thresholds().end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    auto on_grid = [&](const PCFuzzy& w) {
        std::vector<FiniteCompact> levels;
        levels.reserve(merged.size());
        for (const auto& t : merged) levels.push_back(level_set(w, t));
        return PCFuzzy(merged, std::move(levels));
    };
    return {on_grid(u), on_grid(v)};
}

// Levelwise metric d_inf: sup over alpha of D_X between level sets; the sup
// is a max over the finitely many blocks of the merged grid.
inline Rat d_infty(const PCFuzzy& u, const PCFuzzy& v) {
    auto [a, b] = refine_common(u, v);
    Rat worst(0);
    for (size_t i = 0; i < a.levels().size(); ++i)
        worst = rat_max(worst, hausdorff(a.levels()[i], b.levels()[i]));
    return worst;
}

// Resolution parameter for the endograph metric. For piecewise-constant fuzzy
// sets the support reduction below is already exact; extra grid points only
// add zero-distance endograph samples, so the result does not depend on it.
struct EndographGrid {
    long resolution;
    explicit EndographGrid(long r) : resolution(r) {
        if (r < 2) throw argument_error("EndographGrid: resolution >= 2");
    }
};

// Endograph metric d_E: Hausdorff distance in the max-metric on X x I
// between {(x,a) : u(x) >= a} and the same for v. The base slab X x {0} is
// shared, so the directed part reduces to the support points:
//   sup_{x in supp u} min( u(x), min_{y in supp v} max(d(x,y), (u(x)-v(y))^+) ).
inline Rat d_endograph(const PCFuzzy& u, const PCFuzzy& v, const EndographGrid& grid) {
    (void)grid;
    auto directed = [](const PCFuzzy& from, const PCFuzzy& to) {
        Rat worst(0);
        for (const auto& x : from.support().points()) {
            Rat ux = from.membership(x);
            Rat best = ux;  // land on (x, 0) in the other endograph
            for (const auto& y : to.support().points()) {
                Rat d = point_dist(from.space(), x, y);
                Rat drop = ux - to.membership(y);
                if (drop < 0) drop = 0;
                best = rat_min(best, rat_max(d, drop));
            }
            worst = rat_max(worst, best);
        }
        return worst;
    };
    return rat_max(directed(u, v), directed(v, u));
}

}  // namespace ndstk
