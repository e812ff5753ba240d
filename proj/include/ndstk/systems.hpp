#pragma once

#include "ndstk/fuzzy.hpp"
#include "ndstk/hyperspace.hpp"
#include "ndstk/nds.hpp"

#include <utility>
#include <vector>

namespace ndstk {

// A "system" bundles a state type, the time-dependent step, the metric, and
// two cheap hooks the search engines use:
//  - window_key: one or two coordinates with dist(a,b) >= key separation,
//    so states in distant key buckets are separated at time zero;
//  - lens/dist_double: an optional exact double representation (valid only
//    when every value is a small dyadic rational), for fast metric scans.

struct BaseSystem {
    using State = Rat;
    NdsSpec nds;

    Space space() const { return nds.space; }
    State apply(long t, const State& x) const { return nds.map_at(t).eval(x); }
    Rat dist(const State& a, const State& b) const { return point_dist(nds.space, a, b); }
    std::pair<Rat, Rat> window_key(const State& x) const { return {x, Rat(0)}; }

    static constexpr bool has_lens = true;
    int lens_width() const { return 1; }
    bool lens(const State& x, double* out) const {
        if (!rat_exact_double(x)) return false;
        out[0] = rat_to_double(x);
        return true;
    }
    double dist_double(const double* a, const double* b) const {
        double d = a[0] < b[0] ? b[0] - a[0] : a[0] - b[0];
        if (nds.space == Space::circle && 1 - d < d) d = 1 - d;
        return d;
    }
};

struct ProductSystem {
    using State = std::vector<Rat>;
    NdsSpec nds;
    int k;

    Space space() const { return nds.space; }
    State apply(long t, const State& x) const {
        const PLMap& f = nds.map_at(t);
        State out;
        out.reserve(x.size());
        for (const auto& c : x) out.push_back(f.eval(c));
        return out;
    }
    Rat dist(const State& a, const State& b) const {
        Rat worst(0);
        for (size_t i = 0; i < a.size(); ++i)
            worst = rat_max(worst, point_dist(nds.space, a[i], b[i]));
        return worst;
    }
    std::pair<Rat, Rat> window_key(const State& x) const {
        return {x[0], x.size() > 1 ? x[1] : Rat(0)};
    }

    static constexpr bool has_lens = true;
    int lens_width() const { return k; }
    bool lens(const State& x, double* out) const {
        for (int i = 0; i < k; ++i) {
            if (!rat_exact_double(x[i])) return false;
            out[i] = rat_to_double(x[i]);
        }
        return true;
    }
    double dist_double(const double* a, const double* b) const {
        double worst = 0;
        bool circle = nds.space == Space::circle;
        for (int i = 0; i < k; ++i) {
            double d = a[i] < b[i] ? b[i] - a[i] : a[i] - b[i];
            if (circle && 1 - d < d) d = 1 - d;
            if (d > worst) worst = d;
        }
        return worst;
    }
};

// States are compacts of at most max_points points under the Hausdorff
// metric; the double lens pads with the last point, which leaves the
// Hausdorff value unchanged.
struct HyperSystem {
    using State = FiniteCompact;
    NdsSpec nds;
    int max_points;

    Space space() const { return nds.space; }
    State apply(long t, const State& a) const { return induced_image(nds.map_at(t), a); }
    Rat dist(const State& a, const State& b) const { return hausdorff(a, b); }
    std::pair<Rat, Rat> window_key(const State& a) const { return {a.min(), a.max()}; }

    static constexpr bool has_lens = true;
    int lens_width() const { return max_points; }
    bool lens(const State& a, double* out) const {
        if (static_cast<int>(a.size()) > max_points) return false;
        for (size_t i = 0; i < a.size(); ++i) {
            if (!rat_exact_double(a.points()[i])) return false;
            out[i] = rat_to_double(a.points()[i]);
        }
        for (size_t i = a.size(); i < static_cast<size_t>(max_points); ++i)
            out[i] = out[a.size() - 1];
        return true;
    }
    double dist_double(const double* a, const double* b) const {
        bool circle = nds.space == Space::circle;
        auto pd = [circle](double x, double y) {
            double d = x < y ? y - x : x - y;
            if (circle && 1 - d < d) d = 1 - d;
            return d;
        };
        double worst = 0;
        for (int pass = 0; pass < 2; ++pass) {
            const double* from = pass == 0 ? a : b;
            const double* to = pass == 0 ? b : a;
            for (int i = 0; i < max_points; ++i) {
                double best = 2;
                for (int j = 0; j < max_points; ++j) {
                    double d = pd(from[i], to[j]);
                    if (d < best) best = d;
                }
                if (best > worst) worst = best;
            }
        }
        return worst;
    }
};

enum class FuzzyMetric { levelwise, endograph };

struct FuzzySystem {
    using State = PCFuzzy;
    NdsSpec nds;
    FuzzyMetric metric = FuzzyMetric::levelwise;
    long endograph_resolution = 1000;

    Space space() const { return nds.space; }
    State apply(long t, const State& u) const { return zadeh_extend(nds.map_at(t), u); }
    Rat dist(const State& a, const State& b) const {
        if (metric == FuzzyMetric::endograph)
            return d_endograph(a, b, EndographGrid(endograph_resolution));
        return d_infty(a, b);
    }
    std::pair<Rat, Rat> window_key(const State& u) const {
        // d_inf dominates the Hausdorff distance of the supports; the
        // endograph metric does not, so it gets no window.
        if (metric == FuzzyMetric::endograph) return {Rat(0), Rat(0)};
        return {u.support().min(), u.support().max()};
    }

    static constexpr bool has_lens = false;
    int lens_width() const { return 0; }
    bool lens(const State&, double*) const { return false; }
    double dist_double(const double*, const double*) const { return 0; }
};

struct ArcSystem {
    using State = Arc;
    NdsSpec nds;

    Space space() const { return Space::circle; }
    State apply(long t, const State& a) const { return arc_image(nds.map_at(t), a); }
    Rat dist(const State& a, const State& b) const { return arc_hausdorff(a, b); }
    std::pair<Rat, Rat> window_key(const State&) const { return {Rat(0), Rat(0)}; }

    static constexpr bool has_lens = false;
    int lens_width() const { return 0; }
    bool lens(const State&, double*) const { return false; }
    double dist_double(const double*, const double*) const { return 0; }
};

// Product of possibly different NDS factors over the same space, max metric.
struct MixedProductSystem {
    using State = std::vector<Rat>;
    std::vector<NdsSpec> factors;

    Space space() const { return factors.front().space; }
    State apply(long t, const State& x) const {
        State out;
        out.reserve(x.size());
        for (size_t i = 0; i < x.size(); ++i)
            out.push_back(factors[i].map_at(t).eval(x[i]));
        return out;
    }
    Rat dist(const State& a, const State& b) const {
        Rat worst(0);
        for (size_t i = 0; i < a.size(); ++i)
            worst = rat_max(worst, point_dist(space(), a[i], b[i]));
        return worst;
    }
    std::pair<Rat, Rat> window_key(const State& x) const {
        return {x[0], x.size() > 1 ? x[1] : Rat(0)};
    }

    static constexpr bool has_lens = true;
    int lens_width() const { return static_cast<int>(factors.size()); }
    bool lens(const State& x, double* out) const {
        for (size_t i = 0; i < x.size(); ++i) {
            if (!rat_exact_double(x[i])) return false;
            out[i] = rat_to_double(x[i]);
        }
        return true;
    }
    double dist_double(const double* a, const double* b) const {
        double worst = 0;
        bool circle = space() == Space::circle;
        for (size_t i = 0; i < factors.size(); ++i) {
            double d = a[i] < b[i] ? b[i] - a[i] : a[i] - b[i];
            if (circle && 1 - d < d) d = 1 - d;
            if (d > worst) worst = d;
        }
        return worst;
    }
};

// n-fold product of an arbitrary system with the max metric; used by the
// chain weak-mixing checks.
template <class Sys>
struct ProductOfSystem {
    using State = std::vector<typename Sys::State>;
    Sys base;
    int order;

    Space space() const { return base.space(); }
    State apply(long t, const State& x) const {
        State out;
        out.reserve(x.size());
        for (const auto& c : x) out.push_back(base.apply(t, c));
        return out;
    }
    Rat dist(const State& a, const State& b) const {
        Rat worst(0);
        for (size_t i = 0; i < a.size(); ++i)
            worst = rat_max(worst, base.dist(a[i], b[i]));
        return worst;
    }
    std::pair<Rat, Rat> window_key(const State& x) const {
        auto k0 = base.window_key(x[0]);
        if (x.size() > 1) return {k0.first, base.window_key(x[1]).first};
        return k0;
    }

    static constexpr bool has_lens = false;
    int lens_width() const { return 0; }
    bool lens(const State&, double*) const { return false; }
    double dist_double(const double*, const double*) const { return 0; }
};

// --- Candidate grids -------------------------------------------------------

// Uniform rational grid i/den, i = 0..den (circle: i = 0..den-1).
inline std::vector<Rat> uniform_grid(Space space, long den) {
    std::vector<Rat> out;
    long top = space == Space::circle ? den - 1 : den;
    out.reserve(top + 1);
    for (long i = 0; i <= top; ++i) out.emplace_back(i, den);
    return out;
}

inline std::vector<std::vector<Rat>> product_grid(Space space, long den, int k) {
    std::vector<Rat> axis = uniform_grid(space, den);
    std::vector<std::vector<Rat>> out;
    std::vector<size_t> idx(k, 0);
    while (true) {
        std::vector<Rat> p;
        p.reserve(k);
        for (int i = 0; i < k; ++i) p.push_back(axis[idx[i]]);
        out.push_back(std::move(p));
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == axis.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

// All compacts with <= max_points points drawn from a uniform grid, in
// lexicographic order (the image of the product grid under phi, deduplicated).
inline std::vector<FiniteCompact> compact_grid(Space space, long den, int max_points) {
    std::vector<Rat> axis = uniform_grid(space, den);
    std::vector<FiniteCompact> out;
    std::vector<size_t> pick;
    auto rec = [&](auto&& self, size_t from) -> void {
        if (!pick.empty()) {
            std::vector<Rat> pts;
            for (size_t i : pick) pts.push_back(axis[i]);
            out.emplace_back(space, std::move(pts));
        }
        if (static_cast<int>(pick.size()) == max_points) return;
        for (size_t i = from; i < axis.size(); ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// Fuzzy candidates: chi of each grid compact plus two-level sets pairing each
// compact with each of its grid-point cores.
inline std::vector<PCFuzzy> fuzzy_grid(Space space, long den, int max_points) {
    auto compacts = compact_grid(space, den, max_points);
    std::vector<PCFuzzy> out;
    for (const auto& c : compacts) {
        out.push_back(chi(c));
        if (c.size() > 1)
            for (const auto& p : c.points())
                out.push_back(PCFuzzy({Rat(1, 2), Rat(1)},
                                      {c, FiniteCompact(space, {p})}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Arcs with endpoints on a uniform grid, plus full circles anchored there.
inline std::vector<Arc> arc_grid(long den) {
    std::vector<Rat> axis = uniform_grid(Space::circle, den);
    std::vector<Arc> out;
    for (const auto& a : axis) {
        for (const auto& b : axis) out.push_back(Arc{a, b, false});
        out.push_back(Arc{a, a, true});
    }
    return out;
}

}  // namespace ndstk
