#pragma once

#include "ndstk/systems.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace ndstk {

namespace detail {

// Precomputed orbits of a candidate list, with an optional exact double view.
// The double view is used only when every orbit value is a small dyadic
// rational, in which case double subtraction/max/min are error-free and the
// comparisons against a dyadic epsilon are exact.
template <class Sys>
struct OrbitTable {
    using State = typename Sys::State;

    const Sys* sys = nullptr;
    long horizon = 0;  // orbits stored for t = 0..horizon
    int width = 0;
    bool lens_ok = false;
    std::vector<State> states;    // (i * (horizon+1) + t)
    std::vector<double> doubles;  // (i * (horizon+1) + t) * width + j
    std::vector<std::pair<double, double>> keys;
    size_t count = 0;

    // need_exact forces rational orbit storage (required when some epsilon in
    // play is not exactly double-representable). Otherwise a doubles-only
    // table is attempted first, which keeps memory linear in count even for
    // very large candidate grids.
    OrbitTable(const Sys& s, const std::vector<State>& candidates, long hor,
               bool need_exact = false)
        : sys(&s), horizon(hor) {
        count = candidates.size();
        width = s.lens_width();
        lens_ok = Sys::has_lens && width > 0;
        keys.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            auto key = s.window_key(candidates[i]);
            keys.emplace_back(rat_to_double(key.first), rat_to_double(key.second));
        }
        if (lens_ok && !need_exact) {
            doubles.resize(count * (horizon + 1) * width);
            for (size_t i = 0; i < count && lens_ok; ++i) {
                State cur = candidates[i];
                for (long t = 0; t <= horizon; ++t) {
                    if (!s.lens(cur, &doubles[(i * (horizon + 1) + t) * width])) {
                        lens_ok = false;
                        break;
                    }
                    if (t < horizon) cur = s.apply(t, cur);
                }
            }
            if (lens_ok) return;
            doubles.clear();
            doubles.shrink_to_fit();
        } else {
            lens_ok = false;
        }
        states.reserve(count * (horizon + 1));
        for (size_t i = 0; i < count; ++i) {
            states.push_back(candidates[i]);
            for (long t = 0; t < horizon; ++t) states.push_back(s.apply(t, states.back()));
        }
    }

    const State& at(size_t i, long t) const { return states[i * (horizon + 1) + t]; }
    const double* dbl(size_t i, long t) const {
        return &doubles[(i * (horizon + 1) + t) * width];
    }
};

// 2-d bucket index over window keys, wrap-aware on the circle. Bucket width
// is epsilon padded upward, so any two states whose keys fall in
// non-adjacent buckets are separated at time zero.
class KeyBuckets {
public:
    KeyBuckets(double eps, bool circle) : circle_(circle) {
        width_ = eps * (1 + 1e-9) + 1e-12;
        per_axis_ = circle_ ? std::max<long>(1, static_cast<long>(1.0 / width_)) : 0;
    }

    void insert(const std::pair<double, double>& key, int id) {
        map_[code(cell(key.first), cell(key.second))].push_back(id);
    }

    template <class Fn>
    void for_neighbors(const std::pair<double, double>& key, Fn&& fn) const {
        long cx = cell(key.first), cy = cell(key.second);
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = map_.find(code(wrap(cx + dx), wrap(cy + dy)));
                if (it == map_.end()) continue;
                for (int id : it->second) fn(id);
            }
    }

private:
    long cell(double v) const {
        long c = static_cast<long>(std::floor(v / width_));
        return wrap(c);
    }
    long wrap(long c) const {
        if (!circle_ || per_axis_ <= 0) return c;
        c %= per_axis_;
        return c < 0 ? c + per_axis_ : c;
    }
    static uint64_t code(long x, long y) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(x)) << 32) |
               static_cast<uint32_t>(y);
    }

    double width_;
    bool circle_;
    long per_axis_;
    std::unordered_map<uint64_t, std::vector<int>> map_;
};

// Comparison mode against epsilon. Lens distances are exact doubles, so
// when epsilon is also a dyadic double the comparison is a plain double
// compare; otherwise the exact double is lifted to a rational first.
enum class CmpMode { dbl, dbl_vs_rat, rational };

template <class Sys>
CmpMode cmp_mode(const OrbitTable<Sys>& tab, const Rat& eps) {
    if (!tab.lens_ok) return CmpMode::rational;
    return rat_exact_double(eps) ? CmpMode::dbl : CmpMode::dbl_vs_rat;
}

// True iff the two orbits come apart beyond eps at some time < n.
template <class Sys>
bool orbits_separate(const OrbitTable<Sys>& tab, size_t i, size_t j, long n,
                     const Rat& eps, CmpMode mode, double eps_d) {
    if (mode == CmpMode::dbl) {
        for (long t = 0; t < n; ++t)
            if (tab.sys->dist_double(tab.dbl(i, t), tab.dbl(j, t)) > eps_d) return true;
        return false;
    }
    if (mode == CmpMode::dbl_vs_rat) {
        for (long t = 0; t < n; ++t)
            if (Rat(tab.sys->dist_double(tab.dbl(i, t), tab.dbl(j, t))) > eps) return true;
        return false;
    }
    for (long t = 0; t < n; ++t)
        if (tab.sys->dist(tab.at(i, t), tab.at(j, t)) > eps) return true;
    return false;
}

template <class Sys>
long separated_greedy(const OrbitTable<Sys>& tab, long n, const Rat& eps) {
    if (eps <= 0) throw argument_error("separated_count: epsilon must be positive");
    if (n < 1) throw argument_error("separated_count: n >= 1");
    CmpMode mode = cmp_mode(tab, eps);
    double eps_d = rat_to_double(eps);
    bool circle = tab.sys->space() == Space::circle;
    KeyBuckets buckets(eps_d, circle);
    long accepted = 0;
    for (size_t i = 0; i < tab.count; ++i) {
        bool ok = true;
        buckets.for_neighbors(tab.keys[i], [&](int j) {
            if (ok && !orbits_separate(tab, i, j, n, eps, mode, eps_d)) ok = false;
        });
        if (ok) {
            buckets.insert(tab.keys[i], static_cast<int>(i));
            ++accepted;
        }
    }
    return accepted;
}

template <class Sys>
long spanning_greedy(const OrbitTable<Sys>& cand, const OrbitTable<Sys>& targ,
                     long n, const Rat& eps) {
    if (eps <= 0) throw argument_error("spanning_count: epsilon must be positive");
    CmpMode mode = cand.lens_ok && targ.lens_ok
                       ? (rat_exact_double(eps) ? CmpMode::dbl : CmpMode::dbl_vs_rat)
                       : CmpMode::rational;
    double eps_d = rat_to_double(eps);
    bool circle = cand.sys->space() == Space::circle;
    KeyBuckets cbuckets(eps_d, circle);
    for (size_t i = 0; i < cand.count; ++i)
        cbuckets.insert(cand.keys[i], static_cast<int>(i));
    KeyBuckets tbuckets(eps_d, circle);
    for (size_t i = 0; i < targ.count; ++i)
        tbuckets.insert(targ.keys[i], static_cast<int>(i));
    // Cross-table tube test: candidate c covers target t.
    auto covers = [&](size_t ci, size_t ti) {
        if (mode == CmpMode::dbl) {
            for (long t = 0; t < n; ++t)
                if (!(cand.sys->dist_double(cand.dbl(ci, t), targ.dbl(ti, t)) < eps_d))
                    return false;
            return true;
        }
        if (mode == CmpMode::dbl_vs_rat) {
            for (long t = 0; t < n; ++t)
                if (!(Rat(cand.sys->dist_double(cand.dbl(ci, t), targ.dbl(ti, t))) < eps))
                    return false;
            return true;
        }
        for (long t = 0; t < n; ++t)
            if (!(cand.sys->dist(cand.at(ci, t), targ.at(ti, t)) < eps)) return false;
        return true;
    };
    std::vector<char> covered(targ.count, 0);
    long picks = 0;
    for (size_t ti = 0; ti < targ.count; ++ti) {
        if (covered[ti]) continue;
        // Pick the covering candidate with the largest primary key; on the
        // sweep through sorted targets this greedily extends the tube cover.
        int best = -1;
        cbuckets.for_neighbors(targ.keys[ti], [&](int ci) {
            if (!covers(ci, ti)) return;
            if (best < 0 || cand.keys[ci].first > cand.keys[best].first ||
                (cand.keys[ci].first == cand.keys[best].first && ci < best))
                best = ci;
        });
        if (best < 0)
            throw std::runtime_error("spanning_count: target " + std::to_string(ti) +
                                     " not covered at this resolution");
        ++picks;
        tbuckets.for_neighbors(cand.keys[best], [&](int tj) {
            if (!covered[tj] && covers(best, tj)) covered[tj] = 1;
        });
        // Keyless systems get no exclusion guarantee from the buckets; fall
        // back to a full sweep for correctness there.
        if (cand.keys[best].first == 0 && cand.keys[best].second == 0) {
            for (size_t tj = 0; tj < targ.count; ++tj)
                if (!covered[tj] && covers(best, tj)) covered[tj] = 1;
        }
    }
    return picks;
}

}  // namespace detail

// Greedy maximal (n,eps)-separated subset of the candidate list, scanned in
// the given order; a certified lower bound for the separated cardinality.
template <class Sys>
long separated_count(const Sys& sys, long n, const Rat& eps,
                     const std::vector<typename Sys::State>& candidates) {
    if (candidates.empty()) throw argument_error("separated_count: empty candidates");
    detail::OrbitTable<Sys> tab(sys, candidates, n > 0 ? n - 1 : 0);
    return detail::separated_greedy(tab, n, eps);
}

// Greedy sweep cover of the targets by candidate orbit tubes of radius eps
// (strict); an upper-bound-style estimate of the spanning cardinality.
template <class Sys>
long spanning_count(const Sys& sys, long n, const Rat& eps,
                    const std::vector<typename Sys::State>& candidates,
                    const std::vector<typename Sys::State>& targets) {
    if (candidates.empty() || targets.empty())
        throw argument_error("spanning_count: empty candidates or targets");
    detail::OrbitTable<Sys> cand(sys, candidates, n > 0 ? n - 1 : 0);
    // Both tables must share a representation for the cross-table tube test.
    detail::OrbitTable<Sys> targ(sys, targets, n > 0 ? n - 1 : 0, !cand.lens_ok);
    if (cand.lens_ok && !targ.lens_ok) {
        detail::OrbitTable<Sys> cand_exact(sys, candidates, n > 0 ? n - 1 : 0, true);
        return detail::spanning_greedy(cand_exact, targ, n, eps);
    }
    return detail::spanning_greedy(cand, targ, n, eps);
}

struct EntropyRow {
    long n;
    Rat eps;
    long separated;
    long spanning;  // -1 when not computed
    double slope;   // log(separated) / n
};

struct EntropySeries {
    std::string kind;
    std::vector<EntropyRow> rows;
    long candidate_count = 0;
    double summary_slope = 0;
    long fit_lo = 0;  // n-range used for the summary fit
    long fit_hi = 0;
    bool complete = true;
};

namespace detail {

// Least-squares slope of log(separated) against n over the largest regime of
// steady growth, preferring the latest such window. Rows where the count has
// pinned near the candidate budget reflect grid resolution, not dynamics,
// and are skipped (unless nothing else remains, e.g. very coarse grids).
inline void fit_summary(EntropySeries& series, const Rat& smallest_eps) {
    auto collect = [&](double cap) {
        std::vector<std::pair<long, double>> pts;
        for (const auto& r : series.rows) {
            if (r.eps != smallest_eps) continue;
            if (series.candidate_count > 0 &&
                static_cast<double>(r.separated) >=
                    cap * static_cast<double>(series.candidate_count))
                continue;
            pts.emplace_back(r.n, std::log(static_cast<double>(r.separated)));
        }
        return pts;
    };
    // A run of identical counts at the tail means the grid resolution is
    // exhausted there; keep one plateau row so constant series still fit.
    auto trim_plateau = [](std::vector<std::pair<long, double>>& pts) {
        while (pts.size() >= 2 && pts[pts.size() - 1].second == pts[pts.size() - 2].second)
            pts.pop_back();
    };
    std::vector<std::pair<long, double>> pts = collect(0.9);
    trim_plateau(pts);
    if (pts.size() < 2) {
        pts = collect(1.0);
        trim_plateau(pts);
    }
    if (pts.size() < 2) {
        series.summary_slope = 0;
        series.complete = series.complete && pts.size() >= 1;
        if (!pts.empty()) series.fit_lo = series.fit_hi = pts[0].first;
        return;
    }
    std::vector<double> inc(pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        inc[i] = (pts[i + 1].second - pts[i].second) /
                 static_cast<double>(pts[i + 1].first - pts[i].first);
    constexpr double kSteady = 0.05;
    size_t best_lo = 0, best_len = 1;
    for (size_t lo = 0; lo < inc.size(); ++lo) {
        for (size_t hi = lo; hi < inc.size(); ++hi) {
            double mean = 0;
            for (size_t k = lo; k <= hi; ++k) mean += inc[k];
            mean /= static_cast<double>(hi - lo + 1);
            double dev = 0;
            for (size_t k = lo; k <= hi; ++k)
                dev = std::max(dev, std::abs(inc[k] - mean));
            if (dev > kSteady) break;
            size_t len = hi - lo + 1;
            if (len > best_len || (len == best_len && lo >= best_lo)) {
                best_len = len;
                best_lo = lo;
            }
        }
    }
    size_t a = best_lo, b = best_lo + best_len;  // rows [a, b]
    double sn = 0, sl = 0, snn = 0, snl = 0;
    double m = static_cast<double>(b - a + 1);
    for (size_t i = a; i <= b; ++i) {
        double x = static_cast<double>(pts[i].first);
        sn += x;
        sl += pts[i].second;
        snn += x * x;
        snl += x * pts[i].second;
    }
    double denom = m * snn - sn * sn;
    series.summary_slope = denom == 0 ? 0 : (m * snl - sn * sl) / denom;
    series.fit_lo = pts[a].first;
    series.fit_hi = pts[b].first;
}

}  // namespace detail

struct EntropyOptions {
    bool with_spanning = true;
    long candidate_budget = 0;  // 0 = unlimited; exceeding it flags the series
};

// Full separated/spanning series over a decreasing epsilon schedule, with a
// summary growth rate fitted at the smallest epsilon.
template <class Sys>
EntropySeries entropy_estimate(const Sys& sys, const std::string& kind,
                               const std::vector<Rat>& eps_schedule, long n_max,
                               const std::vector<typename Sys::State>& candidates,
                               const EntropyOptions& opts = {}) {
    if (n_max < 4) throw argument_error("entropy_estimate: n_max >= 4");
    if (eps_schedule.empty()) throw argument_error("entropy_estimate: empty schedule");
    for (size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]))
            throw argument_error("entropy_estimate: schedule must decrease");
    EntropySeries series;
    series.kind = kind;
    std::vector<typename Sys::State> pool = candidates;
    if (opts.candidate_budget > 0 &&
        static_cast<long>(pool.size()) > opts.candidate_budget) {
        pool.erase(pool.begin() + opts.candidate_budget, pool.end());
        series.complete = false;  // partial series: budget exhausted
    }
    series.candidate_count = static_cast<long>(pool.size());
    detail::OrbitTable<Sys> tab(sys, pool, n_max - 1);
    for (const auto& eps : eps_schedule) {
        long sep_saturated = -1, span_saturated = -1;
        for (long n = 1; n <= n_max; ++n) {
            // Separation persists as n grows: once every candidate is
            // accepted, later rows repeat the full count. Same for tubes,
            // which only shrink.
            long sep = sep_saturated >= 0 ? sep_saturated
                                          : detail::separated_greedy(tab, n, eps);
            if (sep == series.candidate_count) sep_saturated = sep;
            long span = -1;
            if (opts.with_spanning) {
                span = span_saturated >= 0 ? span_saturated
                                           : detail::spanning_greedy(tab, tab, n, eps);
                if (span == series.candidate_count) span_saturated = span;
            }
            series.rows.push_back(
                {n, eps, sep, span,
                 std::log(static_cast<double>(sep)) / static_cast<double>(n)});
        }
    }
    detail::fit_summary(series, eps_schedule.back());
    return series;
}

// Independent growth oracle for piecewise-monotone interval maps: exact lap
// count of the n-fold composition.
inline long lap_count(const NdsSpec& nds, long n) {
    if (nds.space != Space::interval)
        throw argument_error("lap_count: circle systems unsupported");
    PLMap comp = PLMap::identity();
    for (long t = 0; t < n; ++t) {
        comp = compose(nds.map_at(t), comp);
        if (comp.nodes().size() > 4000000)
            throw std::runtime_error("lap_count: composition too large");
    }
    return comp.lap_count();
}

inline double lap_count_entropy(const NdsSpec& nds, long n_max) {
    return std::log(static_cast<double>(lap_count(nds, n_max))) /
           static_cast<double>(n_max);
}

// --- System builders -------------------------------------------------------

inline ProductSystem power_system(const NdsSpec& nds, int k) {
    if (k < 1) throw argument_error("power_system: k >= 1");
    return ProductSystem{nds, k};
}

inline HyperSystem hyper_system(const NdsSpec& nds, int m) {
    if (m < 1) throw argument_error("hyper_system: m >= 1");
    return HyperSystem{nds, m};
}

inline ArcSystem arcs_system(const NdsSpec& nds) {
    if (nds.space != Space::circle) throw argument_error("arcs_system: circle NDS required");
    auto check = [](const PLMap& f) {
        if (!f.orientation_preserving())
            throw argument_error("arcs_system: orientation-reversing map");
    };
    for (const auto& f : nds.prefix) check(f);
    if (const auto* c = std::get_if<NdsSpec::ConstantTail>(&nds.tail)) check(c->map);
    if (const auto* c = std::get_if<NdsSpec::CycleTail>(&nds.tail))
        for (const auto& f : c->maps) check(f);
    if (const auto* c = std::get_if<NdsSpec::LevelsTail>(&nds.tail)) {
        for (const auto& b : c->blocks) check(b.map);
        check(c->beyond);
    }
    return ArcSystem{nds};
}

}  // namespace ndstk
