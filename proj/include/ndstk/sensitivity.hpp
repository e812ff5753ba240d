#pragma once

#include "ndstk/systems.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ndstk {

// Sorted subset of {1, ..., horizon}: a finite-horizon view of N_d(x,eps,delta).
struct TimeSet {
    long horizon = 0;
    std::vector<long> members;

    bool contains(long n) const {
        return std::binary_search(members.begin(), members.end(), n);
    }
    bool subset_of(const TimeSet& other) const {
        return std::includes(other.members.begin(), other.members.end(),
                             members.begin(), members.end());
    }
};

inline TimeSet intersect(const TimeSet& a, const TimeSet& b) {
    TimeSet out;
    out.horizon = std::min(a.horizon, b.horizon);
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                          b.members.end(), std::back_inserter(out.members));
    while (!out.members.empty() && out.members.back() > out.horizon) out.members.pop_back();
    return out;
}

// Finitized Furstenberg families: parameterized predicates on TimeSets. Every
// report carries the horizon and parameters; this is a deliberate
// finitization of definitions that quantify over infinite subsets.
struct FamilyPredicate {
    enum class Kind { infinite, cofinite, syndetic, full } kind;
    long parameter = 0;  // min_count / max_missing / max_gap; unused for full

    static FamilyPredicate infinite(long min_count) {
        if (min_count < 1) throw argument_error("FamilyPredicate: min_count >= 1");
        return {Kind::infinite, min_count};
    }
    static FamilyPredicate cofinite(long max_missing) {
        if (max_missing < 0) throw argument_error("FamilyPredicate: max_missing >= 0");
        return {Kind::cofinite, max_missing};
    }
    static FamilyPredicate syndetic(long max_gap) {
        if (max_gap < 1) throw argument_error("FamilyPredicate: max_gap >= 1");
        return {Kind::syndetic, max_gap};
    }
    static FamilyPredicate full() { return {Kind::full, 0}; }
};

inline bool family_member(const FamilyPredicate& family, const TimeSet& ts) {
    switch (family.kind) {
        case FamilyPredicate::Kind::infinite:
            return static_cast<long>(ts.members.size()) >= family.parameter;
        case FamilyPredicate::Kind::cofinite:
            return ts.horizon - static_cast<long>(ts.members.size()) <= family.parameter;
        case FamilyPredicate::Kind::syndetic: {
            long prev = 0;  // boundary gap before the first member counts
            for (long m : ts.members) {
                if (m - prev > family.parameter) return false;
                prev = m;
            }
            return ts.horizon + 1 - prev <= family.parameter;
        }
        case FamilyPredicate::Kind::full:
            return static_cast<long>(ts.members.size()) == ts.horizon;
    }
    return false;
}

// --- Neighborhood samplers ---------------------------------------------------

namespace detail {

inline Rat move_point(Space space, const Rat& x, const Rat& off) {
    if (space == Space::circle) return rat_mod1(x + off);
    return rat_min(Rat(1), rat_max(Rat(0), x + off));
}

// Deterministic stratified offsets spanning (-eps, eps).
inline std::vector<Rat> stratified_offsets(const Rat& eps, long count) {
    std::vector<Rat> out;
    out.reserve(count);
    for (long i = 1; i <= count; ++i)
        out.push_back(eps * Rat(2 * i - count - 1) / Rat(count + 1));
    return out;
}

inline Rat random_offset(std::mt19937_64& rng, const Rat& eps) {
    constexpr long den = 1 << 20;
    std::uniform_int_distribution<long> jitter(-(den - 1), den - 1);
    return eps * Rat(jitter(rng), den);
}

}  // namespace detail

// Stratified rigid shifts plus seeded per-degree-of-freedom random extras.
// Every sampler output is filtered against dist(x, y) < eps by the caller,
// so samples only ever add certified members.
inline std::vector<Rat> sample_ball(const BaseSystem& sys, const Rat& x, const Rat& eps,
                                    long count, long extras, std::mt19937_64& rng) {
    std::vector<Rat> out;
    for (const auto& off : detail::stratified_offsets(eps, count))
        out.push_back(detail::move_point(sys.space(), x, off));
    for (long i = 0; i < extras; ++i)
        out.push_back(detail::move_point(sys.space(), x, detail::random_offset(rng, eps)));
    return out;
}

inline std::vector<std::vector<Rat>> sample_ball(const ProductSystem& sys,
                                                 const std::vector<Rat>& x, const Rat& eps,
                                                 long count, long extras,
                                                 std::mt19937_64& rng) {
    std::vector<std::vector<Rat>> out;
    for (const auto& off : detail::stratified_offsets(eps, count)) {
        std::vector<Rat> y;
        for (const auto& c : x) y.push_back(detail::move_point(sys.space(), c, off));
        out.push_back(std::move(y));
    }
    for (long i = 0; i < extras; ++i) {
        std::vector<Rat> y;
        for (const auto& c : x)
            y.push_back(detail::move_point(sys.space(), c, detail::random_offset(rng, eps)));
        out.push_back(std::move(y));
    }
    return out;
}

// Each point of the compact is perturbed independently in the extras,
// matching the pointwise witness structure of the induced-system proofs.
inline std::vector<FiniteCompact> sample_ball(const HyperSystem& sys,
                                              const FiniteCompact& x, const Rat& eps,
                                              long count, long extras,
                                              std::mt19937_64& rng) {
    std::vector<FiniteCompact> out;
    for (const auto& off : detail::stratified_offsets(eps, count)) {
        std::vector<Rat> pts;
        for (const auto& p : x.points()) pts.push_back(detail::move_point(sys.space(), p, off));
        out.emplace_back(sys.space(), std::move(pts));
    }
    for (long i = 0; i < extras; ++i) {
        std::vector<Rat> pts;
        for (const auto& p : x.points())
            pts.push_back(detail::move_point(sys.space(), p, detail::random_offset(rng, eps)));
        out.emplace_back(sys.space(), std::move(pts));
    }
    return out;
}

// Support points move consistently across all level sets, preserving nesting.
inline std::vector<PCFuzzy> sample_ball(const FuzzySystem& sys, const PCFuzzy& x,
                                        const Rat& eps, long count, long extras,
                                        std::mt19937_64& rng) {
    const auto& supp = x.support().points();
    auto moved = [&](const std::vector<Rat>& offsets) {
        std::vector<FiniteCompact> levels;
        for (const auto& level : x.levels()) {
            std::vector<Rat> pts;
            for (const auto& p : level.points()) {
                size_t idx = std::lower_bound(supp.begin(), supp.end(), p) - supp.begin();
                pts.push_back(detail::move_point(sys.space(), p, offsets[idx]));
            }
            levels.emplace_back(sys.space(), std::move(pts));
        }
        return PCFuzzy(x.thresholds(), std::move(levels));
    };
    std::vector<PCFuzzy> out;
    for (const auto& off : detail::stratified_offsets(eps, count))
        out.push_back(moved(std::vector<Rat>(supp.size(), off)));
    for (long i = 0; i < extras; ++i) {
        std::vector<Rat> offsets;
        for (size_t j = 0; j < supp.size(); ++j)
            offsets.push_back(detail::random_offset(rng, eps));
        out.push_back(moved(offsets));
    }
    return out;
}

// Rigid rotations plus random (anchor, length) perturbations; out-of-ball
// samples are discarded by the exact filter downstream.
inline std::vector<Arc> sample_ball(const ArcSystem&, const Arc& x, const Rat& eps,
                                    long count, long extras, std::mt19937_64& rng) {
    std::vector<Arc> out;
    for (const auto& off : detail::stratified_offsets(eps, count))
        out.push_back(Arc{rat_mod1(x.a + off), rat_mod1(x.b + off), x.full_circle});
    for (long i = 0; i < extras; ++i) {
        Rat da = detail::random_offset(rng, eps / 2);
        Rat dl = detail::random_offset(rng, eps / 2);
        if (x.full_circle) {
            out.push_back(Arc{rat_mod1(x.a + da), rat_mod1(x.a + da), true});
            continue;
        }
        Rat len = rat_min(Rat(1), rat_max(Rat(0), x.length() + dl));
        Rat a = rat_mod1(x.a + da);
        out.push_back(Arc{a, rat_mod1(a + len), false});
    }
    return out;
}

// --- Sensitivity time sets ---------------------------------------------------

// Members computed from an explicit witness list: n is in iff some witness in
// the open eps-ball separates beyond delta at time n. Exact comparisons; the
// result is a certified subset of the true N_d at this horizon.
template <class Sys>
TimeSet sensitivity_times_from(const Sys& sys, const typename Sys::State& x,
                               const Rat& eps, const Rat& delta, long horizon,
                               const std::vector<typename Sys::State>& witnesses) {
    if (eps <= 0 || delta <= 0)
        throw argument_error("sensitivity_times: eps and delta must be positive");
    if (horizon < 1) throw argument_error("sensitivity_times: horizon >= 1");
    std::vector<typename Sys::State> xs;
    xs.reserve(horizon + 1);
    xs.push_back(x);
    for (long t = 0; t < horizon; ++t) xs.push_back(sys.apply(t, xs.back()));
    std::vector<char> hit(horizon + 1, 0);
    for (const auto& y0 : witnesses) {
        if (!(sys.dist(x, y0) < eps)) continue;
        auto y = y0;
        for (long n = 1; n <= horizon; ++n) {
            y = sys.apply(n - 1, y);
            if (!hit[n] && sys.dist(xs[n], y) > delta) hit[n] = 1;
        }
    }
    TimeSet ts;
    ts.horizon = horizon;
    for (long n = 1; n <= horizon; ++n)
        if (hit[n]) ts.members.push_back(n);
    return ts;
}

template <class Sys>
TimeSet sensitivity_times(const Sys& sys, const typename Sys::State& x, const Rat& eps,
                          const Rat& delta, long horizon, long samples,
                          long random_extras = 0, uint64_t seed = 0) {
    if (samples < 1) throw argument_error("sensitivity_times: samples >= 1");
    std::mt19937_64 rng(seed);
    auto witnesses = sample_ball(sys, x, eps, samples, random_extras, rng);
    return sensitivity_times_from(sys, x, eps, delta, horizon, witnesses);
}

struct MultiSensitivityReport {
    bool member = false;
    TimeSet intersection;
    std::vector<TimeSet> per_point;
};

template <class Sys>
MultiSensitivityReport check_multi_F_sensitive(
    const Sys& sys, const std::vector<typename Sys::State>& points, const Rat& eps,
    const Rat& delta, const FamilyPredicate& family, long horizon, long samples,
    long random_extras = 0, uint64_t seed = 0) {
    if (points.empty()) throw argument_error("check_multi_F_sensitive: no points");
    MultiSensitivityReport report;
    for (const auto& p : points)
        report.per_point.push_back(
            sensitivity_times(sys, p, eps, delta, horizon, samples, random_extras, seed));
    report.intersection = report.per_point.front();
    for (size_t i = 1; i < report.per_point.size(); ++i)
        report.intersection = intersect(report.intersection, report.per_point[i]);
    report.member = family_member(family, report.intersection);
    return report;
}

// --- Induced-system containments --------------------------------------------

struct ContainmentReport {
    TimeSet fuzzy_chi;    // N_{d_inf}(chi_K, eps, delta)
    TimeSet hyper_K;      // N_{D_X}(K, eps, delta)
    TimeSet hyper_core;   // N_{D_X}([u]_1, eps/4, delta)
    TimeSet fuzzy_u;      // N_{d_inf}(u, eps, delta)
    bool containment_chi = false;   // fuzzy_chi subset of hyper_K
    bool containment_core = false;  // hyper_core subset of fuzzy_u
    std::vector<long> violations;   // offending n (sampling artifacts)
};

// Two induced-system inclusions checked on coupled samples. Each fuzzy
// witness near chi_K contributes its level sets as hyper witnesses near K;
// each hyper witness K' near the core [u]_1 contributes a lifted fuzzy
// witness with core K' and every lower level widened by K'. Both transfers
// preserve the ball constraint and the separation, so the inclusions hold by
// construction unless sampling is asymmetric.
inline ContainmentReport induced_containments(const NdsSpec& nds, const FiniteCompact& K,
                                              const PCFuzzy& u, const Rat& eps,
                                              const Rat& delta, long horizon,
                                              long samples, long random_extras = 0,
                                              uint64_t seed = 0) {
    HyperSystem hyper{nds, 8};
    FuzzySystem fuzzy{nds};
    std::mt19937_64 rng(seed);

    // (i) N_{d_inf}(chi_K) vs N_{D_X}(K)
    PCFuzzy chiK = chi(K);
    auto fuzzy_samples = sample_ball(fuzzy, chiK, eps, samples, random_extras, rng);
    ContainmentReport report;
    report.fuzzy_chi =
        sensitivity_times_from(fuzzy, chiK, eps, delta, horizon, fuzzy_samples);
    std::vector<FiniteCompact> hyper_samples =
        sample_ball(hyper, K, eps, samples, random_extras, rng);
    for (const auto& v : fuzzy_samples)
        for (const auto& level : v.levels()) hyper_samples.push_back(level);
    report.hyper_K = sensitivity_times_from(hyper, K, eps, delta, horizon, hyper_samples);

    // (ii) N_{D_X}([u]_1, eps/4) vs N_{d_inf}(u, eps)
    const FiniteCompact& core = u.core();
    auto core_samples = sample_ball(hyper, core, eps / 4, samples, random_extras, rng);
    report.hyper_core =
        sensitivity_times_from(hyper, core, eps / 4, delta, horizon, core_samples);
    std::vector<PCFuzzy> u_samples = sample_ball(fuzzy, u, eps, samples, random_extras, rng);
    for (const auto& Kp : core_samples) {
        std::vector<FiniteCompact> levels;
        for (size_t i = 0; i + 1 < u.levels().size(); ++i)
            levels.push_back(u.levels()[i].unite(Kp));
        levels.push_back(Kp);
        u_samples.emplace_back(u.thresholds(), std::move(levels));
    }
    report.fuzzy_u = sensitivity_times_from(fuzzy, u, eps, delta, horizon, u_samples);

    report.containment_chi = report.fuzzy_chi.subset_of(report.hyper_K);
    report.containment_core = report.hyper_core.subset_of(report.fuzzy_u);
    for (long n : report.fuzzy_chi.members)
        if (!report.hyper_K.contains(n)) report.violations.push_back(n);
    for (long n : report.hyper_core.members)
        if (!report.fuzzy_u.contains(n)) report.violations.push_back(n);
    return report;
}

}  // namespace ndstk
