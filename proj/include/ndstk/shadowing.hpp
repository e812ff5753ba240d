#pragma once

#include "ndstk/chains.hpp"
#include "ndstk/interval_union.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace ndstk {

// Per-step constraint sets S_k (admissible values of f_0^k(z)) and the
// exactly pulled-back feasible set of starting points.
struct Tube {
    std::vector<IntervalUnion> steps;
    IntervalUnion feasible;
};

// Closed epsilon-tube around a pseudo-orbit, with the feasible set computed
// by exact backward propagation: A_n = S_n, A_k = S_k cap f_k^{-1}(A_{k+1}).
inline Tube tube_set(const NdsSpec& nds, const std::vector<Rat>& pseudo_orbit,
                     const Rat& eps) {
    if (nds.space != Space::interval)
        throw argument_error("tube_set: circle systems unsupported");
    if (pseudo_orbit.empty()) throw argument_error("tube_set: empty pseudo-orbit");
    if (eps <= 0) throw argument_error("tube_set: epsilon must be positive");
    Tube tube;
    tube.steps.reserve(pseudo_orbit.size());
    for (const auto& x : pseudo_orbit)
        tube.steps.push_back(
            IntervalUnion::single(rat_max(Rat(0), x - eps), rat_min(Rat(1), x + eps)));
    IntervalUnion admissible = tube.steps.back();
    for (size_t k = pseudo_orbit.size() - 1; k-- > 0;)
        admissible =
            tube.steps[k].intersect(preimage(nds.map_at(static_cast<long>(k)), admissible));
    tube.feasible = admissible;
    return tube;
}

struct ShadowDecision {
    bool shadowed = false;
    std::optional<Rat> witness;  // leftmost feasible point
    bool boundary_tight = false;  // witness touches a closed tube boundary
    Tube tube;
};

namespace detail {

// The closed-tube decision can differ from the strict one only when the
// witness orbit touches a tube boundary; flag that case.
inline bool witness_touches_boundary(const NdsSpec& nds, const Rat& z,
                                     const std::vector<Rat>& pseudo_orbit,
                                     const Rat& eps, size_t upto) {
    Rat v = z;
    for (size_t k = 0; k < upto; ++k) {
        if (rat_abs(v - pseudo_orbit[k]) == eps) return true;
        v = nds.map_at(static_cast<long>(k)).eval(v);
    }
    return false;
}

}  // namespace detail

inline ShadowDecision decide_finite_shadowing(const NdsSpec& nds,
                                              const std::vector<Rat>& pseudo_orbit,
                                              const Rat& eps) {
    ShadowDecision d;
    d.tube = tube_set(nds, pseudo_orbit, eps);
    d.shadowed = !d.tube.feasible.is_empty();
    if (d.shadowed) {
        d.witness = d.tube.feasible.min();
        d.boundary_tight = detail::witness_touches_boundary(nds, *d.witness, pseudo_orbit,
                                                            eps, pseudo_orbit.size());
    }
    return d;
}

// h-shadowing: strict tube through step n-1, exact endpoint f_0^n(z) = x_n.
inline ShadowDecision decide_h_shadowing(const NdsSpec& nds,
                                         const std::vector<Rat>& pseudo_orbit,
                                         const Rat& eps) {
    if (nds.space != Space::interval)
        throw argument_error("decide_h_shadowing: circle systems unsupported");
    if (pseudo_orbit.size() < 2)
        throw argument_error("decide_h_shadowing: need at least two states");
    if (eps <= 0) throw argument_error("decide_h_shadowing: epsilon must be positive");
    ShadowDecision d;
    d.tube.steps.reserve(pseudo_orbit.size());
    for (size_t k = 0; k + 1 < pseudo_orbit.size(); ++k)
        d.tube.steps.push_back(IntervalUnion::single(
            rat_max(Rat(0), pseudo_orbit[k] - eps), rat_min(Rat(1), pseudo_orbit[k] + eps)));
    d.tube.steps.push_back(IntervalUnion::point(pseudo_orbit.back()));
    IntervalUnion admissible = d.tube.steps.back();
    for (size_t k = pseudo_orbit.size() - 1; k-- > 0;)
        admissible =
            d.tube.steps[k].intersect(preimage(nds.map_at(static_cast<long>(k)), admissible));
    d.tube.feasible = admissible;
    d.shadowed = !d.tube.feasible.is_empty();
    if (d.shadowed) {
        d.witness = d.tube.feasible.min();
        d.boundary_tight = detail::witness_touches_boundary(
            nds, *d.witness, pseudo_orbit, eps, pseudo_orbit.size() - 1);
    }
    return d;
}

struct ModulusRow {
    Rat delta;
    bool accepted;
};

struct ModulusEstimate {
    Rat eps;
    uint64_t seed = 0;
    long trials = 0;
    long orbit_length = 0;
    Rat delta;  // largest accepted delta, or 0
    std::vector<ModulusRow> rows;
    std::vector<Rat> counterexample;  // a failing pseudo-orbit when delta == 0
};

namespace detail {

// Random pseudo-orbit: true orbit plus i.i.d. uniform perturbations in
// (-delta, delta), clamped to [0,1]; exact rationals on a fine dyadic grid.
inline std::vector<Rat> random_pseudo_orbit(const NdsSpec& nds, std::mt19937_64& rng,
                                            long length, const Rat& delta) {
    constexpr long den = 1 << 20;
    std::uniform_int_distribution<long> start(0, den);
    std::uniform_int_distribution<long> jitter(-(den - 1), den - 1);
    std::vector<Rat> orbit;
    orbit.reserve(length + 1);
    orbit.emplace_back(start(rng), den);
    for (long k = 0; k < length; ++k) {
        Rat next = nds.map_at(k).eval(orbit.back()) + delta * Rat(jitter(rng), den);
        orbit.push_back(rat_min(Rat(1), rat_max(Rat(0), next)));
    }
    return orbit;
}

}  // namespace detail

// Largest delta in the grid such that every sampled delta-pseudo-orbit is
// eps-shadowed; randomized with a recorded seed.
inline ModulusEstimate estimate_shadowing_modulus(const NdsSpec& nds, const Rat& eps,
                                                  long trials, long orbit_length,
                                                  std::vector<Rat> delta_grid,
                                                  uint64_t seed) {
    if (trials < 1) throw argument_error("estimate_shadowing_modulus: trials >= 1");
    if (delta_grid.empty())
        throw argument_error("estimate_shadowing_modulus: empty delta grid");
    std::sort(delta_grid.begin(), delta_grid.end(), [](const Rat& a, const Rat& b) {
        return a > b;
    });
    ModulusEstimate est;
    est.eps = eps;
    est.seed = seed;
    est.trials = trials;
    est.orbit_length = orbit_length;
    est.delta = 0;
    for (const auto& delta : delta_grid) {
        std::mt19937_64 rng(seed);
        bool all_ok = true;
        std::vector<Rat> failing;
        for (long t = 0; t < trials && all_ok; ++t) {
            auto orbit = detail::random_pseudo_orbit(nds, rng, orbit_length, delta);
            if (!decide_finite_shadowing(nds, orbit, eps).shadowed) {
                all_ok = false;
                failing = std::move(orbit);
            }
        }
        est.rows.push_back({delta, all_ok});
        if (all_ok && est.delta == 0) est.delta = delta;
        if (!all_ok && est.delta == 0) est.counterexample = std::move(failing);
    }
    if (est.delta != 0) est.counterexample.clear();
    return est;
}

struct MixingTraceRow {
    long k;
    bool chain_found = false;
    bool shadowed = false;
    bool endpoints_ok = false;
};

struct MixingExperiment {
    ChainVerdict verdict = ChainVerdict::inconclusive;
    long N = -1;  // all k in [N, horizon] verified
    std::vector<MixingTraceRow> rows;
};

// Executable mixing-from-shadowing trace: for each length k up to the
// horizon, find a delta-chain from U_center to V_center, shadow it within
// eps, and check the witness starts eps-inside U and lands eps-inside V.
inline MixingExperiment mixing_from_shadowing(const NdsSpec& nds, const Rat& eps,
                                              const Rat& delta, const Rat& U_center,
                                              const Rat& V_center, const Rat& radius,
                                              long horizon, long grid_den = 100) {
    if (nds.space != Space::interval)
        throw argument_error("mixing_from_shadowing: circle systems unsupported");
    if (!(eps <= radius))
        throw argument_error("mixing_from_shadowing: need eps <= radius");
    BaseSystem base{nds};
    std::vector<Rat> grid = uniform_grid(Space::interval, grid_den);
    MixingExperiment exp;
    for (long k = 1; k <= horizon; ++k) {
        MixingTraceRow row;
        row.k = k;
        auto chain = find_chain(base, U_center, V_center, delta, k, grid);
        row.chain_found = chain.has_value();
        if (chain) {
            auto decision = decide_finite_shadowing(nds, chain->states, eps);
            row.shadowed = decision.shadowed;
            if (decision.shadowed) {
                Rat z = *decision.witness;
                Rat img = iterate(nds, z, k);
                row.endpoints_ok =
                    rat_abs(z - U_center) <= eps && rat_abs(img - V_center) <= eps;
            }
        }
        exp.rows.push_back(row);
    }
    long N = -1;
    for (long i = static_cast<long>(exp.rows.size()) - 1; i >= 0; --i) {
        if (!exp.rows[i].endpoints_ok) break;
        N = exp.rows[i].k;
    }
    exp.N = N;
    exp.verdict = N >= 1 && N <= horizon ? ChainVerdict::verified_at_resolution
                                         : ChainVerdict::inconclusive;
    return exp;
}

}  // namespace ndstk
