#pragma once

#include "ndstk/systems.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ndstk {

// Generic delta-pseudo-orbit check: strict inequality at every step, exact.
template <class Sys>
bool is_pseudo_orbit(const Sys& sys, const std::vector<typename Sys::State>& seq,
                     const Rat& delta, long start_time = 0) {
    if (delta <= 0) throw argument_error("is_pseudo_orbit: delta must be positive");
    if (seq.size() < 2) throw argument_error("is_pseudo_orbit: need at least two states");
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        if (!(sys.dist(sys.apply(start_time + static_cast<long>(i), seq[i]), seq[i + 1]) <
              delta))
            return false;
    return true;
}

inline bool is_pseudo_orbit(const NdsSpec& nds, const std::vector<Rat>& seq,
                            const Rat& delta, long start_time = 0) {
    return is_pseudo_orbit(BaseSystem{nds}, seq, delta, start_time);
}

// A validated delta-chain: d(f_{t+i}(states[i]), states[i+1]) < delta.
template <class State>
struct Chain {
    std::vector<State> states;
    Rat delta;
    long start_time = 0;
};

template <class Sys>
Chain<typename Sys::State> make_chain(const Sys& sys,
                                      std::vector<typename Sys::State> states,
                                      Rat delta, long start_time = 0) {
    Chain<typename Sys::State> c{std::move(states), std::move(delta), start_time};
    if (!is_pseudo_orbit(sys, c.states, c.delta, c.start_time))
        throw argument_error("Chain: sequence is not a delta-pseudo-orbit");
    return c;
}

// BFS through the time-layered graph over grid union {y}: layer-t edges are
// u -> v iff d(f_t(u), v) < delta. Returns a chain of exactly the requested
// length, or nothing at this resolution. Successors are claimed in grid
// order by the earliest frontier node, so witnesses are reproducible.
template <class Sys>
std::optional<Chain<typename Sys::State>> find_chain(
    const Sys& sys, const typename Sys::State& x, const typename Sys::State& y,
    const Rat& delta, long length, const std::vector<typename Sys::State>& grid) {
    if (delta <= 0) throw argument_error("find_chain: delta must be positive");
    if (length < 1) throw argument_error("find_chain: length >= 1");
    if (grid.empty()) throw argument_error("find_chain: empty grid");
    using State = typename Sys::State;
    std::vector<State> nodes = grid;
    nodes.push_back(y);  // y is always a legal waypoint
    const int n = static_cast<int>(nodes.size());
    const int yid = n - 1;
    // parents[t][v] = frontier node at layer t-1 that first reached v (or -2
    // for x itself); -1 = unreached.
    std::vector<std::vector<int>> parents(length + 1, std::vector<int>(n, -1));
    std::vector<int> frontier;
    {
        State fx = sys.apply(0, x);
        for (int v = 0; v < n; ++v)
            if (sys.dist(fx, nodes[v]) < delta) {
                parents[1][v] = -2;
                frontier.push_back(v);
            }
    }
    for (long t = 1; t < length && !frontier.empty(); ++t) {
        std::vector<int> next;
        std::vector<State> images;
        images.reserve(frontier.size());
        for (int u : frontier) images.push_back(sys.apply(t, nodes[u]));
        for (int v = 0; v < n; ++v) {
            if (parents[t + 1][v] >= 0 || parents[t + 1][v] == -2) continue;
            for (size_t k = 0; k < frontier.size(); ++k)
                if (sys.dist(images[k], nodes[v]) < delta) {
                    parents[t + 1][v] = frontier[k];
                    next.push_back(v);
                    break;
                }
        }
        frontier = std::move(next);
    }
    if (parents[length][yid] == -1) return std::nullopt;
    std::vector<State> path(length + 1, x);
    int at = yid;
    for (long t = length; t >= 1; --t) {
        path[t] = nodes[at];
        int p = parents[t][at];
        if (p == -2) break;
        at = p;
    }
    path[length] = y;  // keep the exact requested endpoint
    return make_chain(sys, std::move(path), delta);
}

enum class ChainProperty { transitive, mixing, weak_mixing };
enum class ChainVerdict { verified_at_resolution, inconclusive };

struct PairResult {
    size_t from;
    size_t to;
    long min_length;  // -1 when no chain found within the horizon
};

struct ChainReport {
    ChainProperty property;
    int order = 1;  // for weak_mixing
    Rat epsilon;
    long grid_size = 0;
    long horizon = 0;
    ChainVerdict verdict = ChainVerdict::inconclusive;
    long mixing_N = -1;  // minimal N valid up to the horizon; see note
    std::string note;
    std::vector<PairResult> pairs;
};

// Resolution-qualified chain property check on ordered grid pairs. Chain
// properties quantify over all epsilon, so a grid check can verify at this
// resolution or come back inconclusive — never refute.
template <class Sys>
ChainReport check_chain_property(const Sys& sys, ChainProperty property, int order,
                                 const Rat& eps,
                                 const std::vector<typename Sys::State>& grid,
                                 long horizon) {
    if (grid.empty()) throw argument_error("check_chain_property: empty grid");
    if (eps <= 0) throw argument_error("check_chain_property: epsilon must be positive");
    if (horizon < 1) throw argument_error("check_chain_property: horizon >= 1");
    if (property == ChainProperty::weak_mixing && order < 2)
        throw argument_error("check_chain_property: weak mixing order >= 2");
    const size_t n = grid.size();
    const size_t words = (horizon + 64) / 64;

    // lengths[u][v] = set of chain lengths in [1, horizon] from u to v.
    std::vector<std::vector<std::vector<uint64_t>>> lengths(
        n, std::vector<std::vector<uint64_t>>(n, std::vector<uint64_t>(words, 0)));
    {
        const size_t frow = (n + 63) / 64;
        std::vector<std::vector<uint64_t>> frontier(n, std::vector<uint64_t>(frow, 0));
        for (size_t u = 0; u < n; ++u) frontier[u][u / 64] |= uint64_t(1) << (u % 64);
        std::vector<std::vector<uint64_t>> adj(n, std::vector<uint64_t>(frow, 0));
        for (long t = 1; t <= horizon; ++t) {
            for (size_t u = 0; u < n; ++u) {
                std::fill(adj[u].begin(), adj[u].end(), 0);
                auto img = sys.apply(t - 1, grid[u]);
                for (size_t v = 0; v < n; ++v)
                    if (sys.dist(img, grid[v]) < eps)
                        adj[u][v / 64] |= uint64_t(1) << (v % 64);
            }
            for (size_t s = 0; s < n; ++s) {
                std::vector<uint64_t> next(frow, 0);
                for (size_t u = 0; u < n; ++u)
                    if (frontier[s][u / 64] >> (u % 64) & 1)
                        for (size_t w = 0; w < frow; ++w) next[w] |= adj[u][w];
                frontier[s] = std::move(next);
                for (size_t v = 0; v < n; ++v)
                    if (frontier[s][v / 64] >> (v % 64) & 1)
                        lengths[s][v][t / 64] |= uint64_t(1) << (t % 64);
            }
        }
    }

    auto any_bit = [&](const std::vector<uint64_t>& mask) {
        for (uint64_t w : mask)
            if (w) return true;
        return false;
    };
    auto min_bit = [&](const std::vector<uint64_t>& mask) -> long {
        for (size_t w = 0; w < mask.size(); ++w)
            if (mask[w]) {
                unsigned long b = 0;
                uint64_t m = mask[w];
                while (!(m & 1)) {
                    m >>= 1;
                    ++b;
                }
                return static_cast<long>(w * 64 + b);
            }
        return -1;
    };

    ChainReport report;
    report.property = property;
    report.order = property == ChainProperty::weak_mixing ? order : 1;
    report.epsilon = eps;
    report.grid_size = static_cast<long>(n);
    report.horizon = horizon;

    if (property == ChainProperty::transitive) {
        bool all = true;
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) {
                long ml = min_bit(lengths[u][v]);
                report.pairs.push_back({u, v, ml});
                all = all && ml >= 0;
            }
        report.verdict =
            all ? ChainVerdict::verified_at_resolution : ChainVerdict::inconclusive;
        if (!all) report.note = "some pair unreachable within horizon";
        return report;
    }

    if (property == ChainProperty::mixing) {
        // Per pair: minimal N with every length in [N, horizon] present.
        long worst_N = 1;
        bool all = true;
        for (size_t u = 0; u < n; ++u)
            for (size_t v = 0; v < n; ++v) {
                long N = -1;
                long run_start = -1;
                for (long t = 1; t <= horizon; ++t) {
                    bool hit = lengths[u][v][t / 64] >> (t % 64) & 1;
                    if (hit && run_start < 0) run_start = t;
                    if (!hit) run_start = -1;
                }
                if (run_start >= 0) N = run_start;
                report.pairs.push_back({u, v, N});
                if (N < 0)
                    all = false;
                else if (N > worst_N)
                    worst_N = N;
            }
        if (all) {
            report.verdict = ChainVerdict::verified_at_resolution;
            report.mixing_N = worst_N;
            report.note =
                "N valid for lengths up to the horizon; stability beyond the "
                "horizon is untested";
        } else {
            report.verdict = ChainVerdict::inconclusive;
            report.note = "some pair has no tail of consecutive lengths";
        }
        return report;
    }

    // weak_mixing(order): chain transitivity of the order-fold product. A
    // product chain of length t between tuples exists iff each coordinate
    // pair admits a chain of length t (max metric, product grid), so the
    // check factorizes: every order-tuple of pair length-sets must intersect.
    std::vector<std::vector<uint64_t>> distinct;
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v) {
            if (!any_bit(lengths[u][v])) {
                report.verdict = ChainVerdict::inconclusive;
                report.note = "a coordinate pair is unreachable within horizon";
                report.pairs.push_back({u, v, -1});
                return report;
            }
            distinct.push_back(lengths[u][v]);
        }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    bool ok = true;
    std::vector<uint64_t> acc(words);
    auto rec = [&](auto&& self, size_t from, int depth,
                   const std::vector<uint64_t>& cur) -> void {
        if (!ok) return;
        if (depth == report.order) return;
        for (size_t i = from; i < distinct.size() && ok; ++i) {
            std::vector<uint64_t> next(words);
            bool nonempty = false;
            for (size_t w = 0; w < words; ++w) {
                next[w] = cur[w] & distinct[i][w];
                nonempty = nonempty || next[w];
            }
            if (!nonempty) {
                ok = false;
                return;
            }
            self(self, i, depth + 1, next);
        }
    };
    std::fill(acc.begin(), acc.end(), ~uint64_t(0));
    rec(rec, 0, 0, acc);
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v)
            report.pairs.push_back({u, v, min_bit(lengths[u][v])});
    report.verdict = ok ? ChainVerdict::verified_at_resolution : ChainVerdict::inconclusive;
    if (!ok) report.note = "some tuple of pairs shares no common chain length";
    return report;
}

// Level-set chain lifting: given per-level compact chains E^1 .. E^k (level
// r evolves the alpha-cut at threshold r), the fuzzy chain has
// [u_j]_{alpha_i} = union of E^r_j for r >= i. Nesting holds by
// construction, and each step error is at most the worst level step error.
inline Chain<PCFuzzy> lift_chain_to_fuzzy(const NdsSpec& nds,
                                          const std::vector<Chain<FiniteCompact>>& level_chains,
                                          const std::vector<Rat>& thresholds) {
    if (level_chains.empty()) throw argument_error("lift_chain_to_fuzzy: no level chains");
    if (level_chains.size() != thresholds.size())
        throw argument_error("lift_chain_to_fuzzy: thresholds/levels mismatch");
    const size_t len = level_chains.front().states.size();
    const Rat& delta = level_chains.front().delta;
    const long t0 = level_chains.front().start_time;
    for (const auto& c : level_chains) {
        if (c.states.size() != len)
            throw argument_error("lift_chain_to_fuzzy: mismatched chain lengths");
        if (c.delta != delta || c.start_time != t0)
            throw argument_error("lift_chain_to_fuzzy: mismatched delta or start time");
    }
    const size_t k = level_chains.size();
    std::vector<PCFuzzy> states;
    states.reserve(len);
    for (size_t j = 0; j < len; ++j) {
        std::vector<FiniteCompact> levels;
        levels.reserve(k);
        for (size_t i = 0; i < k; ++i) {
            FiniteCompact u = level_chains[i].states[j];
            for (size_t r = i + 1; r < k; ++r) u = u.unite(level_chains[r].states[j]);
            levels.push_back(std::move(u));
        }
        states.emplace_back(thresholds, std::move(levels));
    }
    return make_chain(FuzzySystem{nds}, std::move(states), delta, t0);
}

}  // namespace ndstk
