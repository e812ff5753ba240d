#pragma once

#include "ndstk/nds.hpp"

#include <vector>

namespace ndstk {

// Connect-the-dots map F_m through (a_i, a_i), (c_i, c_{i+1}), (d_i, d_{i-1})
// for 0 <= i <= m-1, where a_i = i/m, c_i = a_i + 1/(3m), d_i = a_i + 2/(3m),
// d_{-1} = 0, c_m = 1, plus the endpoint F_m(1) = 1. 3m+1 nodes; the rising
// segments at each cell boundary merge, giving 2m+1 monotone laps.
inline PLMap build_Fm(long m) {
    if (m < 1) throw argument_error("build_Fm: m must be positive");
    auto a = [&](long i) { return Rat(i, m); };
    auto c = [&](long i) { return i == m ? Rat(1) : Rat(3 * i + 1, 3 * m); };
    auto d = [&](long i) { return i == -1 ? Rat(0) : Rat(3 * i + 2, 3 * m); };
    std::vector<PLMap::Node> nodes;
    nodes.reserve(3 * m + 1);
    for (long i = 0; i < m; ++i) {
        nodes.push_back({a(i), a(i)});
        nodes.push_back({c(i), c(i + 1)});
        nodes.push_back({d(i), d(i - 1)});
    }
    nodes.push_back({Rat(1), Rat(1)});
    return PLMap(Space::interval, std::move(nodes));
}

struct TransitiveZeroEntropy {
    NdsSpec nds;
    // s[k-1] is the block boundary for level k: f_0^{s_k}(J) = [0,1] for every
    // dyadic interval J of generation k.
    std::vector<long> boundaries;
};

// The transitive NDS built from level blocks of F_m maps: block k repeats F_k
// until the image of every dyadic interval of generation k under the whole
// composition so far equals [0,1], verified exactly. Minimal block lengths.
inline TransitiveZeroEntropy build_transitive_zero_entropy(long levels) {
    if (levels < 1) throw argument_error("build_transitive_zero_entropy: levels >= 1");
    constexpr long kSafetyCap = 1000000;
    std::vector<NdsSpec::LevelsTail::Block> blocks;
    std::vector<long> boundaries;
    long s = 0;
    // Track the exact forward image of every dyadic interval of the current
    // generation; finer generations restart from the dyadic intervals and
    // replay the sequence built so far.
    for (long k = 1; k <= levels; ++k) {
        PLMap fk = build_Fm(k);
        std::vector<IntervalUnion> imgs;
        for (long i = 0; i < (1L << k); ++i)
            imgs.push_back(IntervalUnion::single(Rat(i, 1L << k), Rat(i + 1, 1L << k)));
        for (const auto& b : blocks)
            for (long t = 0; t < b.length; ++t)
                for (auto& u : imgs) u = image(b.map, u);
        auto all_full = [&] {
            for (const auto& u : imgs)
                if (!(u == IntervalUnion::full())) return false;
            return true;
        };
        long l = 0;
        do {
            if (++l + s > kSafetyCap)
                throw std::runtime_error("build_transitive_zero_entropy: iteration cap hit");
            for (auto& u : imgs) u = image(fk, u);
        } while (!all_full());
        blocks.push_back({fk, l});
        s += l;
        boundaries.push_back(s);
    }
    NdsSpec::LevelsTail tail{std::move(blocks), build_Fm(levels + 1)};
    NdsSpec nds{Space::interval, {}, std::move(tail)};
    return {std::move(nds), std::move(boundaries)};
}

// Sequence of rigid rotations; the tail cycles the angle list.
inline NdsSpec build_rotation_sequence(const std::vector<Rat>& angles) {
    if (angles.empty()) throw argument_error("build_rotation_sequence: empty angle list");
    std::vector<PLMap> maps;
    maps.reserve(angles.size());
    for (const auto& a : angles) maps.push_back(PLMap::rotation(a));
    return NdsSpec::cycle(std::move(maps));
}

}  // namespace ndstk
