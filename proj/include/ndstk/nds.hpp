#pragma once

#include "ndstk/plmap.hpp"

#include <variant>
#include <vector>

namespace ndstk {

// Non-autonomous map sequence {f_n}: a finite explicit prefix followed by a
// tail rule. Tail rules cover every construction used here: a constant map,
// a cyclic schedule, or level blocks (map repeated block_length times, then
// the next block, then a constant map beyond the last block).
struct NdsSpec {
    struct ConstantTail {
        PLMap map;
    };
    struct CycleTail {
        std::vector<PLMap> maps;
    };
    struct LevelsTail {
        struct Block {
            PLMap map;
            long length;
        };
        std::vector<Block> blocks;
        PLMap beyond;
    };
    using Tail = std::variant<ConstantTail, CycleTail, LevelsTail>;

    Space space;
    std::vector<PLMap> prefix;
    Tail tail;

    static NdsSpec constant(PLMap f) {
        Space sp = f.space();
        return NdsSpec{sp, {}, ConstantTail{std::move(f)}};
    }

    static NdsSpec cycle(std::vector<PLMap> maps) {
        if (maps.empty()) throw argument_error("NdsSpec cycle: empty map list");
        Space sp = maps.front().space();
        return NdsSpec{sp, {}, CycleTail{std::move(maps)}};
    }

    const PLMap& map_at(long n) const {
        if (n < 0) throw argument_error("map_at: negative time");
        if (n < static_cast<long>(prefix.size())) return prefix[n];
        long k = n - static_cast<long>(prefix.size());
        if (const auto* c = std::get_if<ConstantTail>(&tail)) return c->map;
        if (const auto* c = std::get_if<CycleTail>(&tail))
            return c->maps[k % c->maps.size()];
        const auto& lv = std::get<LevelsTail>(tail);
        for (const auto& b : lv.blocks) {
            if (k < b.length) return b.map;
            k -= b.length;
        }
        return lv.beyond;
    }

    void validate() const {
        auto check = [&](const PLMap& f) {
            if (f.space() != space)
                throw argument_error("NdsSpec: map space mismatch");
        };
        for (const auto& f : prefix) check(f);
        if (const auto* c = std::get_if<ConstantTail>(&tail)) check(c->map);
        if (const auto* c = std::get_if<CycleTail>(&tail)) {
            if (c->maps.empty()) throw argument_error("NdsSpec: empty cycle");
            for (const auto& f : c->maps) check(f);
        }
        if (const auto* c = std::get_if<LevelsTail>(&tail)) {
            for (const auto& b : c->blocks) {
                check(b.map);
                if (b.length < 1) throw argument_error("NdsSpec: block length < 1");
            }
            check(c->beyond);
        }
    }
};

// Orbit x0, f_0(x0), f_1 f_0(x0), ..., of length n+1.
inline std::vector<Rat> orbit(const NdsSpec& nds, const Rat& x0, long n) {
    if (n < 0) throw argument_error("orbit: negative length");
    std::vector<Rat> out;
    out.reserve(n + 1);
    out.push_back(reduce_point(nds.space, x0));
    for (long k = 0; k < n; ++k) out.push_back(nds.map_at(k).eval(out.back()));
    return out;
}

// f_0^n = f_{n-1} o ... o f_0 applied to x.
inline Rat iterate(const NdsSpec& nds, Rat x, long n) {
    x = reduce_point(nds.space, x);
    for (long k = 0; k < n; ++k) x = nds.map_at(k).eval(x);
    return x;
}

}  // namespace ndstk
