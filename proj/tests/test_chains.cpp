#include "ndstk/chains.hpp"

#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace ndstk;

namespace {
const NdsSpec kTent = NdsSpec::constant(PLMap::tent());
const NdsSpec kId = NdsSpec::constant(PLMap::identity());
}  // namespace

TEST_CASE("is_pseudo_orbit on hand-checked sequences") {
    // tent: f(2/5) = 4/5, jump to 9/10 has error 1/10 < 11/100;
    //       f(9/10) = 1/5, jump to 3/10 has error 1/10 < 11/100
    CHECK(is_pseudo_orbit(kTent, {Rat(2, 5), Rat(9, 10), Rat(3, 10)}, Rat(11, 100)));
    CHECK_FALSE(is_pseudo_orbit(kTent, {Rat(2, 5), Rat(9, 10), Rat(3, 10)}, Rat(1, 10)));
    // identity cannot jump a gap of 1 with delta 1/2
    CHECK_FALSE(is_pseudo_orbit(kId, {Rat(0), Rat(1)}, Rat(1, 2)));
    // true orbits are delta-pseudo-orbits for every positive delta
    auto orb = orbit(kTent, Rat(1, 3), 6);
    CHECK(is_pseudo_orbit(kTent, orb, Rat(1, 1000000)));
    CHECK_THROWS_AS(is_pseudo_orbit(kTent, orb, Rat(0)), argument_error);
    CHECK_THROWS_AS(is_pseudo_orbit(kTent, {Rat(0)}, Rat(1, 2)), argument_error);
}

TEST_CASE("make_chain validates") {
    BaseSystem sys{kTent};
    CHECK_NOTHROW(make_chain(sys, {Rat(2, 5), Rat(9, 10), Rat(3, 10)}, Rat(11, 100)));
    CHECK_THROWS_AS(make_chain(sys, {Rat(0), Rat(1)}, Rat(1, 2)), argument_error);
}

TEST_CASE("find_chain: identity needs four steps to cross with delta 3/10") {
    BaseSystem sys{kId};
    auto grid = uniform_grid(Space::interval, 100);
    auto c4 = find_chain(sys, Rat(0), Rat(1), Rat(3, 10), 4, grid);
    REQUIRE(c4.has_value());
    CHECK(c4->states.size() == 5);
    CHECK(c4->states.front() == 0);
    CHECK(c4->states.back() == 1);
    CHECK(is_pseudo_orbit(sys, c4->states, Rat(3, 10)));
    // three strict jumps below 3/10 cover less than 9/10 < 1
    CHECK_FALSE(find_chain(sys, Rat(0), Rat(1), Rat(3, 10), 3, grid).has_value());
}

TEST_CASE("find_chain: tent reaches 0 from 1/2 in two steps") {
    BaseSystem sys{kTent};
    auto grid = uniform_grid(Space::interval, 100);
    auto c = find_chain(sys, Rat(1, 2), Rat(0), Rat(1, 100), 2, grid);
    REQUIRE(c.has_value());
    CHECK(c->states == std::vector<Rat>{Rat(1, 2), Rat(1), Rat(0)});
    // length-1 chain at a fixed point
    auto fp = find_chain(sys, Rat(0), Rat(0), Rat(1, 100), 1, grid);
    REQUIRE(fp.has_value());
    CHECK(fp->states == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK_THROWS_AS(find_chain(sys, Rat(0), Rat(1), Rat(0), 2, grid), argument_error);
}

TEST_CASE("find_chain witnesses are always valid pseudo-orbits") {
    BaseSystem sys{kTent};
    auto grid = uniform_grid(Space::interval, 50);
    std::mt19937_64 rng(41);
    int found = 0;
    for (int t = 0; t < 60; ++t) {
        Rat x = testutil::rand_rat(rng, 50);
        Rat y = testutil::rand_rat(rng, 50);
        std::uniform_int_distribution<long> dl(1, 8);
        long len = dl(rng);
        auto c = find_chain(sys, x, y, Rat(1, 20), len, grid);
        if (!c) continue;
        ++found;
        CHECK(c->states.size() == static_cast<size_t>(len) + 1);
        CHECK(c->states.front() == x);
        CHECK(c->states.back() == y);
        CHECK(is_pseudo_orbit(sys, c->states, Rat(1, 20)));
    }
    CHECK(found > 0);
}

TEST_CASE("tent system is chain mixing at this resolution") {
    BaseSystem sys{kTent};
    auto grid = uniform_grid(Space::interval, 25);
    auto report = check_chain_property(sys, ChainProperty::mixing, 1, Rat(1, 10), grid, 32);
    CHECK(report.verdict == ChainVerdict::verified_at_resolution);
    CHECK(report.mixing_N >= 1);
    CHECK(report.mixing_N <= 32);
    CHECK(report.pairs.size() == grid.size() * grid.size());

    // the hierarchy holds on the same instance
    auto wm = check_chain_property(sys, ChainProperty::weak_mixing, 2, Rat(1, 10), grid, 32);
    CHECK(wm.verdict == ChainVerdict::verified_at_resolution);
    auto tr = check_chain_property(sys, ChainProperty::transitive, 1, Rat(1, 10), grid, 32);
    CHECK(tr.verdict == ChainVerdict::verified_at_resolution);
}

TEST_CASE("identity is chain transitive and chain mixing under the strict rule") {
    // idle steps have error 0 < delta, so arbitrarily slow crossings give
    // every sufficiently large chain length between any two points
    BaseSystem sys{kId};
    auto grid = uniform_grid(Space::interval, 8);
    auto tr = check_chain_property(sys, ChainProperty::transitive, 1, Rat(1, 4), grid, 16);
    CHECK(tr.verdict == ChainVerdict::verified_at_resolution);
    auto mx = check_chain_property(sys, ChainProperty::mixing, 1, Rat(1, 4), grid, 16);
    CHECK(mx.verdict == ChainVerdict::verified_at_resolution);
    // strict 1/4-jumps between den-8 grid points move one cell per step,
    // so crossing [0,1] needs 8 steps; self-loops fill in every later length
    CHECK(mx.mixing_N == 8);
}

TEST_CASE("inconclusive when the horizon is too short") {
    BaseSystem sys{kId};
    auto grid = uniform_grid(Space::interval, 8);
    auto tr = check_chain_property(sys, ChainProperty::transitive, 1, Rat(1, 4), grid, 2);
    CHECK(tr.verdict == ChainVerdict::inconclusive);
    CHECK_THROWS_AS(
        check_chain_property(sys, ChainProperty::weak_mixing, 1, Rat(1, 4), grid, 8),
        argument_error);
}

TEST_CASE("lift_chain_to_fuzzy: characteristic lift of a single level") {
    BaseSystem base{kTent};
    HyperSystem hyper{kTent, 4};
    auto c = make_chain(base, {Rat(2, 5), Rat(9, 10), Rat(3, 10)}, Rat(11, 100));
    std::vector<FiniteCompact> sets;
    for (const auto& x : c.states) sets.emplace_back(Space::interval, std::vector<Rat>{x});
    auto hc = make_chain(hyper, sets, c.delta);
    auto fc = lift_chain_to_fuzzy(kTent, {hc}, {Rat(1)});
    REQUIRE(fc.states.size() == 3);
    for (size_t j = 0; j < 3; ++j)
        CHECK(fc.states[j].same_fuzzy_set(chi(sets[j])));
}

TEST_CASE("lift_chain_to_fuzzy: two nested levels under the tent") {
    HyperSystem hyper{kTent, 4};
    // support-level chain and core-level chain with a shared delta
    Rat delta(1, 8);
    std::vector<FiniteCompact> lo{
        FiniteCompact(Space::interval, {Rat(0), Rat(1, 2)}),
        FiniteCompact(Space::interval, {Rat(0), Rat(1)}),
        FiniteCompact(Space::interval, {Rat(0)})};
    std::vector<FiniteCompact> hi{
        FiniteCompact(Space::interval, {Rat(1, 2)}),
        FiniteCompact(Space::interval, {Rat(1)}),
        FiniteCompact(Space::interval, {Rat(0)})};
    auto clo = make_chain(hyper, lo, delta);
    auto chi_ = make_chain(hyper, hi, delta);
    auto fc = lift_chain_to_fuzzy(kTent, {clo, chi_}, {Rat(1, 2), Rat(1)});
    REQUIRE(fc.states.size() == 3);
    // level at 1/2 is the union of both chains, level at 1 is the core chain
    for (size_t j = 0; j < 3; ++j) {
        CHECK(level_set(fc.states[j], Rat(1, 2)) == lo[j].unite(hi[j]));
        CHECK(level_set(fc.states[j], Rat(1)) == hi[j]);
    }
    // validated against the fuzzy system metric on construction
    CHECK(is_pseudo_orbit(FuzzySystem{kTent}, fc.states, delta));
    // mismatched lengths are rejected
    auto short_chain = make_chain(hyper, {hi[0], hi[1]}, delta);
    CHECK_THROWS_AS(lift_chain_to_fuzzy(kTent, {clo, short_chain}, {Rat(1, 2), Rat(1)}),
                    argument_error);
}

TEST_CASE("singleton chains agree across base, hyperspace, fuzzy") {
    BaseSystem base{kTent};
    HyperSystem hyper{kTent, 2};
    FuzzySystem fuzzy{kTent};
    std::mt19937_64 rng(43);
    for (int t = 0; t < 100; ++t) {
        std::vector<Rat> seq;
        for (int j = 0; j < 4; ++j) seq.push_back(testutil::rand_rat(rng, 30));
        std::vector<FiniteCompact> sets;
        std::vector<PCFuzzy> fz;
        for (const auto& x : seq) {
            sets.emplace_back(Space::interval, std::vector<Rat>{x});
            fz.push_back(chi(sets.back()));
        }
        Rat delta(1, 5);
        bool b = is_pseudo_orbit(base, seq, delta);
        CHECK(b == is_pseudo_orbit(hyper, sets, delta));
        CHECK(b == is_pseudo_orbit(fuzzy, fz, delta));
    }
}
