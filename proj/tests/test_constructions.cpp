#include "ndstk/constructions.hpp"

#include <doctest.h>

using namespace ndstk;

TEST_CASE("F_1 nodes are the standard 3-lap map") {
    PLMap F1 = build_Fm(1);
    std::vector<PLMap::Node> expected{{Rat(0), Rat(0)},
                                      {Rat(1, 3), Rat(1)},
                                      {Rat(2, 3), Rat(0)},
                                      {Rat(1), Rat(1)}};
    CHECK(F1.nodes() == expected);
    CHECK(F1.lap_count() == 3);
}

TEST_CASE("F_m node identities, lap count, slopes") {
    for (long m : {1L, 2L, 3L, 5L, 8L}) {
        PLMap F = build_Fm(m);
        REQUIRE(F.nodes().size() == static_cast<size_t>(3 * m + 1));
        // rising runs merge across cell boundaries: 2m + 1 monotone laps
        CHECK(F.lap_count() == 2 * m + 1);
        for (long i = 0; i < m; ++i) {
            // fixed points at the grid, full excursions inside each cell
            CHECK(F.eval(Rat(i, m)) == Rat(i, m));
            CHECK(F.eval(Rat(3 * i + 1, 3 * m)) ==
                  (i + 1 == m ? Rat(1) : Rat(3 * i + 4, 3 * m)));
            CHECK(F.eval(Rat(3 * i + 2, 3 * m)) ==
                  (i == 0 ? Rat(0) : Rat(3 * i - 1, 3 * m)));
        }
        CHECK(F.eval(Rat(1)) == 1);
        // segment slopes are +-5 in the interior, +-3 or +-4 where an
        // excursion clips at the endpoints of [0,1]
        const auto& nodes = F.nodes();
        for (size_t j = 1; j < nodes.size(); ++j) {
            Rat slope = (nodes[j].y - nodes[j - 1].y) / (nodes[j].x - nodes[j - 1].x);
            Rat a = rat_abs(slope);
            CHECK((a == 3 || a == 4 || a == 5));
        }
    }
    CHECK_THROWS_AS(build_Fm(0), argument_error);
}

TEST_CASE("exact image of a grid cell under F_m spills one third-cell") {
    for (long m : {1L, 2L, 3L, 4L}) {
        PLMap F = build_Fm(m);
        for (long i = 0; i < m; ++i) {
            Rat a(i, m), b(i + 1, m);
            auto img = image(F, IntervalUnion::single(a, b));
            Rat lo = rat_max(Rat(0), a - Rat(1, 3 * m));
            Rat hi = rat_min(Rat(1), b + Rat(1, 3 * m));
            CHECK(img == IntervalUnion::single(lo, hi));
        }
    }
}

TEST_CASE("uniform distance of F_m to the identity shrinks like 1/m") {
    PLMap id = PLMap::identity();
    Rat prev(2);
    for (long m = 1; m <= 6; ++m) {
        Rat d = uniform_distance(build_Fm(m), id);
        // interior excursions reach the next cell's c-node, a gap of 1/m;
        // for m = 1 both excursions clip at the boundary, leaving 2/3
        CHECK(d == (m == 1 ? Rat(2, 3) : Rat(1, m)));
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("transitive zero-entropy construction: minimal block boundaries") {
    auto tz = build_transitive_zero_entropy(3);
    REQUIRE(tz.boundaries.size() == 3);
    CHECK(tz.boundaries[0] == 1);
    CHECK(tz.boundaries[1] == 3);
    CHECK(tz.boundaries[2] == 4);

    // every dyadic interval of generation k reaches [0,1] exactly at s_k
    for (long k = 1; k <= 3; ++k) {
        long sk = tz.boundaries[k - 1];
        for (long i = 0; i < (1L << k); ++i) {
            auto J = IntervalUnion::single(Rat(i, 1L << k), Rat(i + 1, 1L << k));
            auto u = J;
            for (long t = 0; t < sk; ++t) u = image(tz.nds.map_at(t), u);
            CHECK(u == IntervalUnion::full());
        }
        // minimality of the block length (when it exceeds the floor of 1):
        // some generation-k interval is not yet full one step earlier
        long block_len = sk - (k >= 2 ? tz.boundaries[k - 2] : 0);
        CHECK(block_len >= 1);
        if (block_len > 1) {
            bool some_short = false;
            for (long i = 0; i < (1L << k) && !some_short; ++i) {
                auto u = IntervalUnion::single(Rat(i, 1L << k), Rat(i + 1, 1L << k));
                for (long t = 0; t < sk - 1; ++t) u = image(tz.nds.map_at(t), u);
                if (!(u == IntervalUnion::full())) some_short = true;
            }
            CHECK(some_short);
        }
    }

    // block structure: map at time t is F_k inside block k, F_{levels+1} after
    CHECK(tz.nds.map_at(0) == build_Fm(1));
    CHECK(tz.nds.map_at(1) == build_Fm(2));
    CHECK(tz.nds.map_at(2) == build_Fm(2));
    CHECK(tz.nds.map_at(3) == build_Fm(3));
    CHECK(tz.nds.map_at(4) == build_Fm(4));
    CHECK(tz.nds.map_at(100) == build_Fm(4));
    tz.nds.validate();
}

TEST_CASE("rotation sequence cycles its angle list") {
    auto nds = build_rotation_sequence({Rat(1, 4), Rat(1, 3)});
    CHECK(nds.space == Space::circle);
    CHECK(nds.map_at(0) == PLMap::rotation(Rat(1, 4)));
    CHECK(nds.map_at(1) == PLMap::rotation(Rat(1, 3)));
    CHECK(nds.map_at(2) == PLMap::rotation(Rat(1, 4)));
    // orbit of 0 accumulates the angles mod 1
    auto orb = orbit(nds, Rat(0), 3);
    CHECK(orb[1] == Rat(1, 4));
    CHECK(orb[2] == Rat(7, 12));
    CHECK(orb[3] == Rat(5, 6));
    CHECK_THROWS_AS(build_rotation_sequence({}), argument_error);
}
