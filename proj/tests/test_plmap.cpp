#include "ndstk/plmap.hpp"

#include <doctest.h>

#include <random>

#include "test_util.hpp"

using namespace ndstk;

TEST_CASE("tent map evaluation") {
    PLMap T = PLMap::tent();
    CHECK(T.eval(Rat(2, 5)) == Rat(4, 5));
    CHECK(T.eval(Rat(9, 10)) == Rat(1, 5));
    CHECK(T.eval(Rat(1, 2)) == 1);
    CHECK(T.eval(Rat(0)) == 0);
    CHECK(T.eval(Rat(1)) == 0);
    CHECK(T.lap_count() == 2);
    CHECK_FALSE(T.orientation_preserving());
    CHECK_THROWS_AS(T.eval(Rat(3, 2)), domain_error);
}

TEST_CASE("circle rotation wraps and has degree one") {
    PLMap R = PLMap::rotation(Rat(1, 3));
    CHECK(R.eval(Rat(0)) == Rat(1, 3));
    CHECK(R.eval(Rat(5, 6)) == Rat(1, 6));  // wraps past 1
    CHECK(R.degree() == 1);
    CHECK(R.orientation_preserving());
    CHECK(R.eval(Rat(4, 3)) == Rat(2, 3));  // input reduced mod 1
    CHECK_THROWS_AS(PLMap::rotation(Rat(3, 2)), argument_error);
    // doubling map has degree 2
    PLMap D(Space::circle, {{Rat(0), Rat(0)}, {Rat(1), Rat(2)}});
    CHECK(D.degree() == 2);
    CHECK(D.eval(Rat(3, 4)) == Rat(1, 2));
}

TEST_CASE("PLMap validation rejects malformed node lists") {
    CHECK_THROWS_AS(PLMap(Space::interval, {{Rat(0), Rat(0)}}), argument_error);
    CHECK_THROWS_AS(PLMap(Space::interval,
                          {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}}),
                    argument_error);  // does not reach x = 1
    CHECK_THROWS_AS(PLMap(Space::interval,
                          {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}}),
                    argument_error);  // repeated x
    CHECK_THROWS_AS(PLMap(Space::interval, {{Rat(0), Rat(0)}, {Rat(1), Rat(3, 2)}}),
                    argument_error);  // value outside [0,1]
    CHECK_THROWS_AS(PLMap(Space::circle, {{Rat(0), Rat(0)}, {Rat(1), Rat(1, 2)}}),
                    argument_error);  // non-integer degree
}

TEST_CASE("lap count of iterated tent doubles") {
    PLMap T = PLMap::tent();
    PLMap it = T;
    int expected = 2;
    for (int n = 1; n <= 10; ++n) {
        CHECK(it.lap_count() == expected);
        if (n < 10) {
            it = compose(T, it);
            expected *= 2;
        }
    }
    CHECK(PLMap::identity().lap_count() == 1);
    CHECK(PLMap::constant(Rat(1, 3)).lap_count() == 1);
}

TEST_CASE("compose matches pointwise evaluation on random maps") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        PLMap f = testutil::rand_plmap(rng);
        PLMap g = testutil::rand_plmap(rng);
        PLMap h = compose(f, g);
        for (int k = 0; k <= 16; ++k) {
            Rat x(k, 16);
            CHECK(h.eval(x) == f.eval(g.eval(x)));
        }
        Rat x = testutil::rand_rat(rng, 997);
        CHECK(h.eval(x) == f.eval(g.eval(x)));
    }
}

TEST_CASE("image and preimage of the tent map") {
    PLMap T = PLMap::tent();
    auto img = image(T, IntervalUnion::single(Rat(1, 4), Rat(3, 8)));
    REQUIRE(img.size() == 1);
    CHECK(img.parts()[0].lo == Rat(1, 2));
    CHECK(img.parts()[0].hi == Rat(3, 4));

    auto pre = preimage(T, IntervalUnion::single(Rat(1, 2), Rat(1)));
    REQUIRE(pre.size() == 1);
    CHECK(pre.parts()[0].lo == Rat(1, 4));
    CHECK(pre.parts()[0].hi == Rat(3, 4));

    // interval straddling the crease maps onto a single interval
    auto img2 = image(T, IntervalUnion::single(Rat(1, 4), Rat(3, 4)));
    REQUIRE(img2.size() == 1);
    CHECK(img2.parts()[0].lo == Rat(1, 2));
    CHECK(img2.parts()[0].hi == 1);

    // preimage of a point under the tent has two branches
    auto pre2 = preimage(T, IntervalUnion::point(Rat(1, 2)));
    REQUIRE(pre2.size() == 2);
    CHECK(pre2.parts()[0] == IntervalUnion::Interval{Rat(1, 4), Rat(1, 4)});
    CHECK(pre2.parts()[1] == IntervalUnion::Interval{Rat(3, 4), Rat(3, 4)});
}

TEST_CASE("image/preimage adjunction on random maps") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        PLMap f = testutil::rand_plmap(rng);
        Rat a = testutil::rand_rat(rng, 40), b = testutil::rand_rat(rng, 40);
        auto u = IntervalUnion::single(rat_min(a, b), rat_max(a, b));
        CHECK(image(f, preimage(f, u)).contains(u.intersect(image(f, IntervalUnion::full()))));
        CHECK(preimage(f, image(f, u)).contains(u));
    }
}

TEST_CASE("uniform distance on the interval") {
    PLMap T = PLMap::tent();
    PLMap id = PLMap::identity();
    CHECK(uniform_distance(T, id) == 1);  // gap peaks at x = 1
    CHECK(uniform_distance(T, T) == 0);
    CHECK(uniform_distance(PLMap::constant(Rat(0)), PLMap::constant(Rat(1))) == 1);
    CHECK_THROWS_AS(uniform_distance(T, PLMap::rotation(Rat(0))), argument_error);
}

TEST_CASE("uniform distance on the circle") {
    PLMap r0 = PLMap::rotation(Rat(0));
    PLMap r13 = PLMap::rotation(Rat(1, 3));
    PLMap r23 = PLMap::rotation(Rat(2, 3));
    CHECK(uniform_distance(r0, r13) == Rat(1, 3));
    CHECK(uniform_distance(r13, r23) == Rat(1, 3));
    CHECK(uniform_distance(r0, PLMap::rotation(Rat(1, 2))) == Rat(1, 2));
    // identity vs doubling map crosses a half-integer difference
    PLMap D(Space::circle, {{Rat(0), Rat(0)}, {Rat(1), Rat(2)}});
    CHECK(uniform_distance(r0, D) == Rat(1, 2));
}
