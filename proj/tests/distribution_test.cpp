#include "partmech/distribution.hpp"

#include <doctest.h>

#include <random>

#include "partmech/errors.hpp"
#include "partmech/generators.hpp"
#include "test_util.hpp"

using namespace partmech;
using namespace partmech::testutil;

namespace {

Rational total_mass(const DiscreteDist& d) {
    Rational t(0);
    for (const Rational& p : d.probs()) t += p;
    return t;
}

}  // namespace

TEST_CASE("discrete dist validation") {
    CHECK_THROWS_AS(DiscreteDist({}, {}), Error);
    CHECK_THROWS_AS(DiscreteDist({q(1)}, {q(1, 2)}), Error);                 // mass != 1
    CHECK_THROWS_AS(DiscreteDist({q(2), q(1)}, {q(1, 2), q(1, 2)}), Error);  // not ascending
    CHECK_THROWS_AS(DiscreteDist({q(-1), q(1)}, {q(1, 2), q(1, 2)}), Error); // negative value
    CHECK_THROWS_AS(DiscreteDist({q(1), q(1)}, {q(1, 2), q(1, 2)}), Error);  // duplicate value

    DiscreteDist d = dist({{q(2), q(1, 3)}, {q(0), q(2, 3)}});
    CHECK(d.support() == std::vector<Rational>{q(0), q(2)});
}

TEST_CASE("convolve identity and hand values") {
    DiscreteDist coin = dist({{q(1), q(1, 2)}, {q(2), q(1, 2)}});

    CHECK(convolve(coin, DiscreteDist::point_mass(q(0))) == coin);

    DiscreteDist two_coins = convolve(coin, coin);
    CHECK(two_coins == dist({{q(2), q(1, 4)}, {q(3), q(1, 2)}, {q(4), q(1, 4)}}));

    DiscreteDist rare = dist({{q(1), q(9, 10)}, {q(10), q(1, 10)}});
    DiscreteDist two_rare = convolve(rare, rare);
    CHECK(two_rare == dist({{q(2), q(81, 100)}, {q(11), q(18, 100)}, {q(20), q(1, 100)}}));
}

TEST_CASE("convolve monte carlo cross-check") {
    // Frozen expectation {2: 81/100, 11: 18/100, 20: 1/100} versus sampling.
    std::mt19937_64 rng(20240517);
    int c2 = 0, c11 = 0, c20 = 0;
    const int trials = 200000;
    auto draw = [&] { return (rng() % 10 == 0) ? 10 : 1; };
    for (int t = 0; t < trials; ++t) {
        switch (draw() + draw()) {
            case 2: ++c2; break;
            case 11: ++c11; break;
            case 20: ++c20; break;
            default: FAIL("impossible sum");
        }
    }
    CHECK(std::abs(c2 / double(trials) - 0.81) < 0.01);
    CHECK(std::abs(c11 / double(trials) - 0.18) < 0.01);
    CHECK(std::abs(c20 / double(trials) - 0.01) < 0.005);
}

TEST_CASE("convolve is commutative and associative on random inputs") {
    std::mt19937_64 seeds(7);
    for (int round = 0; round < 20; ++round) {
        ProductInstance inst = gen_random(3, 4, 9, seeds());
        const DiscreteDist &a = inst.items[0], &b = inst.items[1], &c = inst.items[2];
        CHECK(convolve(a, b) == convolve(b, a));
        CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
        CHECK(total_mass(convolve(a, b)) == 1);
    }
}

TEST_CASE("convolution support cap") {
    std::vector<std::pair<Rational, Rational>> atoms;
    for (int i = 0; i < 40; ++i) atoms.emplace_back(Rational(i), Rational(1, 40));
    DiscreteDist wide = DiscreteDist::from_pairs(std::move(atoms));
    CHECK_THROWS_AS(convolve(wide, wide, 50), Error);
    try {
        convolve(wide, wide, 50);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SupportExplosion);
    }
    CHECK(convolve(wide, wide, 79).size() == 79);
}

TEST_CASE("bundle_sum_dist") {
    ProductInstance inst = gen_two_bundles();
    CHECK(bundle_sum_dist(inst, {2}) == inst.items[2]);
    CHECK(bundle_sum_dist(inst, {0, 1}) ==
          dist({{q(2), q(1, 4)}, {q(3), q(1, 2)}, {q(4), q(1, 4)}}));
    CHECK(bundle_sum_dist(inst, {1, 0}) == bundle_sum_dist(inst, {0, 1}));

    ProductInstance hn = gen_hart_nisan();
    CHECK(bundle_sum_dist(hn, {0, 1}) == dist({{q(0), q(1, 9)},
                                               {q(1), q(2, 9)},
                                               {q(2), q(3, 9)},
                                               {q(3), q(2, 9)},
                                               {q(4), q(1, 9)}}));

    CHECK_THROWS_AS(bundle_sum_dist(inst, {}), Error);
    CHECK_THROWS_AS(bundle_sum_dist(inst, {4}), Error);
    CHECK_THROWS_AS(bundle_sum_dist(inst, {1, 1}), Error);
}

TEST_CASE("exceedance") {
    DiscreteDist coin = dist({{q(1), q(1, 2)}, {q(2), q(1, 2)}});
    CHECK(exceedance(coin, q(0)) == 1);
    CHECK(exceedance(coin, q(2)) == q(1, 2));
    CHECK(exceedance(equal_revenue(4), q(3)) == q(1, 3));

    // non-increasing in t, and exactly 1 at 0
    std::mt19937_64 seeds(11);
    for (int round = 0; round < 10; ++round) {
        ProductInstance ri = gen_random(1, 4, 12, seeds());
        const DiscreteDist& d = ri.items[0];
        CHECK(exceedance(d, q(0)) == 1);
        Rational prev(2);
        for (Rational t(0); t <= d.max_value() + 1; t += q(1, 3)) {
            Rational e = exceedance(d, t);
            CHECK(e <= prev);
            prev = e;
        }
    }
}

TEST_CASE("optimal_price picks lowest optimal support point") {
    PriceQuote point = optimal_price(DiscreteDist::point_mass(q(7)));
    CHECK(point.price == 7);
    CHECK(point.sell_prob == 1);
    CHECK(point.revenue == 7);

    // all four support prices of the equal-revenue curve earn exactly 1
    PriceQuote er = optimal_price(equal_revenue(4));
    CHECK(er.revenue == 1);
    CHECK(er.price == 1);

    PriceQuote rare = optimal_price(
        dist({{q(2), q(81, 100)}, {q(11), q(18, 100)}, {q(20), q(1, 100)}}));
    CHECK(rare.price == 11);
    CHECK(rare.sell_prob == q(19, 100));
    CHECK(rare.revenue == q(209, 100));
}

TEST_CASE("optimal_price dominates every support price") {
    std::mt19937_64 seeds(13);
    for (int round = 0; round < 30; ++round) {
        ProductInstance ri = gen_random(1, 5, 20, seeds());
        const DiscreteDist& d = ri.items[0];
        PriceQuote best = optimal_price(d);
        CHECK(best.revenue == best.price * best.sell_prob);
        for (const Rational& p : d.support()) {
            CHECK(best.revenue >= p * exceedance(d, p));
        }
    }
}

TEST_CASE("optimal_price is monotone under stochastic dominance") {
    // shifting one support value weakly up only helps
    std::mt19937_64 seeds(17);
    for (int round = 0; round < 30; ++round) {
        ProductInstance ri = gen_random(1, 4, 10, seeds());
        const DiscreteDist& d = ri.items[0];
        std::vector<Rational> support = d.support();
        support.back() += Rational(1 + round % 3);
        DiscreteDist shifted(support, d.probs());
        CHECK(optimal_price(shifted).revenue >= optimal_price(d).revenue);
    }
}

TEST_CASE("srev") {
    CHECK(srev(gen_two_bundles()).revenue == 4);

    SrevResult hn = srev(gen_hart_nisan());
    CHECK(hn.revenue == q(4, 3));
    CHECK(hn.quotes[0].price == 1);  // ties at prices 1 and 2 break low
    CHECK(hn.quotes[1].price == 1);

    ProductInstance points;
    points.items = {DiscreteDist::point_mass(q(3)), DiscreteDist::point_mass(q(5))};
    CHECK(srev(points).revenue == 8);
}

TEST_CASE("brev") {
    ProductInstance points;
    points.items = {DiscreteDist::point_mass(q(3)), DiscreteDist::point_mass(q(5))};
    PriceQuote pb = brev(points);
    CHECK(pb.price == 8);
    CHECK(pb.sell_prob == 1);

    PriceQuote hn = brev(gen_hart_nisan());
    CHECK(hn.price == 2);
    CHECK(hn.revenue == q(4, 3));

    // brute-force cross-check on the four-item instance
    ProductInstance tb = gen_two_bundles();
    DiscreteDist grand = bundle_sum_dist(tb, {0, 1, 2, 3});
    Rational best(0);
    for (const Rational& p : grand.support()) {
        best = std::max(best, Rational(p * exceedance(grand, p)));
    }
    CHECK(brev(tb).revenue == best);
}

TEST_CASE("conditional_expectation_below") {
    CHECK(conditional_expectation_below(dist({{q(1), q(1, 2)}, {q(2), q(1, 2)}}), q(2)) == 1);
    CHECK(conditional_expectation_below(
              dist({{q(0), q(1, 3)}, {q(1), q(1, 3)}, {q(2), q(1, 3)}}), q(2)) == q(1, 2));
    CHECK(conditional_expectation_below(equal_revenue(4), q(3)) == q(5, 4));

    CHECK_THROWS_AS(conditional_expectation_below(equal_revenue(4), q(1)), Error);
    try {
        conditional_expectation_below(equal_revenue(4), q(0));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoMassBelow);
    }
}
