#include "partmech/exact_solver.hpp"

#include <doctest.h>

#include <random>

#include "partmech/errors.hpp"
#include "partmech/generators.hpp"
#include "test_util.hpp"

using namespace partmech;
using namespace partmech::testutil;

namespace {

std::vector<std::vector<int>> bundle_sets(const PricedPartition& pp) {
    std::vector<std::vector<int>> out;
    for (const auto& b : pp.bundles) out.push_back(b.items);
    return out;
}

}  // namespace

TEST_CASE("oracle finds the unique optimum of the two-bundle instance") {
    SolveReport r = solve_exact(gen_two_bundles());
    CHECK(r.revenue == q(217, 50));
    CHECK(r.partitions_examined == 15);  // Bell(4)
    REQUIRE(r.best.bundles.size() == 2);
    CHECK(bundle_sets(r.best) == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
    CHECK(r.best.bundles[0].price == 3);
    CHECK(r.best.bundles[1].price == 11);
}

TEST_CASE("oracle on hart-nisan") {
    SolveReport r = solve_exact(gen_hart_nisan());
    CHECK(r.revenue == q(4, 3));
    CHECK(r.partitions_examined == 2);
}

TEST_CASE("point masses tie everywhere; first RGS partition wins") {
    ProductInstance points;
    points.items = {DiscreteDist::point_mass(q(2)), DiscreteDist::point_mass(q(3)),
                    DiscreteDist::point_mass(q(4))};
    SolveReport r = solve_exact(points);
    CHECK(r.revenue == 9);
    // rank 0 is the grand bundle
    CHECK(bundle_sets(r.best) == std::vector<std::vector<int>>{{0, 1, 2}});
}

TEST_CASE("oracle size guard") {
    ExactOptions opts;
    opts.max_n = 3;
    ProductInstance inst = gen_random(4, 2, 5, 1);
    CHECK_THROWS_AS(solve_exact(inst, opts), Error);
    try {
        solve_exact(inst, opts);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OracleSizeExceeded);
    }
}

TEST_CASE("oracle dominates srev and brev") {
    std::mt19937_64 seeds(41);
    for (int round = 0; round < 12; ++round) {
        ProductInstance inst = gen_random(2 + round % 5, 3, 11, seeds());
        SolveReport r = solve_exact(inst);
        CHECK(r.revenue >= srev(inst).revenue);
        CHECK(r.revenue >= brev(inst).revenue);
        CHECK(r.revenue == eval_partition(inst, r.best));
    }
}

TEST_CASE("permuting items permutes the optimum and preserves revenue") {
    std::mt19937_64 seeds(43);
    for (int round = 0; round < 6; ++round) {
        ProductInstance inst = gen_random(5, 3, 9, seeds());
        SolveReport base = solve_exact(inst);

        std::vector<int> perm = {4, 2, 0, 3, 1};  // position i holds old item perm[i]
        ProductInstance shuffled;
        for (int i : perm) shuffled.items.push_back(inst.items[static_cast<std::size_t>(i)]);
        SolveReport moved = solve_exact(shuffled);
        CHECK(moved.revenue == base.revenue);

        // map the shuffled optimum back through the permutation and re-evaluate
        PricedPartition mapped;
        for (const auto& b : moved.best.bundles) {
            std::vector<int> items;
            for (int i : b.items) items.push_back(perm[static_cast<std::size_t>(i)]);
            std::sort(items.begin(), items.end());
            mapped.bundles.push_back({items, b.price});
        }
        CHECK(eval_partition(inst, mapped) == base.revenue);
    }
}

TEST_CASE("duplicating the instance at least doubles the optimum") {
    std::mt19937_64 seeds(47);
    for (int round = 0; round < 6; ++round) {
        ProductInstance inst = gen_random(3, 3, 8, seeds());
        ProductInstance doubled;
        doubled.items = inst.items;
        for (const auto& d : inst.items) doubled.items.push_back(d);
        CHECK(solve_exact(doubled).revenue >= 2 * solve_exact(inst).revenue);
    }
}

TEST_CASE("thread count does not change the result") {
    std::mt19937_64 seeds(53);
    for (int round = 0; round < 4; ++round) {
        ProductInstance inst = gen_random(6, 3, 10, seeds());
        ExactOptions one, four;
        one.threads = 1;
        four.threads = 4;
        SolveReport a = solve_exact(inst, one);
        SolveReport b = solve_exact(inst, four);
        CHECK(a.revenue == b.revenue);
        CHECK(bundle_sets(a.best) == bundle_sets(b.best));
        CHECK(a.partitions_examined == b.partitions_examined);
    }
}

TEST_CASE("raising one support value never lowers the exact optimum") {
    std::mt19937_64 seeds(59);
    for (int round = 0; round < 8; ++round) {
        ProductInstance inst = gen_random(2 + round % 4, 3, 9, seeds());
        Rational before = solve_exact(inst).revenue;

        ProductInstance raised = inst;
        // raise the top value of one item; dominance is immediate
        auto& item = raised.items[static_cast<std::size_t>(round) % raised.items.size()];
        std::vector<Rational> support = item.support();
        support.back() += q(3, 2);
        item = DiscreteDist(support, item.probs());
        CHECK(solve_exact(raised).revenue >= before);
    }
}
