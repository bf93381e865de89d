#include "partmech/partition_enum.hpp"

#include <doctest.h>

#include <set>

#include "partmech/errors.hpp"

using namespace partmech;

TEST_CASE("bell numbers") {
    CHECK(PartitionEnumerator::count(1) == 1);
    CHECK(PartitionEnumerator::count(2) == 2);
    CHECK(PartitionEnumerator::count(3) == 5);
    CHECK(PartitionEnumerator::count(4) == 15);
    CHECK(PartitionEnumerator::count(10) == 115975);
    CHECK(PartitionEnumerator::count(12) == 4213597);
    CHECK_THROWS_AS(PartitionEnumerator::count(26), Error);
    CHECK_THROWS_AS(PartitionEnumerator::count(0), Error);
}

TEST_CASE("enumeration yields every partition exactly once, in RGS order") {
    for (int n : {1, 3, 4, 5}) {
        PartitionEnumerator en(n);
        std::set<std::vector<int>> seen;
        std::vector<int> prev;
        std::uint64_t count = 0;
        do {
            CHECK(en.rank() == count);
            const std::vector<int>& rgs = en.rgs();
            CHECK(rgs[0] == 0);
            // valid RGS: each digit at most one above the prefix max
            int maxd = 0;
            for (std::size_t i = 1; i < rgs.size(); ++i) {
                CHECK(rgs[i] <= maxd + 1);
                maxd = std::max(maxd, rgs[i]);
            }
            if (!prev.empty()) CHECK(prev < rgs);  // strictly ascending lex order
            prev = rgs;
            seen.insert(rgs);
            ++count;
        } while (en.next());
        CHECK(count == PartitionEnumerator::count(n));
        CHECK(seen.size() == count);
    }
}

TEST_CASE("unranking agrees with sequential enumeration") {
    const int n = 6;
    PartitionEnumerator seq(n);
    for (std::uint64_t r = 0; r < PartitionEnumerator::count(n); ++r) {
        PartitionEnumerator jump(n, r);
        CHECK(jump.rgs() == seq.rgs());
        seq.next();
    }
    CHECK_THROWS_AS(PartitionEnumerator(3, 5), Error);
}

TEST_CASE("blocks materialization") {
    PartitionEnumerator en(4);  // rank 0: everything in one block
    CHECK(en.blocks() == std::vector<std::vector<int>>{{0, 1, 2, 3}});
    CHECK(PartitionEnumerator::blocks_from_rgs({0, 1, 0, 2}) ==
          std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
}
