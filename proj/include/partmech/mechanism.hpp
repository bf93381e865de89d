#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "partmech/distribution.hpp"

namespace partmech {

// Full outcome enumeration in eval_menu refuses to expand more than this many
// valuation profiles unless the caller raises the cap.
inline constexpr std::size_t kDefaultOutcomeCap = 1'000'000;

struct PricedBundle {
    std::vector<int> items;
    Rational price;
};

// Disjoint bundles covering all items, each with a posted price. "Don't sell
// item i" is modeled by an unaffordable singleton price.
struct PricedPartition {
    std::vector<PricedBundle> bundles;
};

// A deterministic choose-one menu (for comparison only; the buyer picks at
// most one option). The free option (no items, price 0) is implicit.
struct ChooseOneMenu {
    struct Option {
        std::vector<int> items;
        Rational price;
    };
    std::vector<Option> options;
};

// Throws Error(InvalidArgument) unless the index sets are a partition of
// {0..n-1}: non-empty, pairwise disjoint, covering.
void validate_partition(int n, const std::vector<std::vector<int>>& parts);

// Exact expected revenue of a priced partition: bundle purchase decisions are
// independent, so revenue is the sum over bundles of price * Pr[sum >= price].
Rational eval_partition(const ProductInstance& inst, const PricedPartition& pp,
                        std::size_t support_cap = kDefaultSupportCap);

struct OptimizedPartition {
    PricedPartition mechanism;
    std::vector<PriceQuote> quotes;  // aligned with mechanism.bundles
    Rational revenue;
};

// Prices every bundle of a fixed partition optimally. Bundle prices decouple,
// so this is the exact optimum over all price vectors for the partition.
OptimizedPartition optimize_prices(const ProductInstance& inst,
                                   const std::vector<std::vector<int>>& partition,
                                   std::size_t support_cap = kDefaultSupportCap);

// Exact expected revenue of a choose-one menu by full outcome enumeration.
// The buyer maximizes (set value - price) over affordable options; ties break
// toward the highest price, then the lowest option index.
Rational eval_menu(const ProductInstance& inst, const ChooseOneMenu& menu,
                   std::size_t outcome_cap = kDefaultOutcomeCap);

// Result of an exhaustive or approximate partition-mechanism search.
struct SolveReport {
    PricedPartition best;
    Rational revenue;
    std::uint64_t partitions_examined = 0;
    std::chrono::duration<double> elapsed{0};
    bool truncated = false;          // search stopped at its candidate budget
    std::uint64_t guard_skipped = 0; // candidates dropped by the support cap
};

}  // namespace partmech
