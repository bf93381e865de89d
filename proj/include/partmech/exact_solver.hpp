#pragma once

#include "partmech/mechanism.hpp"

namespace partmech {

struct ExactOptions {
    int max_n = 12;  // Bell(12) ~ 4.2M partitions; refuse anything larger
    int threads = 1;
    std::size_t support_cap = kDefaultSupportCap;
};

// Brute-force oracle: enumerates every set partition of the items, prices
// each bundle optimally, and returns a revenue-maximizing partition. Ties
// between partitions break toward the earliest restricted-growth-string rank,
// so the result is deterministic and independent of thread count.
SolveReport solve_exact(const ProductInstance& inst, const ExactOptions& opts = {});

}  // namespace partmech
