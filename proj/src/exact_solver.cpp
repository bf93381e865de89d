#include "partmech/exact_solver.hpp"

#include <atomic>
#include <bit>
#include <thread>

#include "partmech/errors.hpp"
#include "partmech/partition_enum.hpp"

namespace partmech {

namespace {

struct Candidate {
    Rational revenue{-1};
    std::uint64_t rank = 0;
    std::vector<int> rgs;

    bool beats(const Candidate& other) const {
        if (revenue != other.revenue) return revenue > other.revenue;
        return rank < other.rank;
    }
};

}  // namespace

SolveReport solve_exact(const ProductInstance& inst, const ExactOptions& opts) {
    const int n = inst.size();
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "instance has no items");
    if (n > opts.max_n) {
        throw Error(ErrorKind::OracleSizeExceeded,
                    std::to_string(n) + " items exceeds oracle bound " +
                        std::to_string(opts.max_n));
    }
    const auto start = std::chrono::steady_clock::now();

    // Every non-empty subset occurs as a block of some partition, so quotes
    // for all masks are precomputed with one convolution each (the sum
    // distribution of a mask extends its parent by one item).
    const std::uint32_t nmasks = 1u << n;
    std::vector<PriceQuote> quotes(nmasks);
    {
        std::vector<DiscreteDist> sums;
        sums.reserve(nmasks);
        sums.push_back(DiscreteDist::point_mass(Rational(0)));  // mask 0, unused
        for (std::uint32_t mask = 1; mask < nmasks; ++mask) {
            const int low = std::countr_zero(mask);
            const std::uint32_t parent = mask & (mask - 1);
            if (parent == 0) {
                sums.push_back(inst.items[static_cast<std::size_t>(low)]);
            } else {
                sums.push_back(convolve(sums[parent], inst.items[static_cast<std::size_t>(low)],
                                        opts.support_cap));
            }
            quotes[mask] = optimal_price(sums.back());
        }
    }

    const std::uint64_t total = PartitionEnumerator::count(n);
    const int threads = std::max(1, opts.threads);
    const std::uint64_t chunk = std::max<std::uint64_t>(1024, total / (16u * static_cast<unsigned>(threads)) + 1);

    std::atomic<std::uint64_t> next_start{0};
    std::vector<Candidate> local_best(static_cast<std::size_t>(threads));

    auto worker = [&](int tid) {
        Candidate& best = local_best[static_cast<std::size_t>(tid)];
        std::vector<std::uint32_t> masks(static_cast<std::size_t>(n));
        for (;;) {
            const std::uint64_t begin = next_start.fetch_add(chunk);
            if (begin >= total) break;
            const std::uint64_t end = std::min(total, begin + chunk);
            PartitionEnumerator en(n, begin);
            for (std::uint64_t r = begin; r < end; ++r, en.next()) {
                const std::vector<int>& rgs = en.rgs();
                int nblocks = 0;
                for (int i = 0; i < n; ++i) {
                    const int d = rgs[static_cast<std::size_t>(i)];
                    if (d == nblocks) masks[static_cast<std::size_t>(nblocks++)] = 0;
                    masks[static_cast<std::size_t>(d)] |= 1u << i;
                }
                Rational revenue(0);
                for (int b = 0; b < nblocks; ++b) {
                    revenue += quotes[masks[static_cast<std::size_t>(b)]].revenue;
                }
                // Chunks are handed out in ascending order, so within one
                // thread a strict improvement test keeps the earliest rank.
                if (revenue > best.revenue) {
                    best.revenue = std::move(revenue);
                    best.rank = r;
                    best.rgs = rgs;
                }
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    // Deterministic reduction: highest revenue, then earliest RGS rank.
    const Candidate* winner = nullptr;
    for (const Candidate& c : local_best) {
        if (c.rgs.empty()) continue;
        if (winner == nullptr || c.beats(*winner)) winner = &c;
    }

    SolveReport report;
    report.partitions_examined = total;
    report.revenue = winner->revenue;
    for (const auto& block : PartitionEnumerator::blocks_from_rgs(winner->rgs)) {
        std::uint32_t mask = 0;
        for (int i : block) mask |= 1u << i;
        report.best.bundles.push_back(PricedBundle{block, quotes[mask].price});
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

}  // namespace partmech
