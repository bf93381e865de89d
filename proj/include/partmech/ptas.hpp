#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "partmech/mechanism.hpp"

namespace partmech {

// Multiplicative (1+eps)-net over the non-negative rationals: {0} together
// with every integer power of (1+eps). All membership and rounding decisions
// are exact.
class Net {
  public:
    explicit Net(const Rational& eps);

    const Rational& eps() const { return eps_; }
    const Rational& base() const { return base_; }

    // Exponent j with base^j <= x < base^(j+1); requires x > 0.
    long floor_exponent(const Rational& x) const;
    // Smallest j with base^j >= x; requires x > 0.
    long ceil_exponent(const Rational& x) const;
    // Largest net point <= x; 0 maps to 0.
    Rational round_down(const Rational& x) const;
    Rational power(long j) const;

  private:
    Rational eps_;
    Rational base_;
};

struct PtasConfig {
    Rational eps{1, 4};    // net granularity and pipeline epsilon, in (0,1)
    Rational delta{1, 4};  // target loss, in (0,1)
    int ell_max = 3;       // non-trivial bundle budget per candidate
    int grid_levels = 3;   // dyadic allocation-grid depth
    int low_threshold_exp = 2;  // low-value cutoff is eps^p * pi, p in {1,2}

    // 0 means "use the formula default".
    std::uint64_t merge_k = 0;     // few-bundles threshold; default ceil(8 eps^-4 delta^-3)
    Rational range_eta{0};         // price-range cutoff; default delta^4 eps^5 (1-eps)
    Rational class_zero_ratio{0};  // bucket classes below ratio*max drop to ZERO; default eps

    // Resource knobs. max_candidates caps the total number of allocation
    // slots the search scans; the budget is split evenly across enumeration
    // blocks so late price scales are never starved.
    std::uint64_t max_candidates = 400'000;
    std::size_t support_cap = kDefaultSupportCap;
    int threads = 1;

    Integer resolved_merge_k() const;
    Rational resolved_range_eta() const;
    Rational resolved_class_zero_ratio() const;
    void validate() const;
};

// Rounds support values down to the net, then the (merged) probabilities;
// lost probability mass moves to value 0. Output is stochastically dominated
// by the input.
DiscreteDist round_dist(const DiscreteDist& d, const Net& net);

// Collapses all support values below eps^p * pi to a single atom at their
// conditional expectation, then rounds the new value and probability down to
// the net (deficit mass to value 0).
DiscreteDist merge_low_values(const DiscreteDist& d, const Rational& pi, const PtasConfig& cfg);

struct PruneResult {
    DiscreteDist dist;
    Rational pstar;  // max probability of any support value in [eps^p pi, pi]
};

// Zeroes every value in the high window whose probability is below
// eps^4 * pstar. No mass in the window leaves the distribution unchanged.
PruneResult prune_high_values(const DiscreteDist& d, const Rational& pi, const PtasConfig& cfg);

struct SimplifiedItem {
    DiscreteDist dist;
    Rational pstar;
};

// round_dist, then merge_low_values, then prune_high_values for this pi.
SimplifiedItem simplify_item(const DiscreteDist& d, const Rational& pi, const PtasConfig& cfg);

// Three-number-plus-pattern item summary. Classes are net exponents within
// the window [pi/n^2, pi], or kZero when clamped out or dwarfed by the other
// two classes. Items with equal keys are interchangeable to the search.
struct BucketKey {
    static constexpr long kZero = std::numeric_limits<long>::min();
    long low_expectation_class = kZero;
    long pstar_pi_class = kZero;
    long srev_class = kZero;
    // One character per net point of the high window: proximity of that
    // point's probability to pstar (0 none, 1 present, 2 within eps^2, 3
    // within one net step).
    std::string high_pattern;

    auto operator<=>(const BucketKey&) const = default;
};

std::map<BucketKey, std::vector<int>> bucketize(const ProductInstance& simplified,
                                                const Rational& pi, const PtasConfig& cfg);

// Combines quotes whose prices share one multiplicative interval into a
// single bundle priced at (1 - delta/2) * sum(p_i * pi_i), with the Chebyshev
// sale-probability floor 1 - 4/(delta^2 k eps^4) (clamped at 0).
PriceQuote merge_bundles(const std::vector<PriceQuote>& quotes, const PtasConfig& cfg);

struct SingletonizeDecision {
    bool dissolve = false;
    Rational floor_revenue;  // (1 - delta) * sell_prob * price
};

// Recommends dissolving a bundle whose optimal quote sells with probability
// at most eps; selling its items separately recovers at least floor_revenue.
SingletonizeDecision singletonize_check(const ProductInstance& inst, const std::vector<int>& bundle,
                                        const PriceQuote& quote, const PtasConfig& cfg);

struct DropLowResult {
    std::vector<PriceQuote> kept;  // quotes with price >= eta * max price
    Rational discarded_bound;      // merge_k * eta * pi_star / (1 - eps)
};

DropLowResult drop_low_bundles(const std::vector<PriceQuote>& quotes, const PtasConfig& cfg);

// The approximation pipeline: enumerate candidate price scales pi on the net,
// simplify the instance per pi, bucket interchangeable items, and scan
// per-bucket allocations of items to at most ell_max bundles (plus "sell
// separately") on a nested dyadic grid. Every candidate partition is re-priced
// and re-evaluated exactly on the original instance, so the reported revenue
// is a true lower bound on the optimal partition revenue. The all-singletons
// and grand-bundle partitions are always candidates.
SolveReport solve_ptas(const ProductInstance& inst, const PtasConfig& cfg = {});

}  // namespace partmech
