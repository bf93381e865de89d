#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "partmech/rational.hpp"

namespace partmech {

// Convolutions refuse to materialize a support larger than this unless the
// caller raises the cap. Exactness over silent approximation: callers that
// want approximation should simplify distributions first.
inline constexpr std::size_t kDefaultSupportCap = 1'000'000;

// One item's valuation distribution: finite support of non-negative values
// with strictly positive probabilities summing to exactly 1.
class DiscreteDist {
  public:
    // Validates: non-empty, strictly ascending non-negative support, probs in
    // (0,1] summing to exactly 1.
    DiscreteDist(std::vector<Rational> support, std::vector<Rational> probs);

    // Sorts, merges equal values, drops zero-probability atoms, then validates.
    static DiscreteDist from_pairs(std::vector<std::pair<Rational, Rational>> atoms);

    static DiscreteDist point_mass(const Rational& value);

    const std::vector<Rational>& support() const { return support_; }
    const std::vector<Rational>& probs() const { return probs_; }
    std::size_t size() const { return support_.size(); }

    const Rational& min_value() const { return support_.front(); }
    const Rational& max_value() const { return support_.back(); }

    Rational expectation() const;

    bool operator==(const DiscreteDist& other) const;

  private:
    std::vector<Rational> support_;
    std::vector<Rational> probs_;
};

// A posted price together with its exact sale probability and revenue.
// Invariant: revenue == price * sell_prob.
struct PriceQuote {
    Rational price;
    Rational sell_prob;
    Rational revenue;

    static PriceQuote make(Rational price, Rational sell_prob) {
        Rational rev = price * sell_prob;
        return PriceQuote{std::move(price), std::move(sell_prob), std::move(rev)};
    }
};

// An ordered collection of independent items.
struct ProductInstance {
    std::vector<DiscreteDist> items;

    int size() const { return static_cast<int>(items.size()); }
};

// Distribution of the sum of two independent draws. Support is deduplicated
// by exact value; throws Error(SupportExplosion) if the result would exceed
// the cap.
DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b,
                      std::size_t support_cap = kDefaultSupportCap);

// Fold of convolve over the bundle's items. Bundle must be non-empty with
// valid, distinct indices.
DiscreteDist bundle_sum_dist(const ProductInstance& inst, const std::vector<int>& bundle,
                             std::size_t support_cap = kDefaultSupportCap);

// Pr[X >= t]. The buyer buys at indifference, so sale events are weak
// inequalities throughout.
Rational exceedance(const DiscreteDist& d, const Rational& t);

// Maximizes p * Pr[X >= p]. An optimal price always exists at a support
// point; ties break toward the lowest price.
PriceQuote optimal_price(const DiscreteDist& d);

struct SrevResult {
    Rational revenue;
    std::vector<PriceQuote> quotes;  // aligned with item indices
};

// Revenue from pricing each item separately at its optimal price.
SrevResult srev(const ProductInstance& inst);

// Revenue from auctioning the grand bundle at its optimal price.
PriceQuote brev(const ProductInstance& inst, std::size_t support_cap = kDefaultSupportCap);

// E[X | X < t]. Throws Error(NoMassBelow) when Pr[X < t] == 0.
Rational conditional_expectation_below(const DiscreteDist& d, const Rational& t);

}  // namespace partmech
