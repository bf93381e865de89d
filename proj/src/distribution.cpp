#include "partmech/distribution.hpp"

#include <algorithm>
#include <map>

#include "partmech/errors.hpp"

namespace partmech {

DiscreteDist::DiscreteDist(std::vector<Rational> support, std::vector<Rational> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty()) {
        throw Error(ErrorKind::InvalidArgument, "distribution support is empty");
    }
    if (support_.size() != probs_.size()) {
        throw Error(ErrorKind::InvalidArgument, "support/probability length mismatch");
    }
    Rational total(0);
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] < 0) {
            throw Error(ErrorKind::InvalidArgument, "negative valuation in support");
        }
        if (i > 0 && support_[i] <= support_[i - 1]) {
            throw Error(ErrorKind::InvalidArgument, "support not strictly ascending");
        }
        if (probs_[i] <= 0 || probs_[i] > 1) {
            throw Error(ErrorKind::InvalidArgument, "probability outside (0,1]");
        }
        total += probs_[i];
    }
    if (total != 1) {
        throw Error(ErrorKind::InvalidArgument,
                    "probabilities sum to " + format_rational(total) + ", not 1");
    }
}

DiscreteDist DiscreteDist::from_pairs(std::vector<std::pair<Rational, Rational>> atoms) {
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Rational> support;
    std::vector<Rational> probs;
    for (auto& [value, prob] : atoms) {
        if (prob == 0) continue;
        if (!support.empty() && support.back() == value) {
            probs.back() += prob;
        } else {
            support.push_back(std::move(value));
            probs.push_back(std::move(prob));
        }
    }
    return DiscreteDist(std::move(support), std::move(probs));
}

DiscreteDist DiscreteDist::point_mass(const Rational& value) {
    return DiscreteDist({value}, {Rational(1)});
}

Rational DiscreteDist::expectation() const {
    Rational e(0);
    for (std::size_t i = 0; i < support_.size(); ++i) e += support_[i] * probs_[i];
    return e;
}

bool DiscreteDist::operator==(const DiscreteDist& other) const {
    return support_ == other.support_ && probs_ == other.probs_;
}

DiscreteDist convolve(const DiscreteDist& a, const DiscreteDist& b, std::size_t support_cap) {
    const std::size_t cross = a.size() * b.size();
    // Staged sort-and-merge is faster, but only safe when the pre-dedup cross
    // product itself is affordable; otherwise accumulate through a map whose
    // size is bounded by the true output support.
    if (cross <= std::max<std::size_t>(support_cap, 1u << 22)) {
        std::vector<std::pair<Rational, Rational>> atoms;
        atoms.reserve(cross);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < b.size(); ++j) {
                atoms.emplace_back(a.support()[i] + b.support()[j], a.probs()[i] * b.probs()[j]);
            }
        }
        std::sort(atoms.begin(), atoms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        std::vector<Rational> support;
        std::vector<Rational> probs;
        for (auto& [value, prob] : atoms) {
            if (!support.empty() && support.back() == value) {
                probs.back() += prob;
            } else {
                support.push_back(std::move(value));
                probs.push_back(std::move(prob));
            }
        }
        if (support.size() > support_cap) {
            throw Error(ErrorKind::SupportExplosion,
                        "convolution support " + std::to_string(support.size()) +
                            " exceeds cap " + std::to_string(support_cap));
        }
        return DiscreteDist(std::move(support), std::move(probs));
    }
    std::map<Rational, Rational> acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            Rational value = a.support()[i] + b.support()[j];
            auto [it, inserted] = acc.try_emplace(std::move(value), Rational(0));
            it->second += a.probs()[i] * b.probs()[j];
            if (acc.size() > support_cap) {
                throw Error(ErrorKind::SupportExplosion,
                            "convolution support exceeds cap " + std::to_string(support_cap));
            }
        }
    }
    std::vector<Rational> support;
    std::vector<Rational> probs;
    support.reserve(acc.size());
    probs.reserve(acc.size());
    for (auto& [value, prob] : acc) {
        support.push_back(value);
        probs.push_back(prob);
    }
    return DiscreteDist(std::move(support), std::move(probs));
}

DiscreteDist bundle_sum_dist(const ProductInstance& inst, const std::vector<int>& bundle,
                             std::size_t support_cap) {
    if (bundle.empty()) {
        throw Error(ErrorKind::InvalidArgument, "empty bundle");
    }
    std::vector<bool> seen(inst.items.size(), false);
    for (int i : bundle) {
        if (i < 0 || i >= inst.size()) {
            throw Error(ErrorKind::InvalidArgument, "item index out of range");
        }
        if (seen[static_cast<std::size_t>(i)]) {
            throw Error(ErrorKind::InvalidArgument, "duplicate item index in bundle");
        }
        seen[static_cast<std::size_t>(i)] = true;
    }
    DiscreteDist sum = inst.items[static_cast<std::size_t>(bundle[0])];
    for (std::size_t k = 1; k < bundle.size(); ++k) {
        sum = convolve(sum, inst.items[static_cast<std::size_t>(bundle[k])], support_cap);
    }
    return sum;
}

Rational exceedance(const DiscreteDist& d, const Rational& t) {
    auto it = std::lower_bound(d.support().begin(), d.support().end(), t);
    Rational p(0);
    for (std::size_t i = static_cast<std::size_t>(it - d.support().begin()); i < d.size(); ++i) {
        p += d.probs()[i];
    }
    return p;
}

PriceQuote optimal_price(const DiscreteDist& d) {
    // Walk the support from the top accumulating tail mass; replacing on >=
    // while descending breaks revenue ties toward the lowest price.
    Rational tail(0);
    Rational best_rev(-1);
    Rational best_price(0);
    Rational best_prob(0);
    for (std::size_t k = d.size(); k-- > 0;) {
        tail += d.probs()[k];
        Rational rev = d.support()[k] * tail;
        if (rev >= best_rev) {
            best_rev = rev;
            best_price = d.support()[k];
            best_prob = tail;
        }
    }
    return PriceQuote{std::move(best_price), std::move(best_prob), std::move(best_rev)};
}

SrevResult srev(const ProductInstance& inst) {
    if (inst.items.empty()) {
        throw Error(ErrorKind::InvalidArgument, "instance has no items");
    }
    SrevResult out;
    out.revenue = 0;
    out.quotes.reserve(inst.items.size());
    for (const DiscreteDist& item : inst.items) {
        out.quotes.push_back(optimal_price(item));
        out.revenue += out.quotes.back().revenue;
    }
    return out;
}

PriceQuote brev(const ProductInstance& inst, std::size_t support_cap) {
    std::vector<int> all(inst.items.size());
    for (int i = 0; i < inst.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return optimal_price(bundle_sum_dist(inst, all, support_cap));
}

Rational conditional_expectation_below(const DiscreteDist& d, const Rational& t) {
    Rational mass(0);
    Rational weighted(0);
    for (std::size_t i = 0; i < d.size() && d.support()[i] < t; ++i) {
        mass += d.probs()[i];
        weighted += d.support()[i] * d.probs()[i];
    }
    if (mass == 0) {
        throw Error(ErrorKind::NoMassBelow,
                    "no probability mass below " + format_rational(t));
    }
    return weighted / mass;
}

}  // namespace partmech
