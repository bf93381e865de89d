#include "partmech/mechanism.hpp"

#include <algorithm>

#include "partmech/errors.hpp"

namespace partmech {

void validate_partition(int n, const std::vector<std::vector<int>>& parts) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::size_t covered = 0;
    for (const auto& part : parts) {
        if (part.empty()) {
            throw Error(ErrorKind::InvalidArgument, "partition contains an empty bundle");
        }
        for (int i : part) {
            if (i < 0 || i >= n) {
                throw Error(ErrorKind::InvalidArgument, "item index out of range");
            }
            if (seen[static_cast<std::size_t>(i)]) {
                throw Error(ErrorKind::InvalidArgument,
                            "item " + std::to_string(i) + " appears in two bundles");
            }
            seen[static_cast<std::size_t>(i)] = true;
            ++covered;
        }
    }
    if (covered != static_cast<std::size_t>(n)) {
        throw Error(ErrorKind::InvalidArgument, "partition does not cover all items");
    }
}

Rational eval_partition(const ProductInstance& inst, const PricedPartition& pp,
                        std::size_t support_cap) {
    std::vector<std::vector<int>> parts;
    parts.reserve(pp.bundles.size());
    for (const auto& b : pp.bundles) {
        if (b.price < 0) {
            throw Error(ErrorKind::InvalidArgument, "negative bundle price");
        }
        parts.push_back(b.items);
    }
    validate_partition(inst.size(), parts);
    Rational total(0);
    for (const auto& b : pp.bundles) {
        total += b.price * exceedance(bundle_sum_dist(inst, b.items, support_cap), b.price);
    }
    return total;
}

OptimizedPartition optimize_prices(const ProductInstance& inst,
                                   const std::vector<std::vector<int>>& partition,
                                   std::size_t support_cap) {
    validate_partition(inst.size(), partition);
    OptimizedPartition out;
    out.revenue = 0;
    for (const auto& part : partition) {
        PriceQuote q = optimal_price(bundle_sum_dist(inst, part, support_cap));
        out.revenue += q.revenue;
        out.mechanism.bundles.push_back(PricedBundle{part, q.price});
        out.quotes.push_back(std::move(q));
    }
    return out;
}

Rational eval_menu(const ProductInstance& inst, const ChooseOneMenu& menu,
                   std::size_t outcome_cap) {
    const int n = inst.size();
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "instance has no items");
    for (const auto& opt : menu.options) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        for (int i : opt.items) {
            if (i < 0 || i >= n) {
                throw Error(ErrorKind::InvalidArgument, "menu option index out of range");
            }
            if (seen[static_cast<std::size_t>(i)]) {
                throw Error(ErrorKind::InvalidArgument, "duplicate item in menu option");
            }
            seen[static_cast<std::size_t>(i)] = true;
        }
        if (opt.price < 0) {
            throw Error(ErrorKind::InvalidArgument, "negative menu price");
        }
    }

    std::size_t outcomes = 1;
    for (const auto& item : inst.items) {
        if (outcomes > outcome_cap / item.size()) {
            throw Error(ErrorKind::InstanceTooLarge,
                        "outcome space exceeds cap " + std::to_string(outcome_cap));
        }
        outcomes *= item.size();
    }

    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    Rational revenue(0);
    for (std::size_t step = 0; step < outcomes; ++step) {
        Rational prob(1);
        for (int i = 0; i < n; ++i) {
            prob *= inst.items[static_cast<std::size_t>(i)].probs()[idx[static_cast<std::size_t>(i)]];
        }
        // implicit free option: surplus 0, price 0
        Rational best_surplus(0);
        Rational best_price(0);
        for (const auto& opt : menu.options) {
            Rational value(0);
            for (int i : opt.items) {
                value += inst.items[static_cast<std::size_t>(i)].support()[idx[static_cast<std::size_t>(i)]];
            }
            Rational surplus = value - opt.price;
            if (surplus > best_surplus ||
                (surplus == best_surplus && opt.price > best_price)) {
                best_surplus = surplus;
                best_price = opt.price;
            }
        }
        revenue += prob * best_price;
        for (int i = n - 1; i >= 0; --i) {
            auto& j = idx[static_cast<std::size_t>(i)];
            if (++j < inst.items[static_cast<std::size_t>(i)].size()) break;
            j = 0;
        }
    }
    return revenue;
}

}  // namespace partmech
