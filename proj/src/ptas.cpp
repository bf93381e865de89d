#include "partmech/ptas.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <thread>
#include <unordered_map>

#include "partmech/errors.hpp"

namespace partmech {

namespace {

double approx_log2(const Rational& x) {
    long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    return (static_cast<double>(en) + std::log2(dn)) - (static_cast<double>(ed) + std::log2(dd));
}

}  // namespace

Net::Net(const Rational& eps) : eps_(eps), base_(1 + eps) {
    if (eps <= 0 || eps >= 1) {
        throw Error(ErrorKind::InvalidArgument, "net eps must lie in (0,1)");
    }
}

Rational Net::power(long j) const { return pow_rational(base_, j); }

long Net::floor_exponent(const Rational& x) const {
    if (x <= 0) throw Error(ErrorKind::InvalidArgument, "floor_exponent needs x > 0");
    long j = static_cast<long>(std::floor(approx_log2(x) / approx_log2(base_)));
    Rational pj = power(j);
    while (pj > x) {
        --j;
        pj /= base_;
    }
    for (Rational pnext = pj * base_; pnext <= x; pnext *= base_) ++j;
    return j;
}

long Net::ceil_exponent(const Rational& x) const {
    long j = floor_exponent(x);
    return power(j) == x ? j : j + 1;
}

Rational Net::round_down(const Rational& x) const {
    if (x < 0) throw Error(ErrorKind::InvalidArgument, "net rounding needs x >= 0");
    if (x == 0) return Rational(0);
    return power(floor_exponent(x));
}

Integer PtasConfig::resolved_merge_k() const {
    if (merge_k != 0) return Integer(static_cast<unsigned long>(merge_k));
    // ceil(8 * eps^-4 * delta^-3)
    Rational k = Rational(8) / (pow_rational(eps, 4) * pow_rational(delta, 3));
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), k.get_num().get_mpz_t(), k.get_den().get_mpz_t());
    return out;
}

Rational PtasConfig::resolved_range_eta() const {
    if (range_eta != 0) return range_eta;
    return pow_rational(delta, 4) * pow_rational(eps, 5) * (1 - eps);
}

Rational PtasConfig::resolved_class_zero_ratio() const {
    return class_zero_ratio != 0 ? class_zero_ratio : eps;
}

void PtasConfig::validate() const {
    if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidArgument, "eps must be in (0,1)");
    if (delta <= 0 || delta >= 1) throw Error(ErrorKind::InvalidArgument, "delta must be in (0,1)");
    if (ell_max < 1) throw Error(ErrorKind::InvalidArgument, "ell_max must be >= 1");
    if (grid_levels < 0) throw Error(ErrorKind::InvalidArgument, "grid_levels must be >= 0");
    if (low_threshold_exp != 1 && low_threshold_exp != 2) {
        throw Error(ErrorKind::InvalidArgument, "low_threshold_exp must be 1 or 2");
    }
    if (range_eta < 0 || class_zero_ratio < 0) {
        throw Error(ErrorKind::InvalidArgument, "negative config rational");
    }
}

DiscreteDist round_dist(const DiscreteDist& d, const Net& net) {
    // Step (a): round values down, merging collisions; step (b): round the
    // merged probabilities down, pushing the deficit onto value 0.
    std::vector<std::pair<Rational, Rational>> merged;
    for (std::size_t i = 0; i < d.size(); ++i) {
        Rational v = net.round_down(d.support()[i]);
        if (!merged.empty() && merged.back().first == v) {
            merged.back().second += d.probs()[i];
        } else {
            merged.emplace_back(std::move(v), d.probs()[i]);
        }
    }
    std::vector<std::pair<Rational, Rational>> atoms;
    Rational zero_mass(0);
    for (auto& [v, p] : merged) {
        if (v == 0) {
            zero_mass += p;
            continue;
        }
        Rational rounded = net.round_down(p);
        zero_mass += p - rounded;
        atoms.emplace_back(std::move(v), std::move(rounded));
    }
    if (zero_mass > 0) atoms.emplace_back(Rational(0), std::move(zero_mass));
    return DiscreteDist::from_pairs(std::move(atoms));
}

DiscreteDist merge_low_values(const DiscreteDist& d, const Rational& pi, const PtasConfig& cfg) {
    if (pi <= 0) throw Error(ErrorKind::InvalidArgument, "merge_low_values needs pi > 0");
    const Net net(cfg.eps);
    const Rational cutoff = pow_rational(cfg.eps, cfg.low_threshold_exp) * pi;
    Rational mass(0), weighted(0);
    std::size_t first_high = 0;
    while (first_high < d.size() && d.support()[first_high] < cutoff) {
        mass += d.probs()[first_high];
        weighted += d.support()[first_high] * d.probs()[first_high];
        ++first_high;
    }
    if (first_high == 0) return d;

    std::vector<std::pair<Rational, Rational>> atoms;
    const Rational merged_value = net.round_down(weighted / mass);
    const Rational merged_prob = net.round_down(mass);
    atoms.emplace_back(merged_value, merged_prob);
    if (mass != merged_prob) atoms.emplace_back(Rational(0), mass - merged_prob);
    for (std::size_t i = first_high; i < d.size(); ++i) {
        atoms.emplace_back(d.support()[i], d.probs()[i]);
    }
    return DiscreteDist::from_pairs(std::move(atoms));
}

PruneResult prune_high_values(const DiscreteDist& d, const Rational& pi, const PtasConfig& cfg) {
    if (pi <= 0) throw Error(ErrorKind::InvalidArgument, "prune_high_values needs pi > 0");
    const Rational lo = pow_rational(cfg.eps, cfg.low_threshold_exp) * pi;
    Rational pstar(0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d.support()[i] >= lo && d.support()[i] <= pi) {
            pstar = std::max(pstar, d.probs()[i]);
        }
    }
    if (pstar == 0) return PruneResult{d, Rational(0)};

    const Rational threshold = pow_rational(cfg.eps, 4) * pstar;
    std::vector<std::pair<Rational, Rational>> atoms;
    Rational zero_mass(0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Rational& v = d.support()[i];
        if (v >= lo && v <= pi && d.probs()[i] < threshold) {
            zero_mass += d.probs()[i];
        } else {
            atoms.emplace_back(v, d.probs()[i]);
        }
    }
    if (zero_mass > 0) atoms.emplace_back(Rational(0), std::move(zero_mass));
    return PruneResult{DiscreteDist::from_pairs(std::move(atoms)), std::move(pstar)};
}

SimplifiedItem simplify_item(const DiscreteDist& d, const Rational& pi, const PtasConfig& cfg) {
    const Net net(cfg.eps);
    DiscreteDist rounded = round_dist(d, net);
    DiscreteDist merged = merge_low_values(rounded, pi, cfg);
    PruneResult pruned = prune_high_values(merged, pi, cfg);
    return SimplifiedItem{std::move(pruned.dist), std::move(pruned.pstar)};
}

std::map<BucketKey, std::vector<int>> bucketize(const ProductInstance& simplified,
                                                const Rational& pi, const PtasConfig& cfg) {
    if (pi <= 0) throw Error(ErrorKind::InvalidArgument, "bucketize needs pi > 0");
    const Net net(cfg.eps);
    const int n = simplified.size();
    const Rational window_lo = pi / Rational(static_cast<long>(n) * static_cast<long>(n));
    const Rational cutoff = pow_rational(cfg.eps, cfg.low_threshold_exp) * pi;
    const Rational ratio = cfg.resolved_class_zero_ratio();
    const long top_exponent = net.floor_exponent(pi);
    const long pattern_lo = net.ceil_exponent(cutoff);

    auto clamp_class = [&](const Rational& value) -> long {
        if (value <= 0 || value < window_lo) return BucketKey::kZero;
        if (value >= pi) return top_exponent;
        return net.floor_exponent(value);
    };

    std::map<BucketKey, std::vector<int>> buckets;
    for (int item = 0; item < n; ++item) {
        const DiscreteDist& d = simplified.items[static_cast<std::size_t>(item)];

        Rational low_mass(0), low_weighted(0), pstar(0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            const Rational& v = d.support()[i];
            if (v < cutoff) {
                low_mass += d.probs()[i];
                low_weighted += v * d.probs()[i];
            }
            if (v >= cutoff && v <= pi) pstar = std::max(pstar, d.probs()[i]);
        }
        Rational low_expectation = low_mass > 0 ? low_weighted / low_mass : Rational(0);
        Rational pstar_pi = pstar * pi;
        Rational item_srev = optimal_price(d).revenue;

        const Rational strongest = std::max({low_expectation, pstar_pi, item_srev});
        auto classify = [&](const Rational& value) -> long {
            if (strongest > 0 && value < ratio * strongest) return BucketKey::kZero;
            return clamp_class(value);
        };

        BucketKey key;
        key.low_expectation_class = classify(low_expectation);
        key.pstar_pi_class = classify(pstar_pi);
        key.srev_class = classify(item_srev);
        if (pstar > 0) {
            const Rational near = pstar / net.base();
            const Rational mid = pow_rational(cfg.eps, 2) * pstar;
            for (long j = pattern_lo; j <= top_exponent; ++j) {
                Rational point = net.power(j);
                auto it = std::lower_bound(d.support().begin(), d.support().end(), point);
                Rational q(0);
                if (it != d.support().end() && *it == point) {
                    q = d.probs()[static_cast<std::size_t>(it - d.support().begin())];
                }
                char code = '0';
                if (q >= near) {
                    code = '3';
                } else if (q >= mid) {
                    code = '2';
                } else if (q > 0) {
                    code = '1';
                }
                key.high_pattern.push_back(code);
            }
        }
        buckets[key].push_back(item);
    }
    return buckets;
}

PriceQuote merge_bundles(const std::vector<PriceQuote>& quotes, const PtasConfig& cfg) {
    if (quotes.empty()) throw Error(ErrorKind::InvalidArgument, "no quotes to merge");
    Rational pi_star(0);
    for (const PriceQuote& q : quotes) pi_star = std::max(pi_star, q.price);
    Rational expected(0);
    for (const PriceQuote& q : quotes) {
        if (q.sell_prob < cfg.eps) {
            throw Error(ErrorKind::InvalidArgument,
                        "quote sells with probability below eps");
        }
        if (q.price < cfg.eps * pi_star) {
            throw Error(ErrorKind::InvalidArgument,
                        "quote prices span more than one [eps*pi, pi] interval");
        }
        expected += q.price * q.sell_prob;
    }
    const Rational price = (1 - cfg.delta / 2) * expected;
    Rational failure = Rational(4) / (pow_rational(cfg.delta, 2) *
                                      Rational(static_cast<long>(quotes.size())) *
                                      pow_rational(cfg.eps, 4));
    Rational sell_floor = 1 - failure;
    if (sell_floor < 0) sell_floor = 0;
    return PriceQuote::make(price, sell_floor);
}

SingletonizeDecision singletonize_check(const ProductInstance& inst, const std::vector<int>& bundle,
                                        const PriceQuote& quote, const PtasConfig& cfg) {
    for (int i : bundle) {
        if (i < 0 || i >= inst.size()) {
            throw Error(ErrorKind::InvalidArgument, "bundle index out of range");
        }
    }
    SingletonizeDecision out;
    out.dissolve = quote.sell_prob <= cfg.eps;
    out.floor_revenue = (1 - cfg.delta) * quote.sell_prob * quote.price;
    return out;
}

DropLowResult drop_low_bundles(const std::vector<PriceQuote>& quotes, const PtasConfig& cfg) {
    Rational pi_star(0);
    for (const PriceQuote& q : quotes) {
        if (q.sell_prob < cfg.eps) {
            throw Error(ErrorKind::InvalidArgument, "quote sells with probability below eps");
        }
        pi_star = std::max(pi_star, q.price);
    }
    const Rational eta = cfg.resolved_range_eta();
    DropLowResult out;
    for (const PriceQuote& q : quotes) {
        if (q.price >= eta * pi_star) out.kept.push_back(q);
    }
    out.discarded_bound = Rational(cfg.resolved_merge_k()) * eta * pi_star / (1 - cfg.eps);
    return out;
}

namespace {

// Lazily priced bundle quotes keyed by item bitmask; nullopt records bundles
// whose sum support tripped the cap so they are skipped deterministically.
class BundleQuoteCache {
  public:
    BundleQuoteCache(const ProductInstance& inst, std::size_t support_cap)
        : inst_(inst), support_cap_(support_cap) {}

    const std::optional<PriceQuote>* quote(std::uint64_t mask) {
        {
            std::shared_lock lock(mu_);
            auto it = map_.find(mask);
            if (it != map_.end()) return &it->second;
        }
        std::optional<PriceQuote> computed = compute(mask);
        std::unique_lock lock(mu_);
        auto [it, inserted] = map_.try_emplace(mask, std::move(computed));
        return &it->second;
    }

  private:
    std::optional<PriceQuote> compute(std::uint64_t mask) const {
        std::vector<int> items;
        for (int i = 0; i < inst_.size(); ++i) {
            if (mask >> i & 1) items.push_back(i);
        }
        try {
            return optimal_price(bundle_sum_dist(inst_, items, support_cap_));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SupportExplosion) return std::nullopt;
            throw;
        }
    }

    const ProductInstance& inst_;
    std::size_t support_cap_;
    std::unordered_map<std::uint64_t, std::optional<PriceQuote>> map_;
    mutable std::shared_mutex mu_;
};

// All compositions of `total` into `slots` non-negative parts, ordered with
// fewer occupied slots first (pure assignments lead the scan), then
// lexicographically descending. Slot layout: [bundle 1 .. bundle ell, sell
// separately].
std::vector<std::vector<int>> compositions(int total, int slots) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(slots), 0);
    auto rec = [&](auto&& self, int slot, int left) -> void {
        if (slot == slots - 1) {
            cur[static_cast<std::size_t>(slot)] = left;
            out.push_back(cur);
            return;
        }
        for (int take = left; take >= 0; --take) {
            cur[static_cast<std::size_t>(slot)] = take;
            self(self, slot + 1, left - take);
        }
        cur[static_cast<std::size_t>(slot)] = 0;
    };
    rec(rec, 0, total);
    auto nonzero = [](const std::vector<int>& c) {
        return std::count_if(c.begin(), c.end(), [](int v) { return v != 0; });
    };
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        const auto na = nonzero(a), nb = nonzero(b);
        if (na != nb) return na < nb;
        return a > b;  // lexicographically descending
    });
    return out;
}

bool all_even(const std::vector<int>& comp) {
    return std::all_of(comp.begin(), comp.end(), [](int v) { return v % 2 == 0; });
}

struct CandidateKey {
    std::uint64_t block;  // 0 and 1 are the fixed singleton/grand candidates
    std::uint64_t position;
    int variant;  // 0 as enumerated, 1 with low-probability bundles dissolved

    bool operator<(const CandidateKey& o) const {
        if (block != o.block) return block < o.block;
        if (position != o.position) return position < o.position;
        return variant < o.variant;
    }
};

struct BestCandidate {
    Rational revenue{-1};
    CandidateKey key{};
    std::vector<std::uint64_t> masks;

    bool offer(Rational revenue_in, const CandidateKey& key_in,
               const std::vector<std::uint64_t>& masks_in) {
        if (revenue_in > revenue || (revenue_in == revenue && !masks.empty() && key_in < key)) {
            revenue = std::move(revenue_in);
            key = key_in;
            masks = masks_in;
            return true;
        }
        return false;
    }
};

struct PriceScaleView {
    Rational pi;
    // bucket -> member items, in ascending item order; map order makes the
    // bucket sequence deterministic.
    std::vector<std::vector<int>> buckets;
};

struct Block {
    int level;       // dyadic grid depth
    int ell;         // number of bundle slots
    std::size_t pi_index;
    const std::vector<std::vector<int>>* comps;
    std::uint64_t scan_limit;    // positions to scan (post budget split)
    std::uint64_t total_positions;
};

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out *= base;
    }
    return out;
}

}  // namespace

SolveReport solve_ptas(const ProductInstance& inst, const PtasConfig& cfg) {
    cfg.validate();
    const int n = inst.size();
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "instance has no items");
    if (n > 64) throw Error(ErrorKind::InvalidArgument, "solve_ptas supports up to 64 items");
    const auto start = std::chrono::steady_clock::now();

    const Net net(cfg.eps);
    BundleQuoteCache cache(inst, cfg.support_cap);

    std::atomic<std::uint64_t> guard_skipped{0};
    std::atomic<std::uint64_t> candidates_evaluated{0};

    // Evaluates a candidate (disjoint covering masks); returns nullopt when a
    // bundle trips the support cap.
    auto evaluate = [&](const std::vector<std::uint64_t>& masks) -> std::optional<Rational> {
        Rational total(0);
        for (std::uint64_t mask : masks) {
            const std::optional<PriceQuote>* q = cache.quote(mask);
            if (!q->has_value()) {
                guard_skipped.fetch_add(1, std::memory_order_relaxed);
                return std::nullopt;
            }
            total += (*q)->revenue;
        }
        candidates_evaluated.fetch_add(1, std::memory_order_relaxed);
        return total;
    };

    // Dissolving bundles whose optimal quote sells with probability <= eps is
    // another candidate; it can strictly improve badly chosen bundles.
    auto dissolved_variant = [&](const std::vector<std::uint64_t>& masks)
        -> std::optional<std::vector<std::uint64_t>> {
        std::vector<std::uint64_t> out;
        bool changed = false;
        for (std::uint64_t mask : masks) {
            const std::optional<PriceQuote>* q = cache.quote(mask);
            if (std::popcount(mask) > 1 && q->has_value() && (*q)->sell_prob <= cfg.eps) {
                for (int i = 0; i < n; ++i) {
                    if (mask >> i & 1) out.push_back(1ull << i);
                }
                changed = true;
            } else {
                out.push_back(mask);
            }
        }
        if (!changed) return std::nullopt;
        std::sort(out.begin(), out.end());
        return out;
    };

    BestCandidate best;
    auto offer_with_variant = [&](BestCandidate& target, std::vector<std::uint64_t> masks,
                                  std::uint64_t block, std::uint64_t position) {
        if (auto revenue = evaluate(masks)) {
            target.offer(std::move(*revenue), CandidateKey{block, position, 0}, masks);
        }
        if (auto variant = dissolved_variant(masks)) {
            if (auto revenue = evaluate(*variant)) {
                target.offer(std::move(*revenue), CandidateKey{block, position, 1}, *variant);
            }
        }
    };

    {
        std::vector<std::uint64_t> singletons;
        for (int i = 0; i < n; ++i) singletons.push_back(1ull << i);
        offer_with_variant(best, std::move(singletons), 0, 0);
        std::uint64_t grand = n == 64 ? ~0ull : (1ull << n) - 1;
        offer_with_variant(best, {grand}, 1, 0);
    }

    // Candidate price scales: net points within [v_min, v_max].
    std::vector<PriceScaleView> views;
    {
        Rational v_min(0), v_max(0);
        for (const DiscreteDist& item : inst.items) {
            for (const Rational& v : item.support()) {
                if (v > 0 && (v_min == 0 || v < v_min)) v_min = v;
            }
            v_max += item.max_value();
        }
        if (v_min > 0) {
            const long lo = net.ceil_exponent(v_min);
            const long hi = net.floor_exponent(v_max);
            for (long j = lo; j <= hi; ++j) {
                PriceScaleView view;
                view.pi = net.power(j);
                ProductInstance simplified;
                for (const DiscreteDist& item : inst.items) {
                    simplified.items.push_back(simplify_item(item, view.pi, cfg).dist);
                }
                for (auto& [key, items] : bucketize(simplified, view.pi, cfg)) {
                    view.buckets.push_back(items);
                }
                views.push_back(std::move(view));
            }
        }
    }

    // Composition lists per (level, ell); the allocation grid at level g uses
    // denominators 2^g and refines level g-1, so a candidate is scanned at the
    // first level that can express it.
    std::vector<std::vector<std::vector<std::vector<int>>>> comp_lists(
        static_cast<std::size_t>(cfg.grid_levels) + 1);
    for (int g = 0; g <= cfg.grid_levels; ++g) {
        for (int ell = 1; ell <= cfg.ell_max; ++ell) {
            comp_lists[static_cast<std::size_t>(g)].push_back(compositions(1 << g, ell + 1));
        }
    }

    std::vector<Block> blocks;
    for (int g = 0; g <= cfg.grid_levels; ++g) {
        for (int ell = 1; ell <= cfg.ell_max; ++ell) {
            for (std::size_t p = 0; p < views.size(); ++p) {
                Block b;
                b.level = g;
                b.ell = ell;
                b.pi_index = p;
                b.comps = &comp_lists[static_cast<std::size_t>(g)][static_cast<std::size_t>(ell - 1)];
                b.total_positions = saturating_pow(b.comps->size(), views[p].buckets.size());
                b.scan_limit = 0;
                blocks.push_back(b);
            }
        }
    }
    // Budget waterfill: find the largest uniform scan level the budget can
    // fund (small blocks are fully covered, large blocks truncate at the
    // level), then hand out the remainder in block order. Every block keeps a
    // small floor so late price scales are never starved entirely.
    bool truncated = false;
    if (!blocks.empty()) {
        constexpr std::uint64_t kBlockFloor = 64;
        auto funded = [&](std::uint64_t level) {
            std::uint64_t sum = 0;
            for (const Block& b : blocks) {
                sum += std::min(b.total_positions, level);
                if (sum >= cfg.max_candidates) return sum;  // saturate early
            }
            return sum;
        };
        std::uint64_t lo = kBlockFloor, hi = std::max<std::uint64_t>(kBlockFloor, cfg.max_candidates);
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (funded(mid) <= cfg.max_candidates) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        std::uint64_t spare = cfg.max_candidates - std::min(cfg.max_candidates, funded(lo));
        for (Block& b : blocks) {
            b.scan_limit = std::min(b.total_positions, lo);
            const std::uint64_t extra = std::min(b.total_positions - b.scan_limit, spare);
            b.scan_limit += extra;
            spare -= extra;
            if (b.scan_limit < b.total_positions) truncated = true;
        }
    }

    const int threads = std::max(1, cfg.threads);
    std::atomic<std::size_t> next_block{0};
    std::vector<BestCandidate> local_best(static_cast<std::size_t>(threads));

    auto worker = [&](int tid) {
        BestCandidate& mine = local_best[static_cast<std::size_t>(tid)];
        for (;;) {
            const std::size_t bi = next_block.fetch_add(1);
            if (bi >= blocks.size()) break;
            const Block& block = blocks[bi];
            const PriceScaleView& view = views[block.pi_index];
            const std::size_t nbuckets = view.buckets.size();
            const auto& comps = *block.comps;
            const int denom = 1 << block.level;

            std::vector<std::size_t> digits(nbuckets, 0);
            std::set<std::vector<std::uint64_t>> seen;
            for (std::uint64_t pos = 0; pos < block.scan_limit; ++pos) {
                if (pos != 0) {
                    // odometer: bucket 0 is the least significant digit
                    for (std::size_t b = 0; b < nbuckets; ++b) {
                        if (++digits[b] < comps.size()) break;
                        digits[b] = 0;
                    }
                }
                if (block.level > 0) {
                    bool duplicate_of_coarser = true;
                    for (std::size_t b = 0; b < nbuckets && duplicate_of_coarser; ++b) {
                        duplicate_of_coarser = all_even(comps[digits[b]]);
                    }
                    if (duplicate_of_coarser) continue;
                }

                std::vector<std::uint64_t> bundle_masks(static_cast<std::size_t>(block.ell), 0);
                std::vector<std::uint64_t> masks;
                for (std::size_t b = 0; b < nbuckets; ++b) {
                    const std::vector<int>& members = view.buckets[b];
                    const std::vector<int>& comp = comps[digits[b]];
                    std::size_t cursor = 0;
                    for (int slot = 0; slot < block.ell; ++slot) {
                        // counts round down; leftovers sell separately
                        const std::size_t take =
                            members.size() * static_cast<std::size_t>(comp[static_cast<std::size_t>(slot)]) /
                            static_cast<std::size_t>(denom);
                        for (std::size_t t = 0; t < take && cursor < members.size(); ++t) {
                            bundle_masks[static_cast<std::size_t>(slot)] |=
                                1ull << members[cursor++];
                        }
                    }
                    for (; cursor < members.size(); ++cursor) {
                        masks.push_back(1ull << members[cursor]);
                    }
                }
                for (std::uint64_t m : bundle_masks) {
                    if (m != 0) masks.push_back(m);
                }
                std::sort(masks.begin(), masks.end());
                if (!seen.insert(masks).second) continue;
                offer_with_variant(mine, std::move(masks), bi + 2, pos);
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (BestCandidate& c : local_best) {
        if (c.revenue >= 0) best.offer(std::move(c.revenue), c.key, c.masks);
    }

    // Certificate: re-price the winner on the original instance.
    std::vector<std::vector<int>> partition;
    for (std::uint64_t mask : best.masks) {
        std::vector<int> items;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) items.push_back(i);
        }
        partition.push_back(std::move(items));
    }
    OptimizedPartition priced = optimize_prices(inst, partition, cfg.support_cap);

    SolveReport report;
    report.best = std::move(priced.mechanism);
    report.revenue = std::move(priced.revenue);
    report.partitions_examined = candidates_evaluated.load();
    report.guard_skipped = guard_skipped.load();
    report.truncated = truncated;
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

}  // namespace partmech
