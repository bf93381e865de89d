#include "partmech/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "partmech/errors.hpp"

namespace partmech {

namespace {

// Equal-revenue distribution on {1..m}: Pr[v >= k] = 1/k for every k, so
// every support price earns revenue exactly 1.
DiscreteDist equal_revenue_dist(int m) {
    std::vector<std::pair<Rational, Rational>> atoms;
    for (int k = 1; k <= m; ++k) {
        Rational p = (k < m) ? Rational(1, k) - Rational(1, k + 1) : Rational(1, m);
        atoms.emplace_back(Rational(k), p);
    }
    return DiscreteDist::from_pairs(std::move(atoms));
}

// mt19937_64 is fully specified by the standard; std::uniform_int_distribution
// is not, so bounded draws go through explicit rejection sampling to keep
// generated instances identical across standard libraries.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        std::uint64_t r = rng();
        if (r < limit) return r % bound;
    }
}

}  // namespace

ProductInstance gen_two_bundles() {
    ProductInstance inst;
    DiscreteDist coin({Rational(1), Rational(2)}, {Rational(1, 2), Rational(1, 2)});
    DiscreteDist rare({Rational(1), Rational(10)}, {Rational(9, 10), Rational(1, 10)});
    inst.items = {coin, coin, rare, rare};
    return inst;
}

ProductInstance gen_hart_nisan() {
    ProductInstance inst;
    DiscreteDist u({Rational(0), Rational(1), Rational(2)},
                   {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
    inst.items = {u, u};
    return inst;
}

ProductInstance gen_two_gap(int n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "two-gap needs n >= 1");
    int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (root * root != n) {
        throw Error(ErrorKind::InvalidArgument,
                    "two-gap needs a perfect square, got " + std::to_string(n));
    }
    Rational alpha(0);
    for (int k = 1; k <= root; ++k) alpha += Rational(1, k);

    ProductInstance inst;
    DiscreteDist concentrated = equal_revenue_dist(root);
    for (int i = 0; i < n; ++i) inst.items.push_back(concentrated);
    for (int b = 1; b <= n; ++b) {
        Integer nb;
        mpz_ui_pow_ui(nb.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(b));
        Rational hit_prob = Rational(1) / Rational(nb);
        Rational value = alpha * Rational(nb);
        inst.items.push_back(DiscreteDist({Rational(0), value}, {1 - hit_prob, hit_prob}));
    }
    return inst;
}

std::vector<int> GadgetMeta::edge_items(int edge_index) const {
    const Hyperedge& e = edges.at(static_cast<std::size_t>(edge_index));
    return {e.x, X + e.y, X + Y + e.z};
}

GadgetInstance gen_3dm(const std::vector<Hyperedge>& edges) {
    if (edges.empty()) throw Error(ErrorKind::InvalidArgument, "no hyperedges");
    GadgetMeta meta;
    meta.edges = edges;
    for (const Hyperedge& e : edges) {
        if (e.x < 0 || e.y < 0 || e.z < 0) {
            throw Error(ErrorKind::InvalidArgument, "negative vertex index");
        }
        meta.X = std::max(meta.X, e.x + 1);
        meta.Y = std::max(meta.Y, e.y + 1);
        meta.Z = std::max(meta.Z, e.z + 1);
    }
    const auto h_count = static_cast<unsigned long>(edges.size());
    Integer h6, h3;
    mpz_ui_pow_ui(h6.get_mpz_t(), h_count, 6);
    mpz_ui_pow_ui(h3.get_mpz_t(), h_count, 3);
    for (std::size_t h = 0; h < edges.size(); ++h) {
        meta.pi.push_back(h6 + h3 * Integer(static_cast<unsigned long>(h) + 1));
    }
    meta.pi_min = meta.pi.front();
    meta.pi_max = meta.pi.back();

    // Per-item price lists, ascending because edge prices ascend with index.
    std::vector<std::vector<Integer>> prices(static_cast<std::size_t>(meta.item_count()));
    for (std::size_t h = 0; h < edges.size(); ++h) {
        for (int item : meta.edge_items(static_cast<int>(h))) {
            prices[static_cast<std::size_t>(item)].push_back(meta.pi[h]);
        }
    }

    GadgetInstance out;
    out.meta = meta;
    for (int item = 0; item < meta.item_count(); ++item) {
        const auto& ps = prices[static_cast<std::size_t>(item)];
        if (ps.empty()) {
            throw Error(ErrorKind::InvalidArgument,
                        "vertex (item " + std::to_string(item) + ") is in no hyperedge");
        }
        // Exceedance at each price is exactly its reciprocal; residual mass
        // sits at value 1.
        std::vector<std::pair<Rational, Rational>> atoms;
        atoms.emplace_back(Rational(1), 1 - Rational(1) / Rational(ps.front()));
        for (std::size_t k = 0; k < ps.size(); ++k) {
            Rational tail_here = Rational(1) / Rational(ps[k]);
            Rational tail_next = (k + 1 < ps.size()) ? Rational(1) / Rational(ps[k + 1]) : Rational(0);
            atoms.emplace_back(Rational(ps[k]), tail_here - tail_next);
        }
        out.instance.items.push_back(DiscreteDist::from_pairs(std::move(atoms)));
    }
    return out;
}

GadgetOptBound gadget_opt_formula(const GadgetMeta& meta, const std::vector<int>& matching_edges) {
    GadgetOptBound out;
    out.closed_form = Rational(static_cast<long>(matching_edges.size())) *
                      (Rational(3) + Rational(3) / Rational(meta.pi_max));
    out.exact_sum = 0;
    for (int h : matching_edges) {
        Rational pi(meta.pi.at(static_cast<std::size_t>(h)));
        Rational sell = Rational(3) / pi - Rational(3) / (pi * pi) + Rational(1) / (pi * pi * pi);
        out.exact_sum += (pi + 2) * sell;
    }
    return out;
}

GadgetSolutionReport verify_gadget_solution(const GadgetInstance& gadget,
                                            const PricedPartition& pp,
                                            std::size_t support_cap) {
    const ProductInstance& inst = gadget.instance;
    const GadgetMeta& meta = gadget.meta;
    {
        std::vector<std::vector<int>> parts;
        for (const auto& b : pp.bundles) parts.push_back(b.items);
        validate_partition(inst.size(), parts);
    }

    GadgetSolutionReport report;
    report.total_revenue = 0;
    std::vector<std::size_t> nontrivial;
    for (const auto& b : pp.bundles) {
        GadgetBundleReport br;
        br.items = b.items;
        br.price = b.price;
        br.revenue = b.price * exceedance(bundle_sum_dist(inst, b.items, support_cap), b.price);
        report.total_revenue += br.revenue;
        for (std::size_t h = 0; h < meta.edges.size(); ++h) {
            std::vector<int> edge_items = meta.edge_items(static_cast<int>(h));
            bool inside = std::all_of(b.items.begin(), b.items.end(), [&](int item) {
                return std::find(edge_items.begin(), edge_items.end(), item) != edge_items.end();
            });
            if (inside) br.containing_edges.push_back(static_cast<int>(h));
        }
        br.inside_hyperedge = !br.containing_edges.empty();
        if (b.items.size() > 1) nontrivial.push_back(report.bundles.size());
        report.bundles.push_back(std::move(br));
    }

    // Matching check: pick pairwise-disjoint distinct containing hyperedges,
    // one per non-trivial bundle (tiny backtracking over candidate edges).
    std::vector<bool> used_x(static_cast<std::size_t>(meta.X), false);
    std::vector<bool> used_y(static_cast<std::size_t>(meta.Y), false);
    std::vector<bool> used_z(static_cast<std::size_t>(meta.Z), false);
    auto assign = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == nontrivial.size()) return true;
        const auto& br = report.bundles[nontrivial[pos]];
        for (int h : br.containing_edges) {
            const Hyperedge& e = meta.edges[static_cast<std::size_t>(h)];
            if (used_x[static_cast<std::size_t>(e.x)] || used_y[static_cast<std::size_t>(e.y)] ||
                used_z[static_cast<std::size_t>(e.z)]) {
                continue;
            }
            used_x[static_cast<std::size_t>(e.x)] = used_y[static_cast<std::size_t>(e.y)] =
                used_z[static_cast<std::size_t>(e.z)] = true;
            if (self(self, pos + 1)) return true;
            used_x[static_cast<std::size_t>(e.x)] = used_y[static_cast<std::size_t>(e.y)] =
                used_z[static_cast<std::size_t>(e.z)] = false;
        }
        return false;
    };
    bool all_inside = std::all_of(nontrivial.begin(), nontrivial.end(), [&](std::size_t i) {
        return report.bundles[i].inside_hyperedge;
    });
    report.nontrivial_bundles_form_matching = all_inside && assign(assign, 0);
    if (report.nontrivial_bundles_form_matching) {
        report.matching_size = static_cast<int>(nontrivial.size());
    }
    return report;
}

ProductInstance gen_random(int n, int max_support_size, long value_bound, std::uint64_t seed) {
    if (n < 1 || max_support_size < 1 || value_bound < 1) {
        throw Error(ErrorKind::InvalidArgument, "random generator parameters must be positive");
    }
    std::mt19937_64 rng(seed);
    ProductInstance inst;
    for (int i = 0; i < n; ++i) {
        const int size = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(max_support_size)));
        std::vector<long> values;
        while (static_cast<int>(values.size()) < size) {
            long v = static_cast<long>(bounded_draw(rng, static_cast<std::uint64_t>(value_bound) + 1));
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
        std::sort(values.begin(), values.end());
        std::vector<long> weights;
        long total = 0;
        for (int k = 0; k < size; ++k) {
            long w = 1 + static_cast<long>(bounded_draw(rng, 20));
            weights.push_back(w);
            total += w;
        }
        std::vector<std::pair<Rational, Rational>> atoms;
        for (int k = 0; k < size; ++k) {
            atoms.emplace_back(Rational(values[static_cast<std::size_t>(k)]),
                               ratio(weights[static_cast<std::size_t>(k)], total));
        }
        inst.items.push_back(DiscreteDist::from_pairs(std::move(atoms)));
    }
    return inst;
}

GeneratedInstance generate(const GenSpec& spec) {
    GeneratedInstance out;
    switch (spec.family) {
        case GenSpec::Family::TwoBundles:
            out.instance = gen_two_bundles();
            break;
        case GenSpec::Family::HartNisan:
            out.instance = gen_hart_nisan();
            break;
        case GenSpec::Family::TwoGap:
            out.instance = gen_two_gap(spec.n);
            break;
        case GenSpec::Family::ThreeDM: {
            GadgetInstance g = gen_3dm(spec.edges);
            out.instance = std::move(g.instance);
            out.meta = std::move(g.meta);
            break;
        }
        case GenSpec::Family::Random:
            out.instance = gen_random(spec.n, spec.max_support_size, spec.value_bound, spec.seed);
            break;
    }
    return out;
}

}  // namespace partmech
