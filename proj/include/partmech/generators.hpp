#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partmech/mechanism.hpp"

namespace partmech {

// Two items with Pr[v=1]=Pr[v=2]=1/2 followed by two items with
// Pr[v=1]=9/10, Pr[v=10]=1/10. The optimal partition pairs {0,1} at price 3
// and {2,3} at price 11.
ProductInstance gen_two_bundles();

// Two i.i.d. items uniform on {0,1,2}.
ProductInstance gen_hart_nisan();

// 2n items (n a perfect square): n equal-revenue items on {1..sqrt(n)} with
// Pr[v>=k]=1/k, then n rare-event items, item b in {1..n} taking value
// alpha*n^b with probability n^-b (alpha = E of an equal-revenue item).
// Bundling the first group and selling the second separately beats both
// selling everything separately and the grand bundle.
ProductInstance gen_two_gap(int n);

struct Hyperedge {
    int x = 0, y = 0, z = 0;
    bool operator==(const Hyperedge&) const = default;
};

// Sidecar for 3D-matching instances. Hyperedge h (1-based) carries price
// pi_h = |H|^6 + |H|^3 * h; pi_min = |H|^6, pi_max = |H|^6 + |H|^4.
struct GadgetMeta {
    int X = 0, Y = 0, Z = 0;
    std::vector<Hyperedge> edges;
    std::vector<Integer> pi;  // aligned with edges
    Integer pi_min, pi_max;

    // Item layout: X vertices first, then Y, then Z.
    int item_count() const { return X + Y + Z; }
    std::vector<int> edge_items(int edge_index) const;
};

struct GadgetInstance {
    ProductInstance instance;
    GadgetMeta meta;
};

// Reduction gadget: one item per vertex; item i's support is {1} plus the
// prices of its hyperedges, with Pr[v >= pi_h] = 1/pi_h exactly. Every vertex
// must appear in at least one hyperedge (vertex counts are inferred as
// max index + 1 per coordinate).
GadgetInstance gen_3dm(const std::vector<Hyperedge>& edges);

struct GadgetOptBound {
    Rational closed_form;  // |M| * (3 + 3/pi_max); leading-order benchmark
    Rational exact_sum;    // sum over h in M of (pi_h+2)(3/pi_h - 3/pi_h^2 + 1/pi_h^3)
};

// Completeness revenue of pricing the given matching's hyperedge bundles at
// pi_h + 2 each (exact when each matching edge precedes every other edge
// sharing one of its vertices).
GadgetOptBound gadget_opt_formula(const GadgetMeta& meta, const std::vector<int>& matching_edges);

struct GadgetBundleReport {
    std::vector<int> items;
    Rational price;
    Rational revenue;
    bool inside_hyperedge = false;
    std::vector<int> containing_edges;  // indices into meta.edges
};

struct GadgetSolutionReport {
    std::vector<GadgetBundleReport> bundles;
    Rational total_revenue;
    // True when each non-trivial bundle sits inside a hyperedge and those
    // hyperedges can be chosen pairwise disjoint.
    bool nontrivial_bundles_form_matching = false;
    int matching_size = 0;  // number of non-trivial bundles when matched
};

GadgetSolutionReport verify_gadget_solution(const GadgetInstance& gadget,
                                            const PricedPartition& pp,
                                            std::size_t support_cap = kDefaultSupportCap);

// Reproducible pseudo-random instance: same seed, same instance, bit for bit.
// Supports are distinct integers in [0, value_bound] with random rational
// probabilities.
ProductInstance gen_random(int n, int max_support_size, long value_bound, std::uint64_t seed);

// Parameter record for the CLI's generator dispatch.
struct GenSpec {
    enum class Family { TwoBundles, HartNisan, TwoGap, ThreeDM, Random };
    Family family = Family::Random;
    int n = 4;
    int max_support_size = 3;
    long value_bound = 10;
    std::uint64_t seed = 0;
    std::vector<Hyperedge> edges;  // ThreeDM only
};

struct GeneratedInstance {
    ProductInstance instance;
    std::optional<GadgetMeta> meta;
};

GeneratedInstance generate(const GenSpec& spec);

}  // namespace partmech
