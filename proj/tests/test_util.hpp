#pragma once

#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "partmech/distribution.hpp"

namespace partmech::testutil {

// dist({{1, {1, 2}}, {2, {1, 2}}}) -> Pr[v=1]=Pr[v=2]=1/2
inline DiscreteDist dist(std::initializer_list<std::pair<Rational, Rational>> atoms) {
    std::vector<std::pair<Rational, Rational>> v(atoms);
    return DiscreteDist::from_pairs(std::move(v));
}

inline Rational q(long num, long den = 1) { return ratio(num, den); }

// Equal-revenue distribution on {1..m}: Pr[v >= k] = 1/k.
inline DiscreteDist equal_revenue(int m) {
    std::vector<std::pair<Rational, Rational>> atoms;
    for (int k = 1; k <= m; ++k) {
        Rational p = (k < m) ? Rational(1, k) - Rational(1, k + 1) : Rational(1, m);
        atoms.emplace_back(Rational(k), p);
    }
    return DiscreteDist::from_pairs(std::move(atoms));
}

// Several lemma constants have the form delta = scale * eps^(1/3), which is
// irrational; all comparisons against them cube both sides so the checks stay
// exact. r <= scale * eps^(1/3)?
inline bool leq_scaled_cuberoot(const Rational& r, long scale, const Rational& eps) {
    if (r <= 0) return true;
    return r * r * r <= Rational(scale) * Rational(scale) * Rational(scale) * eps;
}

// Pr[X >= (1 - scale * eps^(1/3)) * pi], exactly.
inline Rational exceedance_above_scaled(const DiscreteDist& d, const Rational& pi, long scale,
                                        const Rational& eps) {
    Rational total(0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        // v >= (1 - delta) pi  <=>  1 - v/pi <= delta
        if (leq_scaled_cuberoot(1 - d.support()[i] / pi, scale, eps)) total += d.probs()[i];
    }
    return total;
}

// lhs >= (1 - scale * eps^(1/3)) * rhs, exactly.
inline bool rhs_leq_lhs_with_cuberoot_slack(const Rational& lhs, const Rational& rhs, long scale,
                                            const Rational& eps) {
    if (rhs <= 0) return true;
    return leq_scaled_cuberoot(1 - lhs / rhs, scale, eps);
}

}  // namespace partmech::testutil
