#pragma once

#include <gmpxx.h>

#include <string>

namespace partmech {

// All monetary values and probabilities in this library are exact rationals.
// Revenue ties (equal-revenue curves, reciprocal-price gadgets) are load-bearing,
// so nothing here ever rounds to floating point except for display and for
// seeding integer estimates that are then corrected exactly.
using Rational = mpq_class;
using Integer = mpz_class;

// Canonicalized fraction. The two-argument mpq_class constructor does not
// reduce, and GMP's rational arithmetic assumes canonical operands, so every
// dynamically built fraction must go through here (or call canonicalize()).
inline Rational ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p", or "p/q" (q > 0 after canonicalization). Throws Error(FileFormat).
Rational parse_rational(const std::string& text);

// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& q);

// Fixed-point decimal rendering, rounded to nearest (ties away from zero).
std::string format_decimal(const Rational& q, int places = 6);

// Exact integer power; exponent may be negative (base must be nonzero then).
Rational pow_rational(const Rational& base, long exp);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace partmech
