#pragma once

#include <gmpxx.h>

#include <string>

namespace cfs {

// Exact rational scalar used by every algebraic module. GMP keeps values
// canonical: lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p" or "p/q" with an optional leading sign. Throws
// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& token);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace cfs
