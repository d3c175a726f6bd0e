#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace ratdyn {

// Arbitrary-precision rational, always kept canonical (reduced, positive
// denominator).
using Q = mpq_class;

// num/den in canonical form (mpq_class's two-argument constructor does not
// reduce).
inline Q make_q(const mpz_class& num, const mpz_class& den) {
    Q q(num, den);
    q.canonicalize();
    return q;
}

// Parses "n", "n/d", or a finite decimal "-1.25" into an exact rational.
// Throws ParseError on malformed input or a zero denominator.
Q parse_rational(std::string_view text);

// Always "num/den", e.g. "3/1", "-1/2".
std::string to_string(const Q& q);

// Best rational approximation with denominator <= max_den via continued
// fractions; returns nullopt when no convergent is within `tol` of `value`.
std::optional<Q> rationalize(double value, long max_den = 1000000, double tol = 1e-9);

// True when q is the square of a rational number.
bool is_rational_square(const Q& q);

// Exact square root of a rational square (precondition: is_rational_square).
Q rational_sqrt(const Q& q);

}  // namespace ratdyn
