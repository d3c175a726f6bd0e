#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ratdyn/rational.hpp"

namespace ratdyn {

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

// The coefficient field Q(alpha) for a monic minimal polynomial of alpha, or
// Q itself. Immutable once configured; shared by every element built on it.
class FieldContext {
public:
    // Upper bound on [Q(alpha):Q].
    static constexpr int kMaxDegree = 8;

    // The rationals (extension degree 1). A process-wide singleton.
    static FieldPtr rationals();

    // Configures Q(alpha) for `minpoly` (ascending coefficients, monic, degree
    // 2..8). Irreducibility is decided exactly for degree <= 4 (rational roots
    // plus the quartic resolvent); higher degrees are accepted with
    // irreducibility_trusted() == true. Throws PreconditionError with an
    // explanation for reducible or malformed input.
    static FieldPtr configure(std::vector<Q> minpoly);

    // Named fields used by the catalog: Q(w) with w^2+w+1=0, Q(i) with
    // i^2+1=0, and Q(zeta) with zeta^4-zeta^2+1=0 (zeta a primitive 12th root
    // of unity, so i = zeta^3 and w = zeta^4).
    static FieldPtr eisenstein();
    static FieldPtr gaussian();
    static FieldPtr cyclotomic12();

    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    bool is_rationals() const { return degree() == 1; }
    // Ascending coefficients; for Q this is {0, 1}.
    const std::vector<Q>& minpoly() const { return minpoly_; }
    bool irreducibility_trusted() const { return trusted_; }
    // The complex root of the minimal polynomial used for numerics: the root
    // with nonnegative imaginary part and largest real part.
    std::complex<double> embedding() const { return embedding_; }
    std::complex<long double> embedding_ld() const { return embedding_ld_; }
    // alpha^k reduced to the power basis, for k = degree .. 2*degree-2.
    const std::vector<std::vector<Q>>& reduction_table() const { return reduction_; }

    bool same_field(const FieldContext& other) const;

private:
    FieldContext() = default;
    std::vector<Q> minpoly_;
    bool trusted_ = false;
    std::complex<double> embedding_{0.0, 0.0};
    std::complex<long double> embedding_ld_{0.0L, 0.0L};
    std::vector<std::vector<Q>> reduction_;
};

// True iff the monic rational polynomial (ascending) is irreducible over Q.
// Only defined for degree 1..4; throws PreconditionError beyond that.
bool irreducible_over_q(const std::vector<Q>& poly);

// Element of Q(alpha), stored as coordinates in the power basis 1..alpha^{m-1}.
class FieldElement {
public:
    explicit FieldElement(FieldPtr ctx);                     // zero
    FieldElement(FieldPtr ctx, const Q& value);              // rational constant
    FieldElement(FieldPtr ctx, std::vector<Q> coords);       // explicit coordinates
    static FieldElement generator(FieldPtr ctx);

    const FieldPtr& context() const { return ctx_; }
    const std::vector<Q>& coords() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;  // all non-constant coordinates vanish

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement& operator*=(const Q& q);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend FieldElement operator*(FieldElement a, const Q& q) { return a *= q; }

    friend bool operator==(const FieldElement& a, const FieldElement& b);

    FieldElement inverse() const;  // throws PreconditionError for zero
    FieldElement pow(unsigned n) const;

    std::complex<double> to_complex() const;
    std::complex<long double> to_complex_ld() const;

private:
    void check_same(const FieldElement& o) const;
    FieldPtr ctx_;
    std::vector<Q> c_;
};

// An element of the field whose embedding is within `tol` of v, written as
// q0 + q1 beta with small-denominator rationals q0, q1 and beta a non-real
// power of the generator (or as a rational, for real v). Returns nullopt
// when no such element is found.
std::optional<FieldElement> recognize(const FieldPtr& ctx, std::complex<double> v, long max_den = 1000000,
                                      double tol = 1e-8);

// "num/den" for rationals, "(c0 + c1*alpha + ...)" otherwise.
std::string to_string(const FieldElement& x);

}  // namespace ratdyn
