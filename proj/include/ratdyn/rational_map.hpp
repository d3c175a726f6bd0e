#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/poly.hpp"
#include "ratdyn/sphere.hpp"

namespace ratdyn {

// Default cap on the degree of an exact composite (f^n, f o g).
inline constexpr long kDefaultDegreeBudget = 4096;

// A point (X : Y) of P^1 over the coefficient field; infinity is (1 : 0).
struct ProjPoint {
    FieldElement x;
    FieldElement y;

    static ProjPoint finite(const FieldElement& z);
    static ProjPoint infinity(const FieldPtr& ctx);
    bool is_infinity() const { return y.is_zero(); }
    // Same point of P^1 (cross-multiplication).
    bool same_as(const ProjPoint& o) const;
    RiemannPoint to_riemann() const;
};

class RationalMap;

// z -> (a z + b) / (c z + d), ad - bc != 0, scaled so the first nonzero of
// (a, b, c, d) is 1.
class Moebius {
public:
    Moebius(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
    static Moebius identity(const FieldPtr& ctx);

    const FieldElement& a() const { return a_; }
    const FieldElement& b() const { return b_; }
    const FieldElement& c() const { return c_; }
    const FieldElement& d() const { return d_; }
    const FieldPtr& context() const { return a_.context(); }

    bool is_identity() const;
    Moebius inverse() const;
    RationalMap as_map() const;
    ProjPoint apply(const ProjPoint& p) const;
    RiemannPoint apply(const RiemannPoint& p) const;

    friend Moebius operator*(const Moebius& outer, const Moebius& inner);  // composition
    friend bool operator==(const Moebius& s, const Moebius& t);

private:
    FieldElement a_, b_, c_, d_;
};

std::string to_string(const Moebius& m);

// Self-map of P^1 given by num/den: coprime, degree max(deg num, deg den) >= 1,
// normalized so that the leading coefficient of den is 1.
class RationalMap {
public:
    // Reduces by gcd(num, den) and normalizes. Throws PreconditionError for a
    // zero denominator or a constant map.
    RationalMap(Poly num, Poly den);
    static RationalMap identity(const FieldPtr& ctx);
    static RationalMap power(const FieldPtr& ctx, int d);  // z^d

    const FieldPtr& context() const { return num_.context(); }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    int degree() const { return std::max(num_.degree(), den_.degree()); }

    // (num(X,Y), den(X,Y)) homogenized at formal degree degree(); never (0,0).
    ProjPoint apply(const ProjPoint& p) const;

    // Skips the gcd; the caller guarantees num and den are coprime.
    static RationalMap from_coprime(Poly num, Poly den);

private:
    RationalMap() = default;
    void normalize();
    Poly num_{FieldContext::rationals()}, den_{FieldContext::rationals()};
};

std::string to_string(const RationalMap& f);

// Complex coefficient copy of a map, for repeated numeric evaluation.
struct NumericMap {
    std::vector<cplx> num;  // ascending, padded to degree + 1
    std::vector<cplx> den;
    int degree = 0;

    explicit NumericMap(const RationalMap& f);
    // Projective evaluation; inputs of modulus > 1 go through the chart w = 1/z.
    RiemannPoint eval(const RiemannPoint& z) const;
    // f(z) - w as a polynomial in z (formal degree `degree`), for preimages.
    std::vector<cplx> preimage_poly(const RiemannPoint& w) const;
};

// f o g, exact and normalized.
RationalMap compose(const RationalMap& f, const RationalMap& g);

// f^n. Throws BudgetError when degree(f)^n exceeds `degree_budget`.
RationalMap iterate(const RationalMap& f, int n, long degree_budget = kDefaultDegreeBudget);

bool maps_equal(const RationalMap& f, const RationalMap& g);

// Numeric evaluation on P^1. If numerator and denominator both nearly cancel,
// the value is recomputed with exact rational arithmetic at a rational
// approximation of z.
RiemannPoint evaluate(const RationalMap& f, const RiemannPoint& z);

struct CriticalPoint {
    RiemannPoint point;
    int multiplicity = 1;  // local degree minus one
};

struct CriticalValue {
    RiemannPoint value;
    int total_multiplicity = 0;  // sum over critical points mapping here
    bool simple = false;         // exactly one critical point, of multiplicity 1
    std::vector<int> sources;    // indices into CriticalData::points
};

struct CriticalData {
    std::vector<CriticalPoint> points;
    std::vector<CriticalValue> values;
};

// Zeros of the Wronskian num' den - num den' (plus infinity through the
// degree drop), with multiplicities from an exact square-free decomposition,
// cross-checked against clustering of the numeric roots of the Wronskian.
// Critical values are merged at chordal tolerance `value_tol`.
CriticalData critical_data(const RationalMap& f, double value_tol = 1e-7);

// The Wronskian num' den - num den'.
Poly wronskian(const RationalMap& f);

// The unique Moebius sending p_i to q_i. Throws PreconditionError if two p's
// or two q's coincide.
Moebius mobius_from_three_points(const std::array<ProjPoint, 3>& p, const std::array<ProjPoint, 3>& q);

// Numeric counterpart with complex coefficients (a, b, c, d).
std::array<cplx, 4> mobius_from_three_points(const std::array<RiemannPoint, 3>& p,
                                              const std::array<RiemannPoint, 3>& q);

}  // namespace ratdyn
