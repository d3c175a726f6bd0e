#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/field.hpp"

namespace ratdyn {

// Univariate polynomial over a FieldContext, ascending coefficients. The zero
// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class Poly {
public:
    explicit Poly(FieldPtr ctx) : ctx_(std::move(ctx)) {}
    Poly(FieldPtr ctx, std::vector<FieldElement> coeffs);
    Poly(FieldPtr ctx, const std::vector<Q>& rational_coeffs);

    static Poly constant(const FieldElement& c);
    static Poly monomial(const FieldElement& c, int degree);
    static Poly x(FieldPtr ctx);

    const FieldPtr& context() const { return ctx_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    FieldElement coeff(int k) const;
    FieldElement leading() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const FieldElement& s);
    Poly operator-() const;

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const FieldElement& s) { return a *= s; }
    friend Poly operator*(Poly a, const Q& q) { return a *= FieldElement(a.ctx_, q); }
    friend bool operator==(const Poly& a, const Poly& b);

    Poly derivative() const;
    Poly monic() const;
    Poly pow(unsigned n) const;
    FieldElement eval(const FieldElement& x) const;
    // Homogeneous evaluation sum c_k X^k Y^{n-k} with formal degree n >= degree().
    FieldElement eval_homogeneous(const FieldElement& X, const FieldElement& Y, int n) const;
    // p(q(x))
    Poly compose(const Poly& q) const;
    // x^n p(1/x) for formal degree n >= degree().
    Poly reversed(int n) const;

    std::vector<std::complex<double>> to_complex() const;

private:
    void trim();
    void check_same(const Poly& o) const;
    FieldPtr ctx_;
    std::vector<FieldElement> c_;
};

// a = q*b + r with deg r < deg b. Throws PreconditionError if b is zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// Monic gcd; gcd(0, 0) = 0 and gcd(p, 0) = monic(p).
Poly poly_gcd(const Poly& a, const Poly& b);

// Yun's square-free decomposition: result[k-1] collects (monic) the roots of
// multiplicity exactly k. p must be nonzero.
std::vector<Poly> square_free_decomposition(const Poly& p);

std::string to_string(const Poly& p, const std::string& var = "z");

}  // namespace ratdyn
