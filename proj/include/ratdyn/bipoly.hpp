#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratdyn/poly.hpp"

namespace ratdyn {

// Polynomial in x and y over a FieldContext: coefficient (i, j) multiplies
// x^i y^j. Stored dense and trimmed so that the last row and last column each
// contain a nonzero entry (unless the polynomial is zero).
class BiPoly {
public:
    explicit BiPoly(FieldPtr ctx) : ctx_(std::move(ctx)) {}
    BiPoly(FieldPtr ctx, std::vector<std::vector<FieldElement>> rows);

    // p(x) (as a polynomial in x only) or p(y).
    static BiPoly in_x(const Poly& p);
    static BiPoly in_y(const Poly& p);
    // p(x) q(y) - p(y) q(x): the curve G(x) = G(y) for G = p/q.
    static BiPoly graph_of(const Poly& p, const Poly& q);

    const FieldPtr& context() const { return ctx_; }
    bool is_zero() const { return rows_.empty(); }
    // (max x-degree with a nonzero row, max y-degree with a nonzero column);
    // (-1, -1) for zero.
    std::pair<int, int> bidegree() const;
    FieldElement coeff(int i, int j) const;
    const std::vector<std::vector<FieldElement>>& rows() const { return rows_; }

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly operator-() const;
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(BiPoly a, const FieldElement& s);
    friend bool operator==(const BiPoly& a, const BiPoly& b);

    // P(y, x)
    BiPoly swapped() const;
    std::complex<double> eval(std::complex<double> x, std::complex<double> y) const;
    // Scaled so that the lexicographically leading coefficient (highest x
    // power, then highest y power) is 1; over Q additionally made a primitive
    // integer polynomial with positive leading coefficient.
    BiPoly normalized() const;

private:
    void trim();
    void check_same(const BiPoly& o) const;
    FieldPtr ctx_;
    std::vector<std::vector<FieldElement>> rows_;
};

// Exact division: Q with P = D*Q, or nullopt when D does not divide P.
std::optional<BiPoly> bipoly_divide_exact(const BiPoly& P, const BiPoly& D);

std::string to_string(const BiPoly& p);

}  // namespace ratdyn
