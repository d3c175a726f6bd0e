#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ratdyn/sphere.hpp"

namespace ratdyn {

// Relative backward error |p(z)| / sum |c_k| |z|^k, evaluated without overflow.
double backward_error(std::span<const cplx> coeffs, cplx z);

// All complex roots of sum_k coeffs[k] z^k (ascending; trailing zeros are
// trimmed, so the degree is the last nonzero index). Simultaneous
// Aberth-Ehrlich iteration seeded from the Newton polygon, then Newton
// polishing; every root must reach backward error < residual_tol. On failure
// the iteration is repeated in extended precision before giving up with a
// NumericalError naming the polynomial.
std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs, double residual_tol = 1e-10);

// Roots of a polynomial of formal degree `formal_degree` viewed on P^1:
// missing top coefficients contribute roots at infinity.
std::vector<RiemannPoint> projective_roots(std::span<const cplx> coeffs, int formal_degree,
                                           double residual_tol = 1e-10);

}  // namespace ratdyn
