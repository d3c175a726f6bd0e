#include "ratdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ratdyn/errors.hpp"

namespace ratdyn {
namespace {

template <typename R>
using C = std::complex<R>;

// |z| without hypot's overhead; falls back to it only when the square overflows
template <typename R>
inline R mag(C<R> z) {
    const R n = z.real() * z.real() + z.imag() * z.imag();
    return std::isfinite(n) ? std::sqrt(n) : std::abs(z);
}

// p(z)/p'(z) for the polynomial with coefficients c (ascending). For |z| > 1
// the reversed polynomial is used so that nothing overflows.
template <typename R>
C<R> newton_ratio(const std::vector<C<R>>& c, C<R> z) {
    const int n = static_cast<int>(c.size()) - 1;
    if (mag(z) <= R(1)) {
        C<R> p = c[n], dp = 0;
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        if (dp == C<R>(0)) return p == C<R>(0) ? C<R>(0) : C<R>(1e-3);
        return p / dp;
    }
    const C<R> w = R(1) / z;
    // P(w) = sum c_k w^{n-k}
    C<R> p = c[0], dp = 0;
    for (int k = 1; k <= n; ++k) {
        dp = dp * w + p;
        p = p * w + c[k];
    }
    const C<R> den = R(n) * p - w * dp;
    if (den == C<R>(0)) return C<R>(1e-3);
    return z * p / den;
}

template <typename R>
R backward_error_t(const std::vector<C<R>>& c, C<R> z) {
    const int n = static_cast<int>(c.size()) - 1;
    C<R> p = 0;
    R scale = 0;
    if (mag(z) <= R(1)) {
        const R az = mag(z);
        for (int k = n; k >= 0; --k) {
            p = p * z + c[k];
            scale = scale * az + mag(c[k]);
        }
    } else {
        const C<R> w = R(1) / z;
        const R aw = mag(w);
        for (int k = 0; k <= n; ++k) {
            p = p * w + c[k];
            scale = scale * aw + mag(c[k]);
        }
    }
    if (scale == R(0)) return R(0);
    return mag(p) / scale;
}

// Initial approximations from the upper convex hull of (k, log|c_k|).
template <typename R>
std::vector<C<R>> newton_polygon_start(const std::vector<C<R>>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<int> hull;
    std::vector<R> lg(n + 1);
    for (int k = 0; k <= n; ++k) {
        lg[k] = mag(c[k]) > R(0) ? std::log(mag(c[k])) : -std::numeric_limits<R>::infinity();
    }
    for (int k = 0; k <= n; ++k) {
        if (!std::isfinite(lg[k])) continue;
        while (hull.size() >= 2) {
            const int a = hull[hull.size() - 2], b = hull.back();
            // remove b if it lies on or below segment a-k
            const R cross = (lg[b] - lg[a]) * R(k - a) - (lg[k] - lg[a]) * R(b - a);
            if (cross <= R(0)) hull.pop_back();
            else break;
        }
        hull.push_back(k);
    }
    std::vector<C<R>> z;
    z.reserve(n);
    const R two_pi = R(2) * std::numbers::pi_v<R>;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const int a = hull[h], b = hull[h + 1];
        const int m = b - a;
        const R radius = std::exp((lg[a] - lg[b]) / R(m));
        for (int j = 0; j < m; ++j) {
            const R theta = two_pi * R(j) / R(m) + two_pi * R(h) / R(n) + R(0.4);
            z.push_back(std::polar(radius, theta));
        }
    }
    return z;
}

template <typename R>
struct AberthResult {
    std::vector<C<R>> roots;
    std::vector<R> errors;  // backward error of each root
};

template <typename R>
AberthResult<R> aberth(const std::vector<C<R>>& c, std::vector<C<R>> z, int max_iter) {
    const int n = static_cast<int>(z.size());
    std::vector<bool> done(n, false);
    std::vector<R> err(n, std::numeric_limits<R>::infinity());
    const R eps = std::numeric_limits<R>::epsilon();
    for (int iter = 0; iter < max_iter; ++iter) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            const C<R> ratio = newton_ratio(c, z[i]);
            C<R> sum = 0;
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    const C<R> diff = z[i] - z[j];
                    if (diff != C<R>(0)) sum += R(1) / diff;
                }
            }
            const C<R> denom = R(1) - ratio * sum;
            const C<R> step = denom == C<R>(0) ? ratio : ratio / denom;
            z[i] -= step;
            const R size = mag(step), scale = std::max(R(1), mag(z[i]));
            err[i] = size <= R(1e-6) * scale ? backward_error_t(c, z[i]) : std::numeric_limits<R>::infinity();
            if (size <= R(4) * eps * scale || (size <= R(1e-6) * scale && err[i] <= R(2) * eps)) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if (all_done) break;
    }
    // Newton polishing; a step is kept only when it does not increase the
    // backward error (multiple roots stall here, which is fine).
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(err[i])) err[i] = backward_error_t(c, z[i]);
        for (int k = 0; k < 3 && err[i] > R(2) * eps; ++k) {
            const C<R> cand = z[i] - newton_ratio(c, z[i]);
            const R e = backward_error_t(c, cand);
            if (e >= err[i]) break;
            z[i] = cand;
            err[i] = e;
        }
    }
    return {std::move(z), std::move(err)};
}

std::string describe(std::span<const cplx> coeffs) {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k) os << ", ";
        os << coeffs[k];
    }
    os << "]";
    return os.str();
}

}  // namespace

double backward_error(std::span<const cplx> coeffs, cplx z) {
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == cplx(0)) c.pop_back();
    if (c.empty()) return 0.0;
    return backward_error_t<double>(c, z);
}

std::vector<cplx> polynomial_roots(std::span<const cplx> coeffs, double residual_tol) {
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == cplx(0)) c.pop_back();
    if (c.empty()) throw NumericalError("polynomial_roots: zero polynomial has no finite root set");
    for (const auto& v : c) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericalError("polynomial_roots: non-finite coefficient in " + describe(coeffs));
        }
    }
    std::vector<cplx> roots;
    // exact roots at zero
    std::size_t low = 0;
    while (low < c.size() && c[low] == cplx(0)) ++low;
    roots.assign(low, cplx(0));
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }

    auto [z, err] = aberth<double>(c, newton_polygon_start<double>(c), 500);
    bool ok = std::all_of(err.begin(), err.end(), [&](double e) { return e < residual_tol; });
    if (!ok) {
        // extended-precision escalation, warm-started from the double result
        std::vector<C<long double>> cl(c.begin(), c.end());
        std::vector<C<long double>> zl(z.begin(), z.end());
        for (auto& v : zl) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) zl = newton_polygon_start<long double>(cl);
        }
        const auto refined = aberth<long double>(cl, zl, 1000);
        ok = true;
        for (std::size_t i = 0; i < refined.roots.size(); ++i) {
            z[i] = cplx(static_cast<double>(refined.roots[i].real()), static_cast<double>(refined.roots[i].imag()));
            if (!(refined.errors[i] < residual_tol)) ok = false;
        }
        if (!ok) {
            throw NumericalError("polynomial_roots: root certification failed (residual >= " +
                                 std::to_string(residual_tol) + ") for polynomial " + describe(coeffs));
        }
    }
    roots.insert(roots.end(), z.begin(), z.end());
    return roots;
}

std::vector<RiemannPoint> projective_roots(std::span<const cplx> coeffs, int formal_degree, double residual_tol) {
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    while (!c.empty() && c.back() == cplx(0)) c.pop_back();
    if (c.empty()) throw NumericalError("projective_roots: identically zero polynomial");
    const int degree = static_cast<int>(c.size()) - 1;
    if (degree > formal_degree) throw PreconditionError("projective_roots: degree exceeds formal degree");
    std::vector<RiemannPoint> out;
    for (const auto& r : polynomial_roots(c, residual_tol)) out.emplace_back(r);
    for (int k = degree; k < formal_degree; ++k) out.push_back(RiemannPoint::infinity());
    return out;
}

}  // namespace ratdyn
