#include "ratdyn/rational_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ratdyn/errors.hpp"
#include "ratdyn/roots.hpp"

namespace ratdyn {

// ---------------------------------------------------------------- ProjPoint

ProjPoint ProjPoint::finite(const FieldElement& z) { return {z, FieldElement(z.context(), Q(1))}; }

ProjPoint ProjPoint::infinity(const FieldPtr& ctx) { return {FieldElement(ctx, Q(1)), FieldElement(ctx)}; }

bool ProjPoint::same_as(const ProjPoint& o) const { return x * o.y == o.x * y; }

RiemannPoint ProjPoint::to_riemann() const {
    if (is_infinity()) return RiemannPoint::infinity();
    return RiemannPoint((x / y).to_complex());
}

// ---------------------------------------------------------------- Moebius

Moebius::Moebius(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if ((a_ * d_ - b_ * c_).is_zero()) throw PreconditionError("Moebius: determinant ad - bc vanishes");
    FieldElement pivot = !a_.is_zero() ? a_ : !b_.is_zero() ? b_ : c_;
    if (!pivot.is_one()) {
        const FieldElement inv = pivot.inverse();
        a_ *= inv;
        b_ *= inv;
        c_ *= inv;
        d_ *= inv;
    }
}

Moebius Moebius::identity(const FieldPtr& ctx) {
    return Moebius(FieldElement(ctx, Q(1)), FieldElement(ctx), FieldElement(ctx), FieldElement(ctx, Q(1)));
}

bool Moebius::is_identity() const { return b_.is_zero() && c_.is_zero() && a_ == d_; }

Moebius Moebius::inverse() const { return Moebius(d_, -b_, -c_, a_); }

RationalMap Moebius::as_map() const {
    const auto& ctx = context();
    return RationalMap(Poly(ctx, std::vector<FieldElement>{b_, a_}), Poly(ctx, std::vector<FieldElement>{d_, c_}));
}

ProjPoint Moebius::apply(const ProjPoint& p) const { return {a_ * p.x + b_ * p.y, c_ * p.x + d_ * p.y}; }

RiemannPoint Moebius::apply(const RiemannPoint& p) const {
    const cplx a = a_.to_complex(), b = b_.to_complex(), c = c_.to_complex(), d = d_.to_complex();
    cplx num, den;
    if (p.infinite) {
        num = a;
        den = c;
    } else {
        num = a * p.z + b;
        den = c * p.z + d;
    }
    if (den == cplx(0.0, 0.0)) return RiemannPoint::infinity();
    return RiemannPoint(num / den);
}

Moebius operator*(const Moebius& s, const Moebius& t) {
    return Moebius(s.a_ * t.a_ + s.b_ * t.c_, s.a_ * t.b_ + s.b_ * t.d_, s.c_ * t.a_ + s.d_ * t.c_,
                   s.c_ * t.b_ + s.d_ * t.d_);
}

bool operator==(const Moebius& s, const Moebius& t) {
    return s.a_ == t.a_ && s.b_ == t.b_ && s.c_ == t.c_ && s.d_ == t.d_;
}

std::string to_string(const Moebius& m) {
    return to_string(m.as_map());
}

// ---------------------------------------------------------------- RationalMap

RationalMap::RationalMap(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (!num_.context()->same_field(*den_.context())) throw ContextMismatchError("RationalMap: num and den over different fields");
    if (den_.is_zero()) throw PreconditionError("RationalMap: zero denominator");
    const Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
    }
    if (degree() < 1) throw PreconditionError("RationalMap: constant map (degree 0)");
    normalize();
}

RationalMap RationalMap::from_coprime(Poly num, Poly den) {
    RationalMap f;
    f.num_ = std::move(num);
    f.den_ = std::move(den);
    if (f.den_.is_zero() || f.degree() < 1) throw PreconditionError("RationalMap: degenerate composite");
    f.normalize();
    return f;
}

void RationalMap::normalize() {
    const FieldElement lead = den_.leading();
    if (lead.is_one()) return;
    const FieldElement inv = lead.inverse();
    num_ *= inv;
    den_ *= inv;
}

RationalMap RationalMap::identity(const FieldPtr& ctx) { return power(ctx, 1); }

RationalMap RationalMap::power(const FieldPtr& ctx, int d) {
    if (d < 1) throw PreconditionError("RationalMap::power: exponent must be >= 1");
    return from_coprime(Poly::monomial(FieldElement(ctx, Q(1)), d), Poly::constant(FieldElement(ctx, Q(1))));
}

ProjPoint RationalMap::apply(const ProjPoint& p) const {
    const int d = degree();
    return {num_.eval_homogeneous(p.x, p.y, d), den_.eval_homogeneous(p.x, p.y, d)};
}

std::string to_string(const RationalMap& f) {
    if (f.den().degree() == 0 && f.den().leading().is_one()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

// ---------------------------------------------------------------- numerics

NumericMap::NumericMap(const RationalMap& f) : num(f.num().to_complex()), den(f.den().to_complex()), degree(f.degree()) {
    num.resize(static_cast<std::size_t>(degree) + 1, cplx(0.0, 0.0));
    den.resize(static_cast<std::size_t>(degree) + 1, cplx(0.0, 0.0));
}

namespace {

// Returns (N, D) with f(z) = N/D; for |z| > 1 both are scaled by z^{-d}.
std::pair<cplx, cplx> eval_pair(const NumericMap& m, const RiemannPoint& z) {
    cplx N(0.0, 0.0), D(0.0, 0.0);
    if (!z.infinite && std::abs(z.z) <= 1.0) {
        for (int k = m.degree; k >= 0; --k) {
            N = N * z.z + m.num[static_cast<std::size_t>(k)];
            D = D * z.z + m.den[static_cast<std::size_t>(k)];
        }
    } else {
        const cplx w = z.infinite ? cplx(0.0, 0.0) : 1.0 / z.z;
        for (int k = 0; k <= m.degree; ++k) {
            N = N * w + m.num[static_cast<std::size_t>(k)];
            D = D * w + m.den[static_cast<std::size_t>(k)];
        }
    }
    return {N, D};
}

RiemannPoint ratio(cplx N, cplx D) {
    if (D == cplx(0.0, 0.0)) return RiemannPoint::infinity();
    const cplx v = N / D;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return RiemannPoint::infinity();
    return RiemannPoint(v);
}

// Exact value of p at the Gaussian rational re + i*im, coordinate by
// coordinate in the power basis of the coefficient field; only the final
// combination with the embedding of alpha is done in floating point.
std::complex<long double> eval_gaussian(const Poly& p, const Q& re, const Q& im) {
    const auto& ctx = p.context();
    const int m = ctx->degree();
    std::vector<Q> sum_re(static_cast<std::size_t>(m)), sum_im(static_cast<std::size_t>(m));
    Q pr = 1, pi = 0;
    for (int k = 0; k <= p.degree(); ++k) {
        const auto& c = p.coeffs()[static_cast<std::size_t>(k)].coords();
        for (int j = 0; j < m; ++j) {
            sum_re[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j)] * pr;
            sum_im[static_cast<std::size_t>(j)] += c[static_cast<std::size_t>(j)] * pi;
        }
        const Q nr = pr * re - pi * im;
        pi = pr * im + pi * re;
        pr = nr;
    }
    const std::complex<long double> alpha = ctx->embedding_ld();
    std::complex<long double> acc = 0, apow = 1;
    for (int j = 0; j < m; ++j) {
        acc += apow * std::complex<long double>(sum_re[static_cast<std::size_t>(j)].get_d(),
                                                 sum_im[static_cast<std::size_t>(j)].get_d());
        apow *= alpha;
    }
    return acc;
}

}  // namespace

RiemannPoint NumericMap::eval(const RiemannPoint& z) const {
    const auto [N, D] = eval_pair(*this, z);
    return ratio(N, D);
}

std::vector<cplx> NumericMap::preimage_poly(const RiemannPoint& w) const {
    if (w.infinite) return den;
    std::vector<cplx> out(num.size());
    for (std::size_t k = 0; k < num.size(); ++k) out[k] = num[k] - w.z * den[k];
    return out;
}

RiemannPoint evaluate(const RationalMap& f, const RiemannPoint& z) {
    const NumericMap m(f);
    const auto [N, D] = eval_pair(m, z);
    // scale of the terms entering N and D
    double scale = 0.0;
    const double r = z.infinite ? 0.0 : std::abs(z.z);
    const bool inner = !z.infinite && r <= 1.0;
    const double t = inner ? r : (z.infinite ? 0.0 : 1.0 / r);
    double tp = 1.0;
    for (int k = 0; k <= m.degree; ++k) {
        const auto idx = static_cast<std::size_t>(inner ? k : m.degree - k);
        scale += (std::abs(m.num[idx]) + std::abs(m.den[idx])) * tp;
        tp *= t;
    }
    if (std::abs(N) + std::abs(D) > 1e-10 * scale) return ratio(N, D);

    const auto re = rationalize(z.z.real(), 1000000000L, 1e-15);
    const auto im = rationalize(z.z.imag(), 1000000000L, 1e-15);
    if (!re || !im) return ratio(N, D);
    const auto Ne = eval_gaussian(f.num(), *re, *im);
    const auto De = eval_gaussian(f.den(), *re, *im);
    if (De == std::complex<long double>(0, 0)) return RiemannPoint::infinity();
    const auto v = Ne / De;
    return RiemannPoint(cplx(static_cast<double>(v.real()), static_cast<double>(v.imag())));
}

// ---------------------------------------------------------------- exact algebra

RationalMap compose(const RationalMap& f, const RationalMap& g) {
    if (!f.context()->same_field(*g.context())) throw ContextMismatchError("compose: maps over different fields");
    const int d = f.degree();
    const Poly& p = g.num();
    const Poly& q = g.den();
    std::vector<Poly> qpow;
    qpow.reserve(static_cast<std::size_t>(d) + 1);
    qpow.push_back(Poly::constant(FieldElement(f.context(), Q(1))));
    for (int k = 1; k <= d; ++k) qpow.push_back(qpow.back() * q);
    // homogeneous Horner: sum_k a_k p^k q^{d-k}
    auto homogenize = [&](const Poly& a) {
        Poly acc = Poly::constant(a.coeff(d));
        for (int k = d - 1; k >= 0; --k) {
            acc = acc * p;
            const FieldElement c = a.coeff(k);
            if (!c.is_zero()) acc += qpow[static_cast<std::size_t>(d - k)] * c;
        }
        return acc;
    };
    // f = a/b coprime and g = p/q coprime make the composite coprime.
    return RationalMap::from_coprime(homogenize(f.num()), homogenize(f.den()));
}

RationalMap iterate(const RationalMap& f, int n, long degree_budget) {
    if (n < 1) throw PreconditionError("iterate: n must be >= 1");
    long deg = 1;
    for (int k = 0; k < n; ++k) {
        if (deg > degree_budget / f.degree()) {
            throw BudgetError("iterate: degree " + std::to_string(f.degree()) + "^" + std::to_string(n) +
                              " exceeds the composite-degree budget of " + std::to_string(degree_budget));
        }
        deg *= f.degree();
    }
    RationalMap result = f;
    for (int k = 1; k < n; ++k) result = compose(f, result);
    return result;
}

bool maps_equal(const RationalMap& f, const RationalMap& g) {
    if (!f.context()->same_field(*g.context())) throw ContextMismatchError("maps_equal: maps over different fields");
    return f.num() == g.num() && f.den() == g.den();
}

Poly wronskian(const RationalMap& f) {
    return f.num().derivative() * f.den() - f.num() * f.den().derivative();
}

// ---------------------------------------------------------------- critical data

CriticalData critical_data(const RationalMap& f, double value_tol) {
    const int d = f.degree();
    if (d < 2) throw PreconditionError("critical_data: degree must be >= 2");
    const Poly W = wronskian(f);
    CriticalData out;

    std::vector<cplx> exact_roots;
    std::vector<int> exact_mult;
    if (W.degree() > 0) {
        const auto sf = square_free_decomposition(W);
        for (std::size_t k = 0; k < sf.size(); ++k) {
            if (sf[k].degree() < 1) continue;
            const auto coeffs = sf[k].to_complex();
            for (const cplx r : polynomial_roots(coeffs)) {
                exact_roots.push_back(r);
                exact_mult.push_back(static_cast<int>(k) + 1);
            }
        }
    }

    // Independent path: cluster the numeric roots of W itself.
    if (W.degree() > 0) {
        const auto wc = W.to_complex();
        std::vector<cplx> numeric = polynomial_roots(wc);
        std::vector<bool> used(numeric.size(), false);
        for (std::size_t i = 0; i < exact_roots.size(); ++i) {
            const cplx r = exact_roots[i];
            const int k = exact_mult[i];
            double sep = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < exact_roots.size(); ++j) {
                if (j != i) sep = std::min(sep, std::abs(exact_roots[j] - r));
            }
            double radius = std::max(1e-7, 100.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / k)) *
                            (1.0 + std::abs(r));
            radius = std::min(radius, sep / 3.0);
            int count = 0;
            for (std::size_t j = 0; j < numeric.size(); ++j) {
                if (!used[j] && std::abs(numeric[j] - r) <= radius) {
                    used[j] = true;
                    ++count;
                }
            }
            if (count != k) {
                throw ConsistencyError("critical_data: multiplicity cross-check failed for the Wronskian " +
                                       to_string(W) + " near " + std::to_string(r.real()) + "+" +
                                       std::to_string(r.imag()) + "i (exact " + std::to_string(k) +
                                       ", clustered " + std::to_string(count) + ")");
            }
        }
    }

    for (std::size_t i = 0; i < exact_roots.size(); ++i) out.points.push_back({RiemannPoint(exact_roots[i]), exact_mult[i]});
    const int at_infinity = 2 * d - 2 - W.degree();
    if (at_infinity > 0) out.points.push_back({RiemannPoint::infinity(), at_infinity});

    const NumericMap m(f);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        const RiemannPoint v = m.eval(out.points[i].point);
        auto it = std::find_if(out.values.begin(), out.values.end(),
                               [&](const CriticalValue& cv) { return chordal_distance(cv.value, v) < value_tol; });
        if (it == out.values.end()) {
            out.values.push_back({v, 0, false, {}});
            it = std::prev(out.values.end());
        }
        it->total_multiplicity += out.points[i].multiplicity;
        it->sources.push_back(static_cast<int>(i));
    }
    for (auto& cv : out.values) cv.simple = cv.total_multiplicity == 1;
    return out;
}

// ---------------------------------------------------------------- three-point fits

namespace {

// Matrix of the Moebius sending p1, p2, p3 to 0, infinity, 1.
template <typename P, typename E>
std::array<E, 4> to_standard(const std::array<P, 3>& p, auto&& lin) {
    // lin(p_i, p_j) = y_i x_j - x_i y_j vanishes iff p_i = p_j
    const E c = lin(p[1], p[2]);
    const E e = lin(p[0], p[2]);
    return {p[0].y * c, -p[0].x * c, p[1].y * e, -p[1].x * e};
}

}  // namespace

Moebius mobius_from_three_points(const std::array<ProjPoint, 3>& p, const std::array<ProjPoint, 3>& q) {
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if (p[static_cast<std::size_t>(i)].same_as(p[static_cast<std::size_t>(j)]) ||
                q[static_cast<std::size_t>(i)].same_as(q[static_cast<std::size_t>(j)])) {
                throw PreconditionError("mobius_from_three_points: points must be pairwise distinct");
            }
        }
    }
    auto lin = [](const ProjPoint& a, const ProjPoint& b) { return a.y * b.x - a.x * b.y; };
    const auto M = to_standard<ProjPoint, FieldElement>(p, lin);
    const auto N = to_standard<ProjPoint, FieldElement>(q, lin);
    // N^{-1} M with N^{-1} = adj(N)
    const Moebius mp(M[0], M[1], M[2], M[3]);
    const Moebius nq(N[0], N[1], N[2], N[3]);
    return nq.inverse() * mp;
}

std::array<cplx, 4> mobius_from_three_points(const std::array<RiemannPoint, 3>& p,
                                              const std::array<RiemannPoint, 3>& q) {
    struct H {
        cplx x, y;
    };
    auto hom = [](const RiemannPoint& r) { return r.infinite ? H{1.0, 0.0} : H{r.z, 1.0}; };
    auto lin = [](const H& a, const H& b) { return a.y * b.x - a.x * b.y; };
    const std::array<H, 3> ph{hom(p[0]), hom(p[1]), hom(p[2])};
    const std::array<H, 3> qh{hom(q[0]), hom(q[1]), hom(q[2])};
    const auto M = to_standard<H, cplx>(ph, lin);
    const auto N = to_standard<H, cplx>(qh, lin);
    // adj(N) * M
    const cplx a = N[3] * M[0] - N[1] * M[2];
    const cplx b = N[3] * M[1] - N[1] * M[3];
    const cplx c = -N[2] * M[0] + N[0] * M[2];
    const cplx d = -N[2] * M[1] + N[0] * M[3];
    return {a, b, c, d};
}

}  // namespace ratdyn
