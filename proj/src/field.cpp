#include "ratdyn/field.hpp"

#include <algorithm>
#include <sstream>

#include "ratdyn/errors.hpp"
#include "ratdyn/roots.hpp"

namespace ratdyn {
namespace {

using QPoly = std::vector<Q>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Q(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// a = q*b + r
void qdivmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem) {
    rem = a;
    trim(rem);
    quo.clear();
    if (rem.size() < b.size()) return;
    quo.assign(rem.size() - b.size() + 1, Q(0));
    const Q lead = b.back();
    while (!rem.empty() && rem.size() >= b.size()) {
        const std::size_t shift = rem.size() - b.size();
        const Q coef = rem.back() / lead;
        quo[shift] = coef;
        for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] -= coef * b[j];
        rem.pop_back();
        trim(rem);
    }
    trim(quo);
}

Q qeval(const QPoly& p, const Q& x) {
    Q acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// p(y + s)
QPoly taylor_shift(const QPoly& p, const Q& s) {
    QPoly acc;
    const QPoly lin{s, Q(1)};
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = qmul(acc, lin);
        if (acc.empty()) acc.push_back(Q(0));
        acc[0] += *it;
        trim(acc);
    }
    return acc;
}

std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class m = n;
    for (mpz_class p = 2; p * p <= m; ++p) {
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        if (e) factors.emplace_back(p, e);
    }
    if (m > 1) factors.emplace_back(m, 1);
    std::vector<mpz_class> divs{1};
    for (const auto& [p, e] : factors) {
        const std::size_t count = divs.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

// Rational roots via the rational root theorem on the integer-scaled polynomial.
std::vector<Q> rational_roots(QPoly p) {
    trim(p);
    std::vector<Q> roots;
    if (p.size() <= 1) return roots;
    while (!p.empty() && p.front() == 0) {
        roots.push_back(Q(0));
        p.erase(p.begin());
    }
    if (p.size() <= 1) return roots;
    mpz_class lcm_den = 1;
    for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& c : p) ints.push_back(mpz_class(c * lcm_den));
    const auto num_divs = positive_divisors(ints.front());
    const auto den_divs = positive_divisors(ints.back());
    for (const auto& a : num_divs) {
        for (const auto& b : den_divs) {
            for (int sign : {1, -1}) {
                Q cand(a * sign, b);
                cand.canonicalize();
                if (qeval(p, cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) {
                    roots.push_back(cand);
                }
            }
        }
    }
    return roots;
}

// Monic quartic without rational roots: reducible iff it splits into two
// rational quadratics, decided with the resolvent cubic of the depressed form.
bool quartic_splits_into_quadratics(const QPoly& f) {
    const Q a = f[3];
    QPoly g = taylor_shift(f, -a / 4);  // y^4 + p y^2 + q y + r
    g.resize(5, Q(0));
    const Q p = g[2], q = g[1], r = g[0];
    if (q == 0 && is_rational_square(p * p - 4 * r)) return true;
    const QPoly resolvent{-q * q, p * p - 4 * r, 2 * p, Q(1)};
    for (const auto& u2 : rational_roots(resolvent)) {
        if (u2 != 0 && is_rational_square(u2)) return true;
    }
    return false;
}

std::vector<std::vector<Q>> make_reduction_table(const QPoly& mp) {
    const int m = static_cast<int>(mp.size()) - 1;
    std::vector<std::vector<Q>> table;
    if (m <= 1) return table;
    std::vector<Q> cur(m);
    for (int j = 0; j < m; ++j) cur[j] = -mp[j];  // alpha^m
    table.push_back(cur);
    for (int k = m + 1; k <= 2 * m - 2; ++k) {
        std::vector<Q> next(m, Q(0));
        const Q top = cur[m - 1];
        for (int j = m - 1; j >= 1; --j) next[j] = cur[j - 1];
        for (int j = 0; j < m; ++j) next[j] -= top * mp[j];
        cur = next;
        table.push_back(cur);
    }
    return table;
}

}  // namespace

bool irreducible_over_q(const std::vector<Q>& poly) {
    QPoly p = poly;
    trim(p);
    const int deg = static_cast<int>(p.size()) - 1;
    if (deg < 1 || deg > 4) throw PreconditionError("irreducible_over_q: only degrees 1..4 are decided");
    if (deg == 1) return true;
    if (!rational_roots(p).empty()) return false;
    if (deg <= 3) return true;
    QPoly monic = p;
    for (auto& c : monic) c /= p.back();
    return !quartic_splits_into_quadratics(monic);
}

bool FieldContext::same_field(const FieldContext& other) const {
    return this == &other || minpoly_ == other.minpoly_;
}

FieldPtr FieldContext::rationals() {
    static const FieldPtr q = [] {
        auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
        ctx->minpoly_ = {Q(0), Q(1)};
        return FieldPtr(ctx);
    }();
    return q;
}

FieldPtr FieldContext::configure(std::vector<Q> minpoly) {
    trim(minpoly);
    const int deg = static_cast<int>(minpoly.size()) - 1;
    if (deg < 1) throw PreconditionError("field_configure: minimal polynomial must have degree >= 2");
    if (minpoly.back() != 1) throw PreconditionError("field_configure: minimal polynomial must be monic");
    if (deg == 1) {
        throw PreconditionError(
            "field_configure: a degree-1 minimal polynomial is degenerate; the rationals are the default field");
    }
    if (deg > kMaxDegree) {
        throw PreconditionError("field_configure: extension degree " + std::to_string(deg) + " exceeds the cap of " +
                                std::to_string(kMaxDegree));
    }
    bool trusted = false;
    if (deg <= 4) {
        if (!irreducible_over_q(minpoly)) {
            const auto rr = rational_roots(minpoly);
            std::string why = rr.empty() ? "it factors into two rational quadratics"
                                         : "it has the rational root " + to_string(rr.front());
            throw PreconditionError("field_configure: minimal polynomial is reducible over Q: " + why);
        }
    } else {
        trusted = true;
    }
    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->minpoly_ = minpoly;
    ctx->trusted_ = trusted;
    ctx->reduction_ = make_reduction_table(minpoly);

    std::vector<cplx> c;
    for (const auto& v : minpoly) c.emplace_back(v.get_d());
    const auto roots = polynomial_roots(c, 1e-12);
    cplx best = roots.front();
    bool have = false;
    for (const auto& r : roots) {
        if (r.imag() < -1e-12) continue;
        if (!have || r.real() > best.real() + 1e-9 ||
            (std::abs(r.real() - best.real()) <= 1e-9 && r.imag() > best.imag())) {
            best = r;
            have = true;
        }
    }
    // polish in extended precision
    std::complex<long double> z(best.real(), best.imag());
    for (int it = 0; it < 4; ++it) {
        std::complex<long double> p = 0, dp = 0;
        for (auto k = minpoly.size(); k-- > 0;) {
            dp = dp * z + p;
            p = p * z + static_cast<long double>(minpoly[k].get_d());
        }
        if (dp == std::complex<long double>(0)) break;
        z -= p / dp;
    }
    ctx->embedding_ld_ = z;
    ctx->embedding_ = cplx(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return ctx;
}

FieldPtr FieldContext::eisenstein() {
    static const FieldPtr f = configure({Q(1), Q(1), Q(1)});
    return f;
}

FieldPtr FieldContext::gaussian() {
    static const FieldPtr f = configure({Q(1), Q(0), Q(1)});
    return f;
}

FieldPtr FieldContext::cyclotomic12() {
    static const FieldPtr f = configure({Q(1), Q(0), Q(-1), Q(0), Q(1)});
    return f;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr ctx) : ctx_(std::move(ctx)) {
    c_.assign(static_cast<std::size_t>(ctx_->degree()), Q(0));
}

FieldElement::FieldElement(FieldPtr ctx, const Q& value) : FieldElement(std::move(ctx)) { c_[0] = value; }

FieldElement::FieldElement(FieldPtr ctx, std::vector<Q> coords) : ctx_(std::move(ctx)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != ctx_->degree()) {
        throw PreconditionError("FieldElement: expected " + std::to_string(ctx_->degree()) + " coordinates, got " +
                                std::to_string(c_.size()));
    }
}

FieldElement FieldElement::generator(FieldPtr ctx) {
    FieldElement g(ctx);
    if (ctx->degree() == 1) {
        g.c_[0] = -ctx->minpoly()[0];
    } else {
        g.c_[1] = 1;
    }
    return g;
}

bool FieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Q& q) { return q == 0; });
}

bool FieldElement::is_one() const {
    if (c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](const Q& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Q& q) { return q == 0; });
}

void FieldElement::check_same(const FieldElement& o) const {
    if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_)) {
        throw ContextMismatchError("field elements from different coefficient fields were combined");
    }
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const Q& q) {
    for (auto& v : c_) v *= q;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    const std::size_t m = c_.size();
    if (m == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Q> conv(2 * m - 1, Q(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (o.c_[j] != 0) conv[i + j] += c_[i] * o.c_[j];
        }
    }
    const auto& table = ctx_->reduction_table();
    for (std::size_t k = m; k < conv.size(); ++k) {
        if (conv[k] == 0) continue;
        const auto& row = table[k - m];
        for (std::size_t j = 0; j < m; ++j) conv[j] += conv[k] * row[j];
    }
    conv.resize(m);
    c_ = std::move(conv);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw PreconditionError("FieldElement::inverse: division by zero");
    if (c_.size() == 1) return FieldElement(ctx_, Q(1) / c_[0]);
    // extended Euclid in Q[t]: s*a + t*minpoly = 1
    QPoly a = c_;
    trim(a);
    QPoly r0 = ctx_->minpoly(), r1 = a;
    QPoly s0{}, s1{Q(1)};
    while (!r1.empty()) {
        QPoly quo, rem;
        qdivmod(r0, r1, quo, rem);
        QPoly s2 = qsub(s0, qmul(quo, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant (minpoly irreducible)
    if (r0.size() != 1) throw PreconditionError("FieldElement::inverse: minimal polynomial is not irreducible");
    std::vector<Q> coords(c_.size(), Q(0));
    QPoly quo, rem;
    qdivmod(s0, ctx_->minpoly(), quo, rem);
    for (std::size_t i = 0; i < rem.size(); ++i) coords[i] = rem[i] / r0[0];
    return FieldElement(ctx_, std::move(coords));
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same(o);
    return *this *= o.inverse();
}

FieldElement FieldElement::pow(unsigned n) const {
    FieldElement result(ctx_, Q(1));
    FieldElement base = *this;
    while (n) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return result;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    return a.c_ == b.c_;
}

std::complex<double> FieldElement::to_complex() const {
    if (c_.size() == 1) return {c_[0].get_d(), 0.0};
    const auto z = to_complex_ld();
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

std::complex<long double> FieldElement::to_complex_ld() const {
    const auto alpha = ctx_->embedding_ld();
    std::complex<long double> acc = 0;
    for (auto k = c_.size(); k-- > 0;) acc = acc * alpha + static_cast<long double>(c_[k].get_d());
    return acc;
}

std::string to_string(const FieldElement& x) {
    if (x.coords().size() == 1) return to_string(x.coords()[0]);
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (std::size_t k = 0; k < x.coords().size(); ++k) {
        const Q& c = x.coords()[k];
        if (c == 0) continue;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        const Q a = abs(c);
        if (k == 0) os << a.get_str();
        else {
            if (a != 1) os << a.get_str() << "*";
            os << "alpha";
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    os << ")";
    return os.str();
}

std::optional<FieldElement> recognize(const FieldPtr& ctx, std::complex<double> v, long max_den, double tol) {
    const double scale = std::max(1.0, std::abs(v));
    if (std::abs(v.imag()) <= tol * scale) {
        const auto q = rationalize(v.real(), max_den, tol);
        if (!q) return std::nullopt;
        return FieldElement(ctx, *q);
    }
    FieldElement beta = FieldElement(ctx, Q(1));
    const FieldElement alpha = FieldElement::generator(ctx);
    for (int k = 1; k < ctx->degree(); ++k) {
        beta *= alpha;
        const auto b = beta.to_complex();
        if (std::abs(b.imag()) < 1e-9) continue;
        const auto q1 = rationalize(v.imag() / b.imag(), max_den, tol);
        if (!q1) continue;
        const auto q0 = rationalize(v.real() - q1->get_d() * b.real(), max_den, tol);
        if (!q0) continue;
        FieldElement e = beta * *q1 + FieldElement(ctx, *q0);
        if (std::abs(e.to_complex() - v) <= tol * scale) return e;
    }
    return std::nullopt;
}

}  // namespace ratdyn
