#include "ratdyn/poly.hpp"

#include <sstream>

#include "ratdyn/errors.hpp"

namespace ratdyn {

Poly::Poly(FieldPtr ctx, std::vector<FieldElement> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    for (const auto& c : c_) {
        if (!c.context()->same_field(*ctx_)) throw ContextMismatchError("Poly: coefficient from another field");
    }
    trim();
}

Poly::Poly(FieldPtr ctx, const std::vector<Q>& rational_coeffs) : ctx_(std::move(ctx)) {
    c_.reserve(rational_coeffs.size());
    for (const auto& q : rational_coeffs) c_.emplace_back(ctx_, q);
    trim();
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.context(), std::vector<FieldElement>{c}); }

Poly Poly::monomial(const FieldElement& c, int degree) {
    std::vector<FieldElement> v(static_cast<std::size_t>(degree) + 1, FieldElement(c.context()));
    v.back() = c;
    return Poly(c.context(), std::move(v));
}

Poly Poly::x(FieldPtr ctx) { return monomial(FieldElement(ctx, Q(1)), 1); }

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void Poly::check_same(const Poly& o) const {
    if (ctx_ != o.ctx_ && !ctx_->same_field(*o.ctx_)) {
        throw ContextMismatchError("polynomials over different coefficient fields were combined");
    }
}

FieldElement Poly::coeff(int k) const {
    if (k < 0 || k > degree()) return FieldElement(ctx_);
    return c_[static_cast<std::size_t>(k)];
}

FieldElement Poly::leading() const { return is_zero() ? FieldElement(ctx_) : c_.back(); }

Poly& Poly::operator+=(const Poly& o) {
    check_same(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement(ctx_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    check_same(o);
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), FieldElement(ctx_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, FieldElement(a.ctx_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            r.c_[i + j] += a.c_[i] * b.c_[j];
        }
    }
    r.trim();
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const FieldElement& s) {
    for (auto& c : c_) c *= s;
    trim();
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    a.check_same(b);
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
}

Poly Poly::derivative() const {
    Poly r(ctx_);
    for (std::size_t k = 1; k < c_.size(); ++k) r.c_.push_back(c_[k] * Q(static_cast<long>(k)));
    r.trim();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inverse();
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(FieldElement(ctx_, Q(1)));
    Poly base = *this;
    while (n) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n) base *= base;
    }
    return result;
}

FieldElement Poly::eval(const FieldElement& x) const {
    FieldElement acc(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

FieldElement Poly::eval_homogeneous(const FieldElement& X, const FieldElement& Y, int n) const {
    // sum c_k X^k Y^{n-k}
    FieldElement acc(ctx_);
    FieldElement ypow(ctx_, Q(1));
    std::vector<FieldElement> ypows;
    ypows.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        ypows.push_back(ypow);
        ypow *= Y;
    }
    FieldElement xpow(ctx_, Q(1));
    for (int k = 0; k <= degree(); ++k) {
        if (!c_[static_cast<std::size_t>(k)].is_zero()) acc += c_[static_cast<std::size_t>(k)] * xpow * ypows[static_cast<std::size_t>(n - k)];
        xpow *= X;
    }
    return acc;
}

Poly Poly::compose(const Poly& q) const {
    check_same(q);
    Poly acc(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * q;
        acc += constant(*it);
    }
    return acc;
}

Poly Poly::reversed(int n) const {
    if (degree() > n) throw PreconditionError("Poly::reversed: formal degree below actual degree");
    std::vector<FieldElement> v(static_cast<std::size_t>(n) + 1, FieldElement(ctx_));
    for (int k = 0; k <= degree(); ++k) v[static_cast<std::size_t>(n - k)] = c_[static_cast<std::size_t>(k)];
    return Poly(ctx_, std::move(v));
}

std::vector<std::complex<double>> Poly::to_complex() const {
    std::vector<std::complex<double>> out;
    out.reserve(c_.size());
    for (const auto& c : c_) out.push_back(c.to_complex());
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw PreconditionError("divmod: division by the zero polynomial");
    const auto& ctx = a.context();
    Poly rem = a;
    std::vector<FieldElement> quo;
    if (rem.degree() >= b.degree()) quo.assign(static_cast<std::size_t>(rem.degree() - b.degree() + 1), FieldElement(ctx));
    const FieldElement inv_lead = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const int shift = rem.degree() - b.degree();
        const FieldElement coef = rem.leading() * inv_lead;
        quo[static_cast<std::size_t>(shift)] = coef;
        rem -= Poly::monomial(coef, shift) * b;
    }
    return {Poly(ctx, std::move(quo)), rem};
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = divmod(r0, r1).second;
        r0 = std::move(r1);
        r1 = r2.monic();
    }
    return r0.monic();
}

std::vector<Poly> square_free_decomposition(const Poly& p) {
    if (p.is_zero()) throw PreconditionError("square_free_decomposition: zero polynomial");
    std::vector<Poly> out;
    const Poly f = p.monic();
    if (f.degree() == 0) return out;
    const Poly df = f.derivative();
    Poly a = poly_gcd(f, df);
    Poly b = divmod(f, a).first;
    Poly c = divmod(df, a).first;
    Poly d = c - b.derivative();
    while (b.degree() > 0) {
        Poly g = poly_gcd(b, d);
        out.push_back(g);
        Poly b_next = divmod(b, g).first;
        c = divmod(d, g).first;
        b = std::move(b_next);
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

std::string to_string(const Poly& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        const FieldElement& c = p.coeffs()[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string cs;
        if (c.is_rational()) {
            const Q q = c.coords()[0];
            const Q a = abs(q);
            if (!first) os << (q < 0 ? " - " : " + ");
            else if (q < 0) os << "-";
            if (a != 1 || k == 0) cs = a.get_str();
        } else {
            if (!first) os << " + ";
            cs = to_string(c);
        }
        first = false;
        os << cs;
        if (k > 0) {
            if (!cs.empty()) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

}  // namespace ratdyn
