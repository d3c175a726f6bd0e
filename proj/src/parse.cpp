#include "ratdyn/parse.hpp"

#include <cctype>

#include "ratdyn/errors.hpp"

namespace ratdyn {

SymbolTable default_symbols(const FieldPtr& ctx) {
    SymbolTable t;
    if (ctx->is_rationals()) return t;
    const FieldElement alpha = FieldElement::generator(ctx);
    t.emplace("alpha", alpha);
    if (ctx->same_field(*FieldContext::eisenstein())) {
        t.emplace("w", alpha);
    } else if (ctx->same_field(*FieldContext::gaussian())) {
        t.emplace("i", alpha);
    } else if (ctx->same_field(*FieldContext::cyclotomic12())) {
        t.emplace("zeta", alpha);
        t.emplace("i", alpha.pow(3));
        t.emplace("w", alpha.pow(4));
    }
    return t;
}

namespace {

// num/den, not reduced until the end.
struct Fraction {
    Poly num, den;
};

class Parser {
public:
    Parser(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols, bool allow_z)
        : s_(text), ctx_(ctx), sym_(symbols), allow_z_(allow_z) {}

    Fraction parse_all() {
        Fraction f = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("map expression: " + msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Fraction constant(const FieldElement& c) const {
        return {Poly::constant(c), Poly::constant(FieldElement(ctx_, Q(1)))};
    }

    static Fraction add(const Fraction& a, const Fraction& b, bool subtract) {
        Poly n = subtract ? a.num * b.den - b.num * a.den : a.num * b.den + b.num * a.den;
        return {std::move(n), a.den * b.den};
    }

    Fraction divide(const Fraction& a, const Fraction& b) const {
        if (b.num.is_zero()) fail("division by zero");
        return {a.num * b.den, a.den * b.num};
    }

    Fraction expr() {
        Fraction acc = term();
        for (;;) {
            const char c = peek();
            if (c != '+' && c != '-') return acc;
            ++pos_;
            acc = add(acc, term(), c == '-');
        }
    }

    static bool starts_atom(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(' ||
               c == '.' || c == '_';
    }

    Fraction term() {
        Fraction acc = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                Fraction r = unary();
                acc = {acc.num * r.num, acc.den * r.den};
            } else if (c == '/') {
                ++pos_;
                acc = divide(acc, unary());
            } else if (starts_atom(c)) {
                Fraction r = power();
                acc = {acc.num * r.num, acc.den * r.den};
            } else {
                return acc;
            }
        }
    }

    Fraction unary() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            Fraction f = unary();
            return {-f.num, f.den};
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Fraction power() {
        Fraction base = atom();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        bool negative = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer exponent");
        if (pos_ - start > 4) fail("exponent too large");
        const unsigned n = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
        Fraction r{base.num.pow(n), base.den.pow(n)};
        if (negative) {
            if (r.num.is_zero()) fail("zero raised to a negative power");
            std::swap(r.num, r.den);
        }
        return r;
    }

    Fraction atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Fraction f = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            try {
                return constant(FieldElement(ctx_, parse_rational(s_.substr(start, pos_ - start))));
            } catch (const ParseError&) {
                pos_ = start;
                fail("malformed number");
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            if (name == "z") {
                if (!allow_z_) {
                    pos_ = start;
                    fail("the variable z is not allowed in a constant");
                }
                return {Poly::x(ctx_), Poly::constant(FieldElement(ctx_, Q(1)))};
            }
            const auto it = sym_.find(name);
            if (it == sym_.end()) {
                pos_ = start;
                fail("unknown symbol '" + std::string(name) + "'");
            }
            if (!it->second.context()->same_field(*ctx_)) {
                pos_ = start;
                fail("symbol '" + std::string(name) + "' belongs to another field");
            }
            return constant(it->second);
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    FieldPtr ctx_;
    const SymbolTable& sym_;
    bool allow_z_;
};

}  // namespace

RationalMap parse_map(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols) {
    Fraction f = Parser(text, ctx, symbols, true).parse_all();
    if (f.num.degree() < 1 && f.den.degree() < 1) throw ParseError("map expression: constant, not a map of degree >= 1", 0);
    try {
        return RationalMap(std::move(f.num), std::move(f.den));
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("map expression: ") + e.what(), 0);
    }
}

FieldElement parse_scalar(std::string_view text, const FieldPtr& ctx, const SymbolTable& symbols) {
    const Fraction f = Parser(text, ctx, symbols, false).parse_all();
    return f.num.coeff(0) / f.den.coeff(0);
}

FieldPtr parse_field(std::string_view text) {
    std::string t;
    for (const char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    }
    if (t == "Q" || t == "rationals") return FieldContext::rationals();
    if (t == "Q(w)" || t == "eisenstein") return FieldContext::eisenstein();
    if (t == "Q(i)" || t == "gaussian") return FieldContext::gaussian();
    if (t == "Q(zeta12)" || t == "cyclotomic12") return FieldContext::cyclotomic12();
    std::string as_z(text);
    for (std::size_t pos; (pos = as_z.find("alpha")) != std::string::npos;) as_z.replace(pos, 5, "z    ");
    const Fraction f = Parser(as_z, FieldContext::rationals(), SymbolTable{}, true).parse_all();
    if (f.den.degree() != 0 || f.num.degree() < 1) {
        throw ParseError("field: expected a field name or a nonconstant polynomial in alpha", 0);
    }
    const Poly p = f.num.monic();
    if (p.degree() == 1) return FieldContext::rationals();
    std::vector<Q> coeffs;
    for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(p.coeff(k).coords()[0]);
    return FieldContext::configure(std::move(coeffs));
}

std::string field_name(const FieldPtr& ctx) {
    if (ctx->is_rationals()) return "Q";
    if (ctx->same_field(*FieldContext::eisenstein())) return "Q(w)";
    if (ctx->same_field(*FieldContext::gaussian())) return "Q(i)";
    if (ctx->same_field(*FieldContext::cyclotomic12())) return "Q(zeta12)";
    std::vector<FieldElement> c;
    for (const Q& q : ctx->minpoly()) c.emplace_back(FieldContext::rationals(), q);
    return to_string(Poly(FieldContext::rationals(), c), "alpha");
}

}  // namespace ratdyn
