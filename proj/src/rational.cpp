#include "ratdyn/rational.hpp"

#include <cmath>

#include "ratdyn/errors.hpp"

namespace ratdyn {

Q parse_rational(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> Q {
        throw ParseError("invalid rational '" + std::string(text) + "': " + msg, i);
    };
    while (i < text.size() && text[i] == ' ') ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
        if (text[i] == '.') {
            if (seen_dot) return fail("second decimal point");
            seen_dot = true;
        } else {
            digits.push_back(text[i]);
            if (seen_dot) ++frac_digits;
        }
        ++i;
    }
    if (digits.empty()) return fail("expected digits");
    mpz_class num(digits, 10);
    mpz_class den = 1;
    if (frac_digits > 0) mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    if (i < text.size() && text[i] == '/') {
        if (seen_dot) return fail("decimal numerator with '/'");
        ++i;
        std::string dd;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) dd.push_back(text[i++]);
        if (dd.empty()) return fail("expected denominator digits");
        den = mpz_class(dd, 10);
        if (den == 0) return fail("zero denominator");
    }
    while (i < text.size() && text[i] == ' ') ++i;
    if (i != text.size()) return fail("trailing characters");
    Q q(num, den);
    q.canonicalize();
    if (negative) q = -q;
    return q;
}

std::string to_string(const Q& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Q> rationalize(double value, long max_den, double tol) {
    if (!std::isfinite(value) || std::abs(value) > 1e15) return std::nullopt;
    // Convergents h/k of the continued fraction of value.
    mpz_class h_prev = 1, h = static_cast<long>(std::floor(value));
    mpz_class k_prev = 0, k = 1;
    double frac = value - std::floor(value);
    for (int iter = 0; iter < 64; ++iter) {
        double approx = mpq_class(h, k).get_d();
        if (std::abs(approx - value) <= tol * std::max(1.0, std::abs(value))) {
            Q q(h, k);
            q.canonicalize();
            return q;
        }
        if (frac < 1e-300) break;
        double inv = 1.0 / frac;
        if (inv > 1e15) break;
        double a = std::floor(inv);
        frac = inv - a;
        mpz_class ai = static_cast<long>(a);
        mpz_class h_next = ai * h + h_prev;
        mpz_class k_next = ai * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h; h = h_next;
        k_prev = k; k = k_next;
    }
    return std::nullopt;
}

bool is_rational_square(const Q& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

Q rational_sqrt(const Q& q) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    Q r(n, d);
    r.canonicalize();
    return r;
}

}  // namespace ratdyn
