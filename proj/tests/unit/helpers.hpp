#pragma once

#include <random>
#include <string_view>

#include "ratdyn/parse.hpp"

namespace testing_support {

using namespace ratdyn;

inline RationalMap map_of(std::string_view text, const FieldPtr& ctx = FieldContext::rationals()) {
    return parse_map(text, ctx, default_symbols(ctx));
}

inline Q small_q(std::mt19937_64& rng, long max_num = 9, long max_den = 4) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    return make_q(num(rng), den(rng));
}

// Random map of exact degree d with small rational coefficients; numerator and
// denominator degrees are drawn independently (one of them equals d).
inline RationalMap random_map(const FieldPtr& ctx, int d, std::mt19937_64& rng) {
    for (;;) {
        std::uniform_int_distribution<int> lower(0, d);
        const bool num_top = rng() & 1u;
        const int dn = num_top ? d : lower(rng), dd = num_top ? lower(rng) : d;
        std::vector<FieldElement> n, m;
        for (int k = 0; k <= dn; ++k) n.emplace_back(ctx, small_q(rng));
        for (int k = 0; k <= dd; ++k) m.emplace_back(ctx, small_q(rng));
        Poly num(ctx, n), den(ctx, m);
        if (num.degree() != dn || den.degree() != dd || den.is_zero()) continue;
        if (poly_gcd(num, den).degree() > 0) continue;
        return RationalMap(num, den);
    }
}

}  // namespace testing_support
