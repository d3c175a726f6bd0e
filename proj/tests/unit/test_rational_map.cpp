#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "ratdyn/errors.hpp"

using namespace ratdyn;
using testing_support::map_of;
using testing_support::random_map;

namespace {

bool has_point(const CriticalData& cd, const RiemannPoint& p, int mult) {
    return std::any_of(cd.points.begin(), cd.points.end(), [&](const CriticalPoint& c) {
        return chordal_distance(c.point, p) < 1e-9 && c.multiplicity == mult;
    });
}

const CriticalValue* find_value(const CriticalData& cd, const RiemannPoint& v) {
    for (const auto& cv : cd.values) {
        if (chordal_distance(cv.value, v) < 1e-9) return &cv;
    }
    return nullptr;
}

Moebius random_moebius(const FieldPtr& ctx, std::mt19937_64& rng) {
    for (;;) {
        FieldElement a(ctx, testing_support::small_q(rng)), b(ctx, testing_support::small_q(rng)),
            c(ctx, testing_support::small_q(rng)), d(ctx, testing_support::small_q(rng));
        if ((a * d - b * c).is_zero()) continue;
        return Moebius(a, b, c, d);
    }
}

}  // namespace

TEST_CASE("normalization and equality") {
    const auto f = map_of("(2z^2+4)/(6z)");
    CHECK(f.den().leading().is_one());
    CHECK(maps_equal(f, map_of("(z^2+2)/(3z)")));
    CHECK(maps_equal(map_of("(z^2-1)/(z-1)"), map_of("z+1")));
    CHECK_THROWS_AS(map_of("(z+1)/(z+1)"), ParseError);
    CHECK_THROWS_AS(RationalMap(Poly::x(FieldContext::rationals()), Poly(FieldContext::rationals())), PreconditionError);
}

TEST_CASE("parser") {
    const auto F = FieldContext::eisenstein();
    const auto w = FieldElement::generator(F);
    SymbolTable sym = default_symbols(F);
    sym.emplace("a", FieldElement(F, Q(2)));
    const auto f = parse_map("a w z + 1/(a w z)", F, sym);
    CHECK(f.degree() == 2);
    CHECK(f.den() == Poly::x(F));
    CHECK(f.num().coeff(2) == w * FieldElement(F, Q(2)));
    CHECK(maps_equal(map_of("z^3-3z"), map_of("z*z*z - 3*z")));
    CHECK(maps_equal(map_of("z^-2"), map_of("1/z^2")));
    CHECK(maps_equal(map_of("0.5z^2"), map_of("z^2/2")));
    try {
        map_of("z^2 + $");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 6);
    }
    CHECK_THROWS_AS(map_of("z +* 2"), ParseError);
    CHECK_THROWS_AS(map_of("q z"), ParseError);
    CHECK(parse_scalar("1+w", F, sym) == FieldElement(F, Q(1)) + w);
    CHECK_THROWS_AS(parse_scalar("z", F, sym), ParseError);
}

TEST_CASE("compose") {
    CHECK(maps_equal(compose(map_of("z^2"), map_of("z^3")), map_of("z^6")));
    const auto f = map_of("(z^2+1)/(z-3)");
    CHECK(maps_equal(compose(f, RationalMap::identity(FieldContext::rationals())), f));
    CHECK(maps_equal(compose(Moebius::identity(FieldContext::rationals()).as_map(), f), f));

    // R o T with R = z + 1/z, T = z^3 - 3z equals (T^2 + 1)/T
    const auto Qf = FieldContext::rationals();
    const Poly z = Poly::x(Qf);
    const Poly T = z.pow(3) - z * Q(3);
    const Poly one = Poly::constant(FieldElement(Qf, Q(1)));
    const auto f1 = compose(map_of("z+1/z"), map_of("z^3-3z"));
    CHECK(f1.degree() == 6);
    CHECK(f1.den() == T);
    CHECK(f1.num() == T * T + one);
    CHECK(poly_gcd(f1.num(), f1.den()).degree() == 0);
}

TEST_CASE("the flower pair: f1 != g1 but f1 o f1 = f1 o g1") {
    const auto F = FieldContext::eisenstein();
    const auto T = map_of("z^3-3z", F);
    const auto f1 = compose(map_of("z+1/z", F), T);
    const auto g1 = compose(map_of("w z+1/(w z)", F), T);
    CHECK(!maps_equal(f1, g1));
    CHECK(maps_equal(compose(f1, f1), compose(f1, g1)));
}

TEST_CASE("iterate") {
    CHECK(maps_equal(iterate(map_of("z^2"), 3), map_of("z^8")));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 6; ++trial) {
        const int d = 2 + trial % 3;
        const auto f = random_map(FieldContext::rationals(), d, rng);
        CHECK(maps_equal(iterate(f, 1), f));
        const int n = 1 + trial % 3;
        int expect = 1;
        for (int k = 0; k < n; ++k) expect *= d;
        CHECK(iterate(f, n).degree() == expect);
    }
    CHECK_THROWS_AS(iterate(map_of("z^2"), 13), BudgetError);
    CHECK_NOTHROW(iterate(map_of("z^2"), 12));
}

TEST_CASE("degree multiplicativity on random maps") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_map(FieldContext::rationals(), 2 + trial % 3, rng);
        const auto g = random_map(FieldContext::rationals(), 2 + (trial / 3) % 3, rng);
        CHECK(compose(f, g).degree() == f.degree() * g.degree());
    }
}

TEST_CASE("evaluate") {
    CHECK(evaluate(map_of("z^2-1"), RiemannPoint::infinity()).infinite);
    const auto T = map_of("z^3-3z");
    CHECK(std::abs(evaluate(T, cplx(2.0)).z - cplx(2.0)) < 1e-14);
    CHECK(std::abs(evaluate(map_of("1/z"), cplx(0.0, 1e-20)).z) < 1e300);
    CHECK(evaluate(map_of("1/z"), cplx(0.0)).infinite);
    // f1 at a critical point of T: R(T(1)) = R(-2) = -5/2 exactly
    const auto f1 = compose(map_of("z+1/z"), T);
    const ProjPoint exact = f1.apply(ProjPoint::finite(FieldElement(FieldContext::rationals(), Q(1))));
    CHECK(exact.x / exact.y == FieldElement(FieldContext::rationals(), Q(-5, 2)));
    CHECK(std::abs(evaluate(f1, cplx(1.0)).z - cplx(-2.5)) < 1e-12);

    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_map(FieldContext::rationals(), 2 + trial % 3, rng);
        const auto g = random_map(FieldContext::rationals(), 2 + trial % 2, rng);
        const RiemannPoint z(cplx(gauss(rng), gauss(rng)));
        CHECK(chordal_distance(evaluate(compose(f, g), z), evaluate(f, evaluate(g, z))) < 1e-8);
    }
}

TEST_CASE("maps_equal agrees with evaluation at 2d+2 rational points") {
    std::mt19937_64 rng(29);
    const auto Qf = FieldContext::rationals();
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_map(Qf, 2 + trial % 3, rng);
        // g is either f written differently (conjugated by identity) or f plus a tiny perturbation
        const auto g = trial % 2 ? compose(Moebius::identity(Qf).as_map(), f)
                                 : RationalMap(f.num() + Poly::constant(FieldElement(Qf, Q(1, 1000))), f.den());
        const int d = std::max(f.degree(), g.degree());
        bool agree = true;
        for (int k = 0; k < 2 * d + 2; ++k) {
            const auto p = ProjPoint::finite(FieldElement(Qf, Q(k - d)));
            if (!f.apply(p).same_as(g.apply(p))) agree = false;
        }
        CHECK(agree == maps_equal(f, g));
    }
}

TEST_CASE("critical data") {
    const auto sq = critical_data(map_of("z^2"));
    CHECK(sq.points.size() == 2);
    CHECK(has_point(sq, cplx(0.0), 1));
    CHECK(has_point(sq, RiemannPoint::infinity(), 1));
    REQUIRE(sq.values.size() == 2);
    CHECK(sq.values[0].simple);
    CHECK(sq.values[1].simple);

    const auto T = critical_data(map_of("z^3-3z"));
    CHECK(has_point(T, cplx(1.0), 1));
    CHECK(has_point(T, cplx(-1.0), 1));
    CHECK(has_point(T, RiemannPoint::infinity(), 2));
    REQUIRE(T.values.size() == 3);
    REQUIRE(find_value(T, cplx(2.0)));
    REQUIRE(find_value(T, cplx(-2.0)));
    CHECK(find_value(T, cplx(2.0))->simple);
    CHECK(find_value(T, cplx(-2.0))->simple);
    CHECK(!find_value(T, RiemannPoint::infinity())->simple);

    // derivative z (z-1)^2 (5z-2)
    const auto m = critical_data(map_of("z^2 (z-1)^3"));
    CHECK(has_point(m, cplx(1.0), 2));
    CHECK(has_point(m, cplx(0.0), 1));
    CHECK(has_point(m, cplx(0.4), 1));
    CHECK(has_point(m, RiemannPoint::infinity(), 4));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const int d = 2 + trial % 4;
        const auto cd = critical_data(random_map(FieldContext::rationals(), d, rng));
        int total = 0;
        for (const auto& p : cd.points) total += p.multiplicity;
        CHECK(total == 2 * d - 2);
    }
}

TEST_CASE("critical values transform under conjugation") {
    std::mt19937_64 rng(37);
    const auto Qf = FieldContext::rationals();
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = random_map(Qf, 2 + trial % 3, rng);
        const Moebius s = random_moebius(Qf, rng);
        const auto h = compose(compose(s.as_map(), f), s.inverse().as_map());
        const auto cf = critical_data(f);
        const auto ch = critical_data(h);
        REQUIRE(cf.values.size() == ch.values.size());
        for (const auto& v : cf.values) {
            const RiemannPoint image = s.apply(v.value);
            double best = 2.0;
            for (const auto& u : ch.values) best = std::min(best, chordal_distance(u.value, image));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("mobius_from_three_points") {
    const auto Qf = FieldContext::rationals();
    auto pt = [&](long v) { return ProjPoint::finite(FieldElement(Qf, Q(v))); };
    const auto inf = ProjPoint::infinity(Qf);
    CHECK(mobius_from_three_points({pt(0), pt(1), inf}, {pt(0), pt(1), inf}).is_identity());
    const auto m = mobius_from_three_points({pt(0), pt(1), inf}, {pt(1), pt(0), inf});
    CHECK(maps_equal(m.as_map(), map_of("1-z")));
    CHECK_THROWS_AS(mobius_from_three_points({pt(0), pt(0), inf}, {pt(1), pt(0), inf}), PreconditionError);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Moebius s = random_moebius(Qf, rng);
        std::array<ProjPoint, 3> p{pt(-2), pt(3), inf}, q{s.apply(p[0]), s.apply(p[1]), s.apply(p[2])};
        CHECK(mobius_from_three_points(p, q) == s);
        const auto num = mobius_from_three_points(std::array<RiemannPoint, 3>{cplx(-2.0), cplx(3.0), RiemannPoint::infinity()},
                                                  std::array<RiemannPoint, 3>{q[0].to_riemann(), q[1].to_riemann(), q[2].to_riemann()});
        const cplx z(0.3, -0.7);
        const cplx v = (num[0] * z + num[1]) / (num[2] * z + num[3]);
        CHECK(chordal_distance(RiemannPoint(v), s.apply(RiemannPoint(z))) < 1e-12);
    }
}
