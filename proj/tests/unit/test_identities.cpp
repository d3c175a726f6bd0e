#include <chrono>

#include "doctest.h"
#include "helpers.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/identities.hpp"

using namespace ratdyn;
using testing_support::map_of;
using testing_support::random_map;

namespace {

struct Triple {
    RationalMap R, S, T;
};

Triple flower(const FieldPtr& F, const std::string& a) {
    return {map_of("(" + a + ")z + 1/((" + a + ")z)", F), map_of("(" + a + ")w z + 1/((" + a + ")w z)", F),
            map_of("z^3-3z", F)};
}

Triple zieve(int n, int m) {
    const auto n_s = std::to_string(n), m_s = std::to_string(m), nm = std::to_string(n + m);
    return {map_of("(1-z^" + n_s + ")/(z^" + nm + "-1)"), map_of("z^" + m_s + "(1-z^" + n_s + ")/(z^" + nm + "-1)"),
            map_of("z^" + n_s + "(z+1)^" + m_s)};
}

// exact value of f at a rational point, as an oracle independent of maps_equal
ProjPoint at(const RationalMap& f, long num, long den) {
    return f.apply(ProjPoint::finite(FieldElement(f.context(), make_q(num, den))));
}

}  // namespace

TEST_CASE("counterexample triples certify") {
    const auto F = FieldContext::eisenstein();
    for (const std::string a : {"1", "2", "1+w"}) {
        CAPTURE(a);
        const auto t = flower(F, a);
        const auto rep = check_counterexample_triple(t.R, t.S, t.T, 1);
        REQUIRE(rep.claims.size() == 3);
        CHECK(rep.claims[0].pass);
        CHECK(rep.claims[1].pass);
        CHECK(rep.claims[2].pass);
        // oracle: T(R(z)) and T(S(z)) agree at a rational point
        const auto z = ProjPoint::finite(FieldElement(F, make_q(3, 7)));
        CHECK(t.T.apply(t.R.apply(z)).same_as(t.T.apply(t.S.apply(z))));
    }
    for (const auto& [n, m] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{3, 1}}) {
        CAPTURE(n);
        CAPTURE(m);
        const auto t = zieve(n, m);
        const auto rep = check_counterexample_triple(t.R, t.S, t.T, 1);
        CHECK(rep.all_pass());
    }
}

TEST_CASE("Zieve family with n = m = 2 has a Moebius factor") {
    // gcd(n, m) > 1: R = -1/(z^2+1), S = -z^2/(z^2+1) and R = -S - 1
    const auto t = zieve(2, 2);
    CHECK(t.R.degree() == 2);
    const auto rep = check_counterexample_triple(t.R, t.S, t.T, 1);
    CHECK(rep.claims[0].pass);
    CHECK_FALSE(rep.claims[1].pass);
    CHECK(rep.claims[2].pass);
    CHECK(maps_equal(t.R, compose(map_of("-z-1"), t.S)));
}

TEST_CASE("R = S fails the no-Moebius claim") {
    const auto t = zieve(2, 1);
    const auto rep = check_counterexample_triple(t.R, t.R, t.T);
    CHECK(rep.claims[0].pass);
    CHECK_FALSE(rep.claims[1].pass);
}

TEST_CASE("Moebius factors") {
    const auto Q1 = FieldContext::rationals();
    const auto id = mobius_factor_exists(map_of("z^2"), map_of("z^2"));
    REQUIRE(id.has_value());
    CHECK(id->is_identity());
    const auto inv = mobius_factor_exists(map_of("z^2"), map_of("1/z^2"));
    REQUIRE(inv.has_value());
    CHECK(*inv == Moebius(FieldElement(Q1), FieldElement(Q1, Q(1)), FieldElement(Q1, Q(1)), FieldElement(Q1)));
    const auto t = flower(FieldContext::eisenstein(), "1");
    CHECK_FALSE(mobius_factor_exists(t.R, t.S).has_value());
    CHECK_FALSE(mobius_factor_exists(map_of("z^2"), map_of("z^3")).has_value());

    // sigma defined over Q(w): R = (w z + 2) o S
    const auto F = FieldContext::eisenstein();
    const auto S = map_of("(z^2+1)/(z-3)", F);
    const auto R = compose(map_of("w z + 2", F), S);
    const auto s = mobius_factor_exists(R, S, 9);
    REQUIRE(s.has_value());
    CHECK(maps_equal(compose(s->as_map(), S), R));
}

TEST_CASE("main1 relations") {
    const auto f = map_of("(z^2-1)/(2z+3)");
    const auto rep = check_main1_relations(f, f);
    CHECK(rep.all_pass());
    const auto F = FieldContext::eisenstein();
    const auto t = flower(F, "1");
    const auto f1 = compose(t.R, t.T), g1 = compose(t.S, t.T);
    CHECK(check_main1_relations(f1, g1).claims[0].pass);
    const auto bad = check_main1_relations(map_of("z^2"), map_of("z^3"));
    CHECK_FALSE(bad.claims[0].pass);
    CHECK_FALSE(bad.claims[1].pass);
    CHECK(bad.claims[0].witness.find("degrees differ") != std::string::npos);
}

TEST_CASE("shared iterates") {
    CHECK(shared_iterate_search(map_of("z^2"), map_of("z^4"), 64) == std::make_pair(2, 1));
    CHECK_FALSE(shared_iterate_search(map_of("z^2"), map_of("z^3"), 4096).has_value());
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 4; ++trial) {
        const auto f = random_map(FieldContext::rationals(), 2, rng);
        for (int k = 1; k <= 3; ++k) {
            CHECK(shared_iterate_search(f, iterate(f, k), 64) == std::make_pair(k, 1));
        }
    }
    const auto t = flower(FieldContext::eisenstein(), "1");
    const auto start = std::chrono::steady_clock::now();
    CHECK_FALSE(shared_iterate_search(compose(t.R, t.T), compose(t.S, t.T), 1296).has_value());
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
    CHECK_THROWS_AS(shared_iterate_search(map_of("z^2"), map_of("z^3"), 2), PreconditionError);
}

TEST_CASE("sigma_f for quadratics") {
    const auto Q1 = FieldContext::rationals();
    const auto neg = sigma_f_quadratic(map_of("z^2"));
    CHECK(neg == Moebius(FieldElement(Q1, Q(-1)), FieldElement(Q1), FieldElement(Q1), FieldElement(Q1, Q(1))));
    const auto inv = sigma_f_quadratic(map_of("z+1/z"));
    CHECK(inv == Moebius(FieldElement(Q1), FieldElement(Q1, Q(1)), FieldElement(Q1, Q(1)), FieldElement(Q1)));
    CHECK_THROWS_AS(sigma_f_quadratic(map_of("z^3")), PreconditionError);

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_map(Q1, 2, rng);
        const auto s = sigma_f_quadratic(f);
        CHECK_FALSE(s.is_identity());
        // oracle: f(sigma(z)) = f(z) and sigma(sigma(z)) = z at exact rational points
        for (const auto& [p, q] : {std::pair{3L, 5L}, std::pair{-7L, 2L}}) {
            const auto z = ProjPoint::finite(FieldElement(Q1, make_q(p, q)));
            CHECK(f.apply(s.apply(z)).same_as(at(f, p, q)));
            CHECK(s.apply(s.apply(z)).same_as(z));
        }
    }
}

TEST_CASE("derivative of the iteration map") {
    const auto Q1 = FieldContext::rationals();
    const auto f = map_of("z^2");
    const Poly one = Poly::constant(FieldElement(Q1, Q(1))), zero(Q1);
    CHECK(iteration_derivative_nonvanishing(f, one, zero, 2) == DerivativeVerdict::Nonzero);
    CHECK(iteration_derivative_nonvanishing(f, f.num(), f.den(), 3) == DerivativeVerdict::Degenerate);
    const auto g = map_of("(z^2-2)/(z+5)");
    CHECK(iteration_derivative_nonvanishing(g, Poly::x(Q1), zero, 1) == DerivativeVerdict::Nonzero);
    // any multiple of (num, den) is a projective rescaling
    CHECK(iteration_derivative_nonvanishing(g, g.num() * Q(2), g.den() * Q(2), 4) == DerivativeVerdict::Degenerate);
}
