#include "doctest.h"
#include "helpers.hpp"
#include "ratdyn/catalog.hpp"
#include "ratdyn/errors.hpp"

using namespace ratdyn;
using testing_support::map_of;

namespace {

ProjPoint point(const FieldPtr& F, long p, long q) { return ProjPoint::finite(FieldElement(F, make_q(p, q))); }

}  // namespace

TEST_CASE("catalog names") {
    CHECK(catalog_names().size() == 4);
    for (const auto& name : catalog_names()) CHECK_NOTHROW(catalog_entry(name));
    CHECK_THROWS_AS(catalog_entry("lattes"), PreconditionError);
}

TEST_CASE("chebyshev-flower entries") {
    for (const std::string a : {"1", "2", "1+w"}) {
        CAPTURE(a);
        const auto e = catalog_entry("chebyshev-flower", {{"a", a}});
        CHECK(e.map("f").degree() == 6);
        CHECK(e.map("g").degree() == 6);
        const auto rep = run_entry(e, 1);
        CHECK(rep.all_pass());
        CHECK(unexpected_verdicts(e, rep).empty());
        // oracle: f(f(z)) = f(g(z)) at a rational point
        const auto z = point(e.field, 2, 5);
        CHECK(e.map("f").apply(e.map("f").apply(z)).same_as(e.map("f").apply(e.map("g").apply(z))));
    }
    const auto e = catalog_entry("chebyshev-flower");
    CHECK(e.params.at("a") == "1");
    CHECK(e.params.at("field") == "Q(w)");
    CHECK(maps_equal(e.map("f"), map_of("(z^3-3z) + 1/(z^3-3z)", e.field)));
    CHECK(catalog_entry("chebyshev-flower", {{"a", "i"}, {"field", "Q(zeta12)"}}).map("f").degree() == 6);
    CHECK_THROWS_AS(catalog_entry("chebyshev-flower", {{"a", "0"}}), PreconditionError);
    CHECK_THROWS_AS(catalog_entry("chebyshev-flower", {{"field", "Q(i)"}}), PreconditionError);
    CHECK_THROWS_AS(catalog_entry("chebyshev-flower", {{"b", "1"}}), PreconditionError);
}

TEST_CASE("zieve-family entries") {
    for (const auto& [n, m] : {std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 2}, std::pair{3, 2}}) {
        CAPTURE(n);
        CAPTURE(m);
        const auto e = catalog_entry("zieve-family", {{"n", std::to_string(n)}, {"m", std::to_string(m)}});
        CHECK(e.field->is_rationals());
        const auto rep = run_entry(e, 1);
        CHECK(unexpected_verdicts(e, rep).empty());
        CHECK(rep.claims[1].pass == (n != m));
    }
    CHECK_THROWS_AS(catalog_entry("zieve-family", {{"n", "0"}}), PreconditionError);
    CHECK_THROWS_AS(catalog_entry("zieve-family", {{"n", "1"}, {"m", "1"}}), PreconditionError);
    CHECK_THROWS_AS(catalog_entry("zieve-family", {{"n", "two"}}), PreconditionError);
}

TEST_CASE("power-map and quadratic-sigma entries") {
    const auto sq = catalog_entry("power-map");
    CHECK(maps_equal(sq.map("sigma_f"), map_of("-z")));
    const auto rep = run_entry(sq);
    CHECK(rep.all_pass());
    CHECK(unexpected_verdicts(sq, rep).empty());
    const auto cube = catalog_entry("power-map", {{"d", "3"}});
    CHECK(unexpected_verdicts(cube, run_entry(cube)).empty());
    CHECK_THROWS_AS(catalog_entry("power-map", {{"d", "1"}}), PreconditionError);

    const auto q = catalog_entry("quadratic-sigma");
    const auto qrep = run_entry(q);
    CHECK(qrep.all_pass());
    CHECK(unexpected_verdicts(q, qrep).empty());
    const auto z = point(q.field, 7, 3);
    CHECK(q.map("f").apply(q.map("sigma_f").apply(z)).same_as(q.map("f").apply(z)));
    CHECK_THROWS_AS(catalog_entry("quadratic-sigma", {{"map", "z^3"}}), PreconditionError);
}

TEST_CASE("iterate square identity") {
    const auto F = FieldContext::eisenstein();
    for (const long a : {1L, 2L}) {
        CAPTURE(a);
        const auto rep = iterate_square_identity_check(FieldElement(F, Q(a)));
        CHECK(rep.all_pass());
        const auto fa = flower_map(FieldElement(F, Q(a))), fm = flower_map(FieldElement(F, Q(-a)));
        const auto z = point(F, 3, 4);
        CHECK(fa.apply(fa.apply(z)).same_as(fm.apply(fm.apply(z))));
        CHECK_FALSE(fa.apply(z).same_as(fm.apply(z)));
    }
    const auto Fi = FieldContext::gaussian();
    const auto a = parse_scalar("0.4843+0.07776i", Fi, default_symbols(Fi));
    CHECK(flower_map(a).degree() == 6);
    CHECK(iterate_square_identity_check(a).all_pass());
}

TEST_CASE("field names") {
    for (const std::string name : {"Q", "Q(w)", "Q(i)", "Q(zeta12)"}) CHECK(field_name(parse_field(name)) == name);
    CHECK(parse_field("eisenstein")->same_field(*FieldContext::eisenstein()));
    const auto sqrt2 = parse_field("2alpha^2 - 4");
    CHECK(sqrt2->degree() == 2);
    CHECK(field_name(sqrt2) == field_name(parse_field(field_name(sqrt2))));
    CHECK(parse_field("alpha - 3")->is_rationals());
    CHECK_THROWS_AS(parse_field("alpha^2 + 2 alpha + 1"), PreconditionError);
    CHECK_THROWS_AS(parse_field("Q(x"), ParseError);
}
