#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ratdyn/errors.hpp"
#include "ratdyn/report.hpp"

using namespace ratdyn;
using testing_support::map_of;

TEST_CASE("rationals and field elements") {
    CHECK(to_json(make_q(-6, 4)) == "-3/2");
    CHECK(to_json(Q(5)) == "5/1");
    const auto F = FieldContext::eisenstein();
    const auto w = default_symbols(F).at("w");
    CHECK(to_json(w + FieldElement(F, make_q(1, 2))).dump() == R"(["1/2","1/1"])");
    CHECK(field_to_json(F).dump() == R"(["1/1","1/1","1/1"])");
    CHECK(field_to_json(FieldContext::rationals()).size() == 2);
    CHECK(element_from_json(Json::parse(R"(["0/1","-2/3"])"), F) == FieldElement(F, make_q(-2, 3)) * w);
    CHECK(element_from_json(Json::parse(R"(["7"])"), F) == FieldElement(F, Q(7)));
    CHECK_THROWS_AS(element_from_json(Json::parse(R"(["1","2","3"])"), F), ParseError);
    CHECK_THROWS_AS(element_from_json(Json::parse("2.5"), F), ParseError);
}

TEST_CASE("map JSON round trip") {
    std::mt19937_64 rng(5);
    for (int d = 1; d <= 5; ++d) {
        const auto f = testing_support::random_map(FieldContext::rationals(), d, rng);
        CHECK(maps_equal(map_from_json(to_json(f)), f));
        CHECK(maps_equal(map_from_json(parse_json(to_json(f).dump())), f));
    }
    const auto F = FieldContext::gaussian();
    const auto g = map_of("(i z^2 + 1/3)/(z - 2i)", F);
    const auto back = map_from_json(to_json(g));
    CHECK(back.context()->same_field(*F));
    CHECK(maps_equal(back, g));

    const auto h = map_from_json(parse_json(R"({"num": ["0/1", "-3/1", "0/1", "1/1"], "den": ["1/1"]})"));
    CHECK(maps_equal(h, map_of("z^3 - 3z")));
    CHECK(to_json(h).dump() == R"({"field":["0/1","1/1"],"num":["0/1","-3/1","0/1","1/1"],"den":["1/1"]})");
}

TEST_CASE("malformed map JSON") {
    try {
        parse_json(R"({"num": ["1/1", )");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 16);
    }
    CHECK_THROWS_AS(map_from_json(parse_json(R"({"num": ["1/1"]})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json(R"({"num": "z", "den": ["1"]})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json(R"({"num": ["1/0"], "den": ["1"]})")), ParseError);
    CHECK_THROWS_AS(map_from_json(parse_json(R"({"num": ["1"], "den": ["0"]})")), ParseError);
}

TEST_CASE("read_map accepts JSON and expressions") {
    const auto Q0 = FieldContext::rationals();
    CHECK(maps_equal(read_map("  {\"num\": [\"0\", \"0\", \"1\"], \"den\": [\"1\"]}", Q0, default_symbols(Q0)), map_of("z^2")));
    CHECK(maps_equal(read_map("z^2", Q0, default_symbols(Q0)), map_of("z^2")));
    // JSON without a field takes the ambient one
    const auto F = FieldContext::eisenstein();
    const auto f = read_map(R"({"num": [["0","1"], "0", "1"], "den": ["1"]})", F, default_symbols(F));
    CHECK(maps_equal(f, map_of("z^2 + w", F)));
}

TEST_CASE("bivariate polynomials and certificates") {
    const auto f = map_of("z^2");
    const BiPoly p = BiPoly::graph_of(f.num(), f.den());  // x^2 - y^2
    const Json j = to_json(p);
    REQUIRE(j.size() == 3);
    CHECK(j[0][2] == "-1/1");
    CHECK(j[2][0] == "1/1");
    CertificateReport rep;
    rep.claims.push_back({"a", true, "w", ""});
    rep.claims.push_back({"b", false, "", "n"});
    const Json r = to_json(rep);
    CHECK(r["all_pass"] == false);
    CHECK(r["claims"][1]["verdict"] == "FAIL");
    CHECK(r["claims"][1]["note"] == "n");
    CHECK_FALSE(r["claims"][0].contains("note"));
}
