#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ratdyn/cli.hpp"

using namespace ratdyn;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "ratdyn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("analyze-graph on z^3 - 3z") {
    const Run r = cli({"analyze-graph", "--map", "z^3-3z"});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    REQUIRE(j["components"].size() == 2);
    CHECK(j["components"][0]["bidegree"] == Json::array({1, 1}));
    CHECK(j["components"][1]["bidegree"] == Json::array({2, 2}));
    CHECK(j["components"][0]["genus"] == 0);
    CHECK(j["components"][1]["genus"] == 0);
    CHECK(j["components"][1]["exact_poly_text"] == "x^2 + x*y + y^2 - 3");
    CHECK(j["sphere_relation"] == true);
    CHECK(j["config"]["seed"] == 1);
    CHECK(j["branch_points"].size() > 0);
    // identical invocation, identical bytes
    CHECK(cli({"analyze-graph", "--map", "z^3-3z"}).out == r.out);
    CHECK(cli({"--seed", "9", "analyze-graph", "--map", "z^3-3z"}).json()["seed"] == 9);
}

TEST_CASE("catalog subcommands") {
    const Run r = cli({"catalog", "run", "chebyshev-flower"});
    CHECK(r.code == 0);
    const Json j = r.json();
    CHECK(j["all_pass"] == true);
    CHECK(j["unexpected"].empty());
    CHECK(j["claims"].size() == 7);
    CHECK(cli({"catalog", "run", "chebyshev-flower", "--param", "a=1+w"}).code == 0);
    // n = m has a Moebius factor, so one claim fails as expected
    const Run z = cli({"catalog", "run", "zieve-family", "--param", "n=2", "m=2"});
    CHECK(z.code == 1);
    CHECK(z.json()["unexpected"].empty());
    CHECK(cli({"catalog", "run", "lattes"}).code == 2);
    CHECK(cli({"catalog", "run", "power-map", "--param", "d=1"}).code == 2);
    const Run list = cli({"catalog", "list"});
    CHECK(list.code == 0);
    CHECK(list.json()["entries"].size() == 4);
}

TEST_CASE("powermap") {
    const Run r = cli({"powermap", "--df", "3", "--dg", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("{\n  \"same_periodic_points\": false,", 0) == 0);
    CHECK(cli({"powermap", "--df", "6", "--dg", "12"}).json()["same_periodic_points"] == true);
    const Json root = cli({"powermap", "--df", "3", "--dg", "5", "--root", "1/7"}).json()["root"];
    CHECK(root["under_df"]["period"] == 6);
    CHECK(root["under_dg"]["period"] == 6);
    CHECK(cli({"powermap", "--df", "2", "--dg", "3", "--root", "1/6"}).json()["root"]["under_df"]["periodic"] == false);
    CHECK(cli({"powermap", "--df", "1", "--dg", "3"}).code == 2);
}

TEST_CASE("certify, compose and iterate") {
    const Run t = cli({"--field", "Q(w)", "certify", "--R", "z+1/z", "--S", "w z+1/(w z)", "--T", "z^3-3z"});
    CHECK(t.code == 0);
    CHECK(t.json()["claims"].size() == 3);
    // R = -z^2 = (-z) o S
    const Run m = cli({"certify", "--input", R"({"R": "-z^2", "S": "z^2", "T": "z^2"})"});
    CHECK(m.code == 1);
    CHECK(m.json()["claims"][1]["verdict"] == "FAIL");
    CHECK(cli({"certify", "--F", "z^2"}).code == 2);

    const Json c = cli({"--let", "a=2/3", "compose", "--f", "(a*z^2+1)/z", "--g", "z+1"}).json();
    CHECK(c["degree"] == 2);
    CHECK(c["text"] == "(2/3*z^2 + 4/3*z + 5/3)/(z + 1)");
    CHECK(c["config"]["let"][0] == "a=2/3");
    const Json i = cli({"iterate", "--map", "z^2+1", "--n", "3"}).json();
    CHECK(i["degree"] == 8);
    CHECK(cli({"iterate", "--map", "z^3", "--n", "20"}).code == 2);
    CHECK(cli({"--max-degree", "4", "compose", "--f", "z^3", "--g", "z^2"}).code == 2);
}

TEST_CASE("map input forms and errors") {
    const auto path = std::filesystem::temp_directory_path() / "ratdyn_cli_map.json";
    std::ofstream(path) << R"({"field": ["0/1", "1/1"], "num": ["0", "-3", "0", "1"], "den": ["1"]})";
    const Run file = cli({"analyze-graph", "--map", "@" + path.string()});
    CHECK(file.code == 0);
    CHECK(file.json()["components"].size() == 2);
    CHECK(cli({"analyze-graph", "--map", path.string()}).out == file.out);
    std::filesystem::remove(path);

    const Run bad = cli({"analyze-graph", "--map", R"({"num": ["1", "2")"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("position") != std::string::npos);
    const Run expr = cli({"analyze-graph", "--map", "z^2+"});
    CHECK(expr.code == 2);
    CHECK(expr.err.find("position") != std::string::npos);
    CHECK(cli({"analyze-graph"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"--match-tol", "-1", "analyze-graph", "--map", "z^2"}).code == 2);
    CHECK(cli({"--let", "z=1", "compose", "--f", "z", "--g", "z"}).code == 2);
    CHECK(cli({"analyze-graph", "--map", "@/nonexistent/map.json"}).code == 2);
}

TEST_CASE("measure and render") {
    const Run m = cli({"--count", "2000", "measure", "--f", "z^2", "--g", "z^2+1"});
    CHECK(m.code == 0);
    const Json j = m.json();
    CHECK(j["verdict"] == "DIFFERENT");
    CHECK(j["blocks"] == 2);
    CHECK(j["ratio"].get<double>() > 10.0);
    CHECK(j["thresholds"]["same_below"] == 3.0);
    CHECK(cli({"--count", "2000", "measure", "--f", "z^2", "--g", "z^2+1"}).out == m.out);
    CHECK(cli({"--count", "2000", "measure", "--f", "z^2", "--push", "-z"}).json()["test"] == "invariance");
    CHECK(cli({"measure", "--f", "z^2", "--g", "z", "--push", "z"}).code == 2);

    const Run r = cli({"--count", "500", "render", "--map", "z^2-1", "--width", "40", "--height", "30"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("P6\n40 30\n255\n", 0) == 0);
    CHECK(r.out.size() == std::string("P6\n40 30\n255\n").size() + 40 * 30 * 3);
    CHECK(cli({"render", "--map", "z^2", "--window", "1,0,0,1"}).code == 2);
}
