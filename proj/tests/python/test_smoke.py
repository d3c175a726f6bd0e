import json

import pytest

import ratdyn


def test_map_basics():
    f = ratdyn.RationalMap("z^3-3z")
    assert f.degree == 3
    assert f.field == "Q"
    assert str(f) == "z^3 - 3*z"
    assert f(2) == pytest.approx(2)
    assert f(None) is None
    g = ratdyn.RationalMap("(a*z^2+1)/z", let={"a": "2/3"})
    assert str(ratdyn.compose(g, ratdyn.RationalMap("z+1"))) == "(2/3*z^2 + 4/3*z + 5/3)/(z + 1)"
    assert ratdyn.iterate(ratdyn.RationalMap("z^2"), 3) == ratdyn.RationalMap("z^8")


def test_json_round_trip():
    f = ratdyn.RationalMap("i z^2 + 1/3", field="Q(i)")
    assert ratdyn.map_from_json(f.to_json()) == f
    data = json.loads(f.to_json())
    assert data["field"] == ["1/1", "0/1", "1/1"]
    with pytest.raises(ratdyn.ParseError):
        ratdyn.map_from_json('{"num": ["1", ')
    with pytest.raises(ratdyn.PreconditionError):
        ratdyn.RationalMap("1")


def test_graph_curve():
    report = ratdyn.analyze_graph(ratdyn.RationalMap("z^3-3z"))
    assert [c["bidegree"] for c in report["components"]] == [[1, 1], [2, 2]]
    assert [c["genus"] for c in report["components"]] == [0, 0]
    assert report["components"][1]["exact_poly_text"] == "x^2 + x*y + y^2 - 3"
    assert report["sphere_relation"]


def test_certificates_and_catalog():
    R = ratdyn.RationalMap("z+1/z", field="Q(w)")
    S = ratdyn.RationalMap("w z+1/(w z)", field="Q(w)")
    T = ratdyn.RationalMap("z^3-3z", field="Q(w)")
    assert ratdyn.check_counterexample_triple(R, S, T)["all_pass"]
    f, g = ratdyn.compose(R, T), ratdyn.compose(S, T)
    assert ratdyn.check_main1_relations(f, g)["all_pass"]
    assert ratdyn.shared_iterate_search(f, g, 36) is None
    assert ratdyn.sigma_f(ratdyn.RationalMap("z^2")) == ratdyn.RationalMap("-z")
    assert "chebyshev-flower" in ratdyn.catalog_names()
    run = ratdyn.catalog_run("zieve-family", {"n": "2", "m": "2"})
    assert not run["all_pass"] and run["unexpected"] == []


def test_powermaps():
    assert not ratdyn.same_periodic_points_powermaps(3, 5)
    assert ratdyn.same_periodic_points_powermaps(6, 12)
    assert ratdyn.radical(72) == 6
    assert ratdyn.period(1, 7, 2) == 3
    assert ratdyn.period(1, 4, 2) is None


def test_measure_and_render():
    rep = ratdyn.same_measure_test(ratdyn.RationalMap("z^2"), ratdyn.RationalMap("z^2+1"), count=2000)
    assert rep["verdict"] == "DIFFERENT"
    ppm = ratdyn.render(ratdyn.RationalMap("z^2-1"), 32, 24, count=500)
    assert ppm.startswith(b"P6\n32 24\n255\n")
    assert len(ppm) == len(b"P6\n32 24\n255\n") + 32 * 24 * 3


def test_cli():
    code, out, err = ratdyn.run_cli(["powermap", "--df", "3", "--dg", "5"])
    assert code == 0
    assert json.loads(out)["same_periodic_points"] is False
    code, out, err = ratdyn.run_cli(["analyze-graph", "--map", '{"num": [1'])
    assert code == 2 and "position" in err
