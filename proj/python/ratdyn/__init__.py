"""Rational maps of the projective line: graph curves, composition identities,
maximal-entropy measures and power-map periodic points."""

import json

from ._core import (
    BudgetError,
    ConsistencyError,
    NumericalError,
    ParseError,
    PreconditionError,
    RationalMap,
    TrackingError,
    catalog_names,
    compose,
    iterate,
    map_from_json,
    period,
    radical,
    render,
    run_cli,
    same_periodic_points_powermaps,
    shared_iterate_search,
    sigma_f,
)
from . import _core

__all__ = [
    "BudgetError", "ConsistencyError", "NumericalError", "ParseError", "PreconditionError", "RationalMap",
    "TrackingError", "analyze_graph", "catalog_names", "catalog_run", "check_counterexample_triple",
    "check_main1_relations", "compose", "invariance_test", "iterate", "map_from_json", "period", "radical",
    "render", "run_cli", "same_measure_test", "same_periodic_points_powermaps", "shared_iterate_search", "sigma_f",
]


def analyze_graph(G, seed=1):
    return json.loads(_core._analyze_graph(G, seed))


def check_counterexample_triple(R, S, T, seed=1):
    return json.loads(_core._check_counterexample_triple(R, S, T, seed))


def check_main1_relations(F, G):
    return json.loads(_core._check_main1_relations(F, G))


def same_measure_test(f, g, count=20000, depth=40, seed=1):
    return json.loads(_core._same_measure_test(f, g, count, depth, seed))


def invariance_test(f, h, count=20000, depth=40, seed=1):
    return json.loads(_core._invariance_test(f, h, count, depth, seed))


def catalog_run(name, params=None, seed=1):
    return json.loads(_core._catalog_run(name, dict(params or {}), seed))
