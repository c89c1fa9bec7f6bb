"""Diagram enumeration, symmetry weights, and assembled expansions."""
from __future__ import annotations

import json
from fractions import Fraction

import pytest

from loopeq.algebra import ext_prop, int_prop, moment, term
from loopeq.couplings import default_table
from loopeq.diagrams import (
    DEFAULT_WICK_BUDGET,
    Diagram,
    ExcludedCase,
    VertexStructure,
    WickBudgetError,
    catalog,
    catalog_dot,
    catalog_json,
    correlator,
    enumerate_diagrams,
    render_dot,
    symmetry_factor,
    vertex_admissible,
    wick_weights,
)
from loopeq.golden.catalogs import WEIGHT_MULTISETS


@pytest.fixture(scope="module")
def table():
    return default_table()


def test_vertex_admissible_leg_minimums():
    assert vertex_admissible(0, (3,))
    assert not vertex_admissible(0, (2,))
    assert vertex_admissible(1, (1,))
    assert vertex_admissible(1, (0, 1))
    assert vertex_admissible(2, (0,) * 5)
    assert not vertex_admissible(1, ())


def test_excluded_cases():
    for k, h in ((0, 0), (1, 0), (2, 0), (0, 1)):
        with pytest.raises(ExcludedCase):
            enumerate_diagrams(k, h)


def test_catalog_sizes_and_weights():
    for (k, h), want in WEIGHT_MULTISETS.items():
        tally = {}
        for _, sym in catalog(k, h):
            tally[str(sym.weight)] = tally.get(str(sym.weight), 0) + 1
        assert tally == want, (k, h)


def test_three_point_tree_catalog():
    entries = catalog(3, 0)
    assert len(entries) == 1
    diagram, sym = entries[0]
    assert diagram.vertices == (VertexStructure(0, (3,)),)
    assert sym.weight == 1
    assert sym.pi == 6


def test_symmetry_factor_self_loop():
    # one trivalent planar vertex, one self-loop, one external leg
    d = catalog(1, 1)[0][0]
    sym = symmetry_factor(d)
    assert sym.weight == Fraction(1, 2)
    assert sym.pi * Fraction(1, sym.c * sym.d) == sym.weight


def test_dual_routes_small():
    for k, h in ((3, 0), (4, 0), (1, 1), (2, 1), (0, 2)):
        structural = {d: sym.weight for d, sym in catalog(k, h)}
        assert wick_weights(k, h) == structural, (k, h)


def test_wick_budget_guard():
    with pytest.raises(WickBudgetError):
        wick_weights(4, 0, budget=10)
    assert wick_weights(4, 0, budget=DEFAULT_WICK_BUDGET)


def test_assembled_one_point_order_one(table):
    got = correlator(1, 1, 1, table=table)
    want = {}
    for i in (1, 2):
        y1, y2 = moment(1, i), moment(2, i)
        b0 = ext_prop(i, 0, "p1")
        pieces = (
            term(Fraction(-1, 8), [(y2, 1), (y1, -2), (b0, 1)]),
            term(Fraction(1, 24), [(y1, -1), (ext_prop(i, 1, "p1"), 1)]),
            term(Fraction(1, 2), [(y1, -1), (int_prop(i, i, 0, 0), 1), (b0, 1)]),
        )
        for piece in pieces:
            for m, c in piece.items():
                want[m] = want.get(m, 0) + c
    assert got == want


def test_correlator_closed_case(table):
    e = correlator(0, 2, 1, table=table)
    assert len(e) == 32
    points = {g[3] for m in e for g, _ in m if g[0] == 2}
    assert points == set()


def test_render_dot_shape():
    d = catalog(1, 1)[0][0]
    text = render_dot(d)
    assert text.startswith("graph D {")
    assert "p1" in text


def test_catalog_dot_clusters():
    text = catalog_dot(1, 1)
    assert text.startswith("graph catalog {")
    assert text.count("subgraph cluster_") == 3


def test_catalog_json_document():
    doc = json.loads(catalog_json(2, 1))
    assert doc["k"] == 2 and doc["h"] == 1
    assert doc["count"] == 14 == len(doc["diagrams"])
    for entry in doc["diagrams"]:
        assert set(entry) == {"vertices", "internal_edges", "external", "pi", "c", "d", "weight"}
