"""Frozen diagram-catalog facts for regression tests.

Three catalogs are small enough to check by hand: the weight multisets below
were tallied independently of the enumeration code, by listing the diagrams
one by one and applying the orbit formula to each.  The two worked single
contributions pin down representation details (slot classes of externals,
self-loop bookkeeping) that a bare weight histogram would miss.

Weights are stored as strings "n/d" keyed by catalog (k, h); values count
diagrams carrying that weight.
"""
from __future__ import annotations

WEIGHT_MULTISETS: dict[tuple[int, int], dict[str, int]] = {
    (1, 1): {"1": 2, "1/2": 1},
    (2, 1): {"1": 9, "1/2": 5},
    (0, 2): {"1": 4, "1/2": 7, "1/8": 2, "1/12": 1},
}

# (k, h, vertices as (h, alpha) pairs, edges over ((v, f), (w, g)),
#  externals as (point, vertex, f), weight)
WORKED_CONTRIBUTIONS: tuple[dict, ...] = (
    {
        "k": 0,
        "h": 2,
        "vertices": ((0, (3,)), (1, (0, 1))),
        "edges": (((0, 0), (0, 0)), ((0, 0), (1, 1))),
        "externals": (),
        "weight": "1/2",
    },
    {
        "k": 2,
        "h": 1,
        "vertices": ((1, (1, 0, 1)),),
        "edges": (),
        "externals": (("p1", 0, 0), ("p2", 0, 2)),
        "weight": "1",
    },
)
