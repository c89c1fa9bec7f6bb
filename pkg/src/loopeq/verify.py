"""Acceptance battery: nine numbered checks covering the whole pipeline.

Each criterion function returns (ok, detail) and is cheap to call from both
the test suite and the command line.  The checks lean on oracles that are
independent of the code they judge: frozen coupling tables and diagram
weights entered by hand, a term-count formula against explicit enumeration,
two symmetry-factor routes compared diagram by diagram, a residue recursion
replayed against the diagram expansion, and numeric curve values against
closed-form constants (the genus-2 free energy -1/240, the even-moment
genus recurrence for the one-point resolvent).
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import curve as _curve
from .algebra import (
    Expression,
    KIND_MOMENT,
    add,
    canonical_items,
    diff,
    ext_prop,
    int_prop,
    moment,
    mul,
    project_y1,
    term,
    y1_exponents,
)
from .couplings import (
    CouplingTable,
    count_terms,
    default_table,
    enumerate_mset,
    lambda_consistency,
    z_poly,
)
from .diagrams import Diagram, VertexStructure, catalog, correlator, wick_weights
from .golden.catalogs import WEIGHT_MULTISETS, WORKED_CONTRIBUTIONS
from .golden.lambda_terms import GOLDEN_LAMBDA, TERM_COUNTS, as_expression
from .oracle import LoopContext, loop_apply, w1_recursion

_SHARED: CouplingTable | None = None

_DUAL_ROUTE_CASES = (
    (3, 0), (4, 0), (5, 0),
    (1, 1), (2, 1), (3, 1), (4, 1),
    (0, 2), (1, 2), (2, 2),
    (0, 3),
)


def shared_table() -> CouplingTable:
    """One coupling table for the whole battery; criterion 2 fills it to h = 10."""
    global _SHARED
    if _SHARED is None:
        _SHARED = default_table()
    return _SHARED


def criterion_1() -> tuple[bool, str]:
    """Coupling orders 2..5 match the frozen tables coefficient for coefficient."""
    table = shared_table()
    for h, golden in sorted(GOLDEN_LAMBDA.items()):
        want = as_expression(golden)
        got = table.lam(h)
        if got != want:
            extra = {m: c for m, c in got.items() if want.get(m) != c}
            return False, f"order {h} disagrees with the frozen table on {len(extra)} monomials"
    return True, "orders 2..5 match the frozen tables exactly (3, 11, 30, 77 terms)"


def criterion_2() -> tuple[bool, str]:
    """Term counts of the coupling orders up to 10 match the frozen sequence."""
    table = shared_table()
    counts = {h: len(table.lam(h)) for h in TERM_COUNTS}
    if counts != TERM_COUNTS:
        bad = {h: (counts[h], TERM_COUNTS[h]) for h in counts if counts[h] != TERM_COUNTS[h]}
        return False, f"term counts off (got, want): {bad}"
    return True, f"term counts match through order 10: {[TERM_COUNTS[h] for h in sorted(TERM_COUNTS)]}"


def criterion_3() -> tuple[bool, str]:
    """The pre-integration identity holds at every admissible offset, orders 2..5."""
    table = shared_table()
    checked = 0
    for h in range(2, 6):
        for k_prime in range(3 * h - 1):
            if not lambda_consistency(h, k_prime, table=table):
                return False, f"identity fails at order {h}, offset {k_prime}"
            checked += 1
    return True, f"identity holds at all {checked} offsets for orders 2..5"


def criterion_4() -> tuple[bool, str]:
    """Explicit multi-index enumeration agrees with the count formula."""
    for k in range(9):
        for h in range(7):
            got = len(enumerate_mset(k, h))
            want = count_terms(k, h)
            if got != want:
                return False, f"size mismatch at (k, h) = ({k}, {h}): enumerated {got}, formula {want}"
    return True, "enumeration sizes match the count formula for k <= 8, h <= 6"


def _weight_multiset(k: int, h: int) -> dict[str, int]:
    tally: dict[str, int] = {}
    for _, sym in catalog(k, h):
        key = str(sym.weight)
        tally[key] = tally.get(key, 0) + 1
    return tally


def _worked_diagram(contrib: dict) -> Diagram:
    verts = tuple(VertexStructure(h, tuple(alpha)) for h, alpha in contrib["vertices"])
    edges = tuple(tuple(tuple(end) for end in edge) for edge in contrib["edges"])
    externals = tuple(tuple(ext) for ext in contrib["externals"])
    return Diagram(verts, edges, externals)


def criterion_5() -> tuple[bool, str]:
    """Small catalogs reproduce the frozen weight tallies and worked diagrams."""
    for (k, h), want in sorted(WEIGHT_MULTISETS.items()):
        got = _weight_multiset(k, h)
        if got != want:
            return False, f"weight tally at (k, h) = ({k}, {h}): got {got}, want {want}"
    for contrib in WORKED_CONTRIBUTIONS:
        target = _worked_diagram(contrib)
        found = {d: sym for d, sym in catalog(contrib["k"], contrib["h"])}
        if target not in found:
            return False, f"worked diagram missing from catalog ({contrib['k']}, {contrib['h']}): {target}"
        if found[target].weight != Fraction(contrib["weight"]):
            return False, (f"worked diagram weight at ({contrib['k']}, {contrib['h']}): "
                           f"got {found[target].weight}, want {contrib['weight']}")
    return True, "catalogs (1,1), (2,1), (0,2) and both worked diagrams match the frozen data"


def criterion_6() -> tuple[bool, str]:
    """Orbit-stabilizer weights agree with labeled-pairing tallies, catalog by catalog."""
    total = 0
    for k, h in _DUAL_ROUTE_CASES:
        structural = {d: sym.weight for d, sym in catalog(k, h)}
        counted = wick_weights(k, h)
        if structural != counted:
            off = {d: (structural.get(d), counted.get(d))
                   for d in set(structural) | set(counted)
                   if structural.get(d) != counted.get(d)}
            return False, f"routes disagree at (k, h) = ({k}, {h}) on {len(off)} diagrams"
        total += len(structural)
    return True, f"both symmetry routes agree on all {total} diagrams across {len(_DUAL_ROUTE_CASES)} catalogs"


def criterion_7() -> tuple[bool, str]:
    """Residue recursion and loop insertion reproduce the diagram expansion."""
    table = shared_table()
    one_one = correlator(1, 1, 1, table=table)
    inserted = loop_apply(one_one, LoopContext(1, "p2"))
    if inserted != correlator(2, 1, 1, table=table):
        return False, "loop insertion into the (1, 1) correlator misses the (2, 1) expansion"
    for h, s in ((2, 1), (2, 2), (3, 1)):
        rec = w1_recursion(h, s, table=table)
        direct = correlator(1, h, s, table=table)
        if rec != direct:
            return False, f"recursion disagrees with the expansion at (h, s) = ({h}, {s})"
    return True, "loop insertion and the residue recursion match the expansion at (2,1), (2,2), (3,1)"


def genus_moment(g: int, n: int) -> Fraction:
    """Genus-g part of the 2n-th even moment of the unit-support ensemble.

    eps_0(n) is the Catalan number; higher genus follows the three-term
    recurrence in n.  Used as the series oracle for the one-point resolvent.
    """
    if g < 0 or n < 0:
        return Fraction(0)
    if g == 0:
        out = Fraction(1)
        for k in range(n):
            out = out * 2 * (2 * k + 1) / (k + 2)
        return out
    return (Fraction(4 * n - 2, n + 1) * genus_moment(g, n - 1)
            + Fraction((n - 1) * (2 * n - 1) * (2 * n - 3), n + 1) * genus_moment(g - 1, n - 2))


def resolvent_series(g: int, p: float, tol: float = 1e-16) -> float:
    """Genus-g one-point resolvent at p from the moment series."""
    total = 0.0
    n = 2 * g
    while True:
        step = float(genus_moment(g, n)) * p ** (-2 * n - 1)
        total += step
        if abs(step) < tol:
            return total
        n += 1


def criterion_8() -> tuple[bool, str]:
    """Numeric curve checks on the quadratic potential."""
    table = shared_table()
    data = _curve.solve_curve(_curve.gaussian_potential())
    res = _curve.endpoint_residuals(data.potential, data.center, data.half_length)
    if max(abs(res[0]), abs(res[1])) >= 1e-12:
        return False, f"endpoint residuals too large: {res}"
    if abs(data.a1 + 2) > 1e-12 or abs(data.a2 - 2) > 1e-12:
        return False, f"endpoints off: ({data.a1}, {data.a2})"
    y1 = _curve.moment_value(data, 1, 2)
    y2 = _curve.moment_value(data, 2, 2)
    if abs(y1 - 2) > 1e-10 or abs(y2 - 0.25) > 1e-10:
        return False, f"moments off: y1 = {y1}, y2 = {y2}"
    f2 = _curve.eval_expression(data, correlator(0, 2, 1, table=table))
    if abs(f2 - (-1 / 240)) > 1e-9:
        return False, f"second-order free energy {f2} != -1/240"
    w12 = _curve.eval_expression(data, correlator(1, 2, 1, table=table), {"p1": 3.0})
    want = resolvent_series(2, 3.0)
    if abs(w12 - want) > 1e-9:
        return False, f"one-point value {w12} != series {want}"
    return True, (f"endpoints (-2, 2), moments (2, 1/4), free energy -1/240 "
                  f"and resolvent at 3 all within tolerance (|dW| = {abs(w12 - want):.1e})")


def _random_expression(rng: random.Random, indexed: bool) -> Expression:
    """Small random expression; indexed mode keeps it loop-insertable."""
    points = ("u", "v")
    out: Expression = {}
    for _ in range(rng.randint(1, 3)):
        factors = []
        for _ in range(rng.randint(1, 3)):
            i = rng.randint(1, 2) if indexed else 0
            kind = rng.randint(0, 3 if indexed else 1)
            if kind == 0:
                factors.append((moment(rng.randint(2, 4), i), rng.randint(1, 2)))
            elif kind == 1:
                factors.append((moment(1, i), rng.randint(-3, 2) or 1))
            elif kind == 2:
                factors.append((ext_prop(i, rng.randint(0, 2), rng.choice(points)), rng.randint(1, 2)))
            else:
                factors.append((int_prop(i, rng.randint(1, 2), rng.randint(0, 2), rng.randint(0, 2)),
                                rng.randint(1, 2)))
        coeff = Fraction(rng.randint(-6, 6) or 1, rng.randint(1, 6))
        out = add(out, term(coeff, factors))
    return out


def criterion_9() -> tuple[bool, str]:
    """Property sweeps: derivations, the projector family, the kernel
    convolution, and the coupling gradings."""
    rng = random.Random(20240901)
    for case in range(200):
        e1 = _random_expression(rng, indexed=False)
        e2 = _random_expression(rng, indexed=False)
        var = moment(rng.randint(1, 4))
        lhs = diff(mul(e1, e2), var)
        rhs = add(mul(diff(e1, var), e2), mul(e1, diff(e2, var)))
        if lhs != rhs:
            return False, f"product rule for the derivative fails on case {case}"
    for case in range(200):
        e1 = _random_expression(rng, indexed=True)
        e2 = _random_expression(rng, indexed=True)
        ctx = LoopContext(1, "q")
        lhs = loop_apply(mul(e1, e2), ctx)
        rhs = add(mul(loop_apply(e1, ctx), e2), mul(e1, loop_apply(e2, ctx)))
        if lhs != rhs:
            return False, f"product rule for loop insertion fails on case {case}"
    for case in range(200):
        e = _random_expression(rng, indexed=False)
        labels = {-n for n in y1_exponents(e)}
        pieces: Expression = {}
        for r in labels:
            p_r = project_y1(e, r)
            if project_y1(p_r, r) != p_r:
                return False, f"projector not idempotent on case {case}"
            for r2 in labels:
                if r2 != r and project_y1(p_r, r2):
                    return False, f"projectors not orthogonal on case {case}"
            pieces = add(pieces, p_r)
        if pieces != e:
            return False, f"projectors do not resolve the identity on case {case}"
    for n in range(9):
        conv: Expression = {}
        for ell in range(n + 1):
            conv = add(conv, mul(term(Fraction(1), [(moment(1 + ell), 1)]), z_poly(n - ell)))
        want = term(Fraction(1), []) if n == 0 else {}
        if conv != want:
            return False, f"kernel convolution fails at n = {n}"
    table = shared_table()
    for h in range(2, 11):
        for m, _ in canonical_items(table.lam(h)):
            orders = [(g[2], e) for g, e in m if g[0] == KIND_MOMENT]
            if sum(f * e for f, e in orders) != h - 1:
                return False, f"first grading fails at order {h}"
            if sum(e for _, e in orders) != 2 - 2 * h:
                return False, f"second grading fails at order {h}"
            if any(f > 3 * h - 2 for f, _ in orders):
                return False, f"moment order exceeds 3h - 2 at order {h}"
        if not any(g[2] == 3 * h - 2 for m, _ in canonical_items(table.lam(h))
                   for g, _ in m if g[0] == KIND_MOMENT):
            return False, f"moment order 3h - 2 never attained at order {h}"
    return True, ("600 random derivation and projector cases, the kernel convolution "
                  "to n = 8, and the gradings through order 10 all hold")


ALL_CRITERIA = (
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9,
)


def run_all() -> list[tuple[int, bool, str]]:
    """Run every criterion; returns (number, ok, detail) rows."""
    rows = []
    for number, fn in enumerate(ALL_CRITERIA, start=1):
        ok, detail = fn()
        rows.append((number, ok, detail))
    return rows
