"""Residue-recursion oracle for one-point correlators.

An independent route to the order-h one-point function: push the order h-1
result through the loop insertion operator and a contour twist around each
branch point, instead of enumerating diagrams.  Exact agreement with the
diagram engine validates both pipelines.

Loop insertion acts per generator (q the fresh point, branch indices summed
over 1..2s):

    y_{f,i}       ->  (2f+1) y_{f+1,i} B_i^0(q) / y_{1,i}  -  B_i^f(q)
    B_i^f(p)      ->  (2f+1) B_i^{f+1}(p) B_i^0(q) / y_{1,i}
                      + sum_j B_{i,j}^{f,0} B_j^0(p) B_j^0(q) / y_{1,j}
    B_{i,j}^{f,g} ->  (2f+1) B_{i,j}^{f+1,g} B_i^0(q) / y_{1,i}
                      + (2g+1) B_{i,j}^{f,g+1} B_j^0(q) / y_{1,j}
                      + sum_k B_{i,k}^{f,0} B_{j,k}^{g,0} B_k^0(q) / y_{1,k}

extended as a Leibniz derivation (negative y_1 powers included).  An
undifferentiated logarithm cannot be pushed through and raises LogPresent.

The recursion itself: at each order the bracket, quadratic part plus the loop
insertion of the previous order, is a bilinear in external propagators at the
running point; the contour twist residue_step replaces each extracted pair
B_j^f x B_k^g by its expansion around branch point i, with extra convolution
terms against the kernels Z_t whenever j or k coincides with i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Expression,
    KIND_EXT,
    KIND_LOG,
    KIND_INT,
    KIND_MOMENT,
    add_into,
    ext_prop,
    gen_text,
    index_attach,
    int_prop,
    moment,
    monomial_mul,
    mul,
    substitute_point,
    term,
)
from .couplings import CouplingTable, default_table, z_poly
from .diagrams import correlator


class LogPresent(ValueError):
    """The loop insertion operator met an undifferentiated logarithm."""


class SeedMissing(ValueError):
    """The residue recursion starts at order two; lower orders are seeds."""


@dataclass(frozen=True)
class LoopContext:
    """Cut count s (branch indices run over 1..2s) and the label of the
    fresh external point the insertion introduces."""

    s: int
    new_point: str


def _delta_generator(g, ctx: LoopContext) -> Expression:
    q = ctx.new_point
    out: Expression = {}
    if g[0] == KIND_MOMENT:
        _, i, f = g
        if i == 0:
            raise ValueError(f"cannot vary the index-free moment {gen_text(g)}")
        add_into(out, term(2 * f + 1, [(moment(f + 1, i), 1), (moment(1, i), -1),
                                       (ext_prop(i, 0, q), 1)]))
        add_into(out, term(-1, [(ext_prop(i, f, q), 1)]))
    elif g[0] == KIND_EXT:
        _, i, f, p = g
        add_into(out, term(2 * f + 1, [(ext_prop(i, f + 1, p), 1), (ext_prop(i, 0, q), 1),
                                       (moment(1, i), -1)]))
        for j in range(1, 2 * ctx.s + 1):
            add_into(out, term(1, [(int_prop(i, j, f, 0), 1), (ext_prop(j, 0, p), 1),
                                   (ext_prop(j, 0, q), 1), (moment(1, j), -1)]))
    elif g[0] == KIND_INT:
        _, i, j, f, g2 = g
        add_into(out, term(2 * f + 1, [(int_prop(i, j, f + 1, g2), 1),
                                       (ext_prop(i, 0, q), 1), (moment(1, i), -1)]))
        add_into(out, term(2 * g2 + 1, [(int_prop(i, j, f, g2 + 1), 1),
                                        (ext_prop(j, 0, q), 1), (moment(1, j), -1)]))
        for k in range(1, 2 * ctx.s + 1):
            add_into(out, term(1, [(int_prop(i, k, f, 0), 1), (int_prop(j, k, g2, 0), 1),
                                   (ext_prop(k, 0, q), 1), (moment(1, k), -1)]))
    else:
        raise LogPresent(f"cannot push the loop insertion through {gen_text(g)}")
    return out


def loop_apply(e: Expression, ctx: LoopContext) -> Expression:
    """Apply the loop insertion operator as a Leibniz derivation."""
    for m in e:
        for g, _ in m:
            if g[0] == KIND_LOG:
                raise LogPresent(f"{gen_text(g)} present; it must be differentiated away first")
            if g[0] == KIND_EXT and g[3] == ctx.new_point:
                raise ValueError(f"point label {ctx.new_point!r} already in use")
    out: Expression = {}
    for m, c in e.items():
        for pos, (g, n) in enumerate(m):
            delta = _delta_generator(g, ctx)
            rest = m[:pos] + m[pos + 1:]
            base = monomial_mul(rest, ((g, n - 1),)) if n != 1 else rest
            add_into(out, mul({base: c * n}, delta))
    return out


def _z_at(t: int, i: int) -> Expression:
    return index_attach(z_poly(t), i)


def residue_step(f: int, g: int, j: int, k: int, i: int, p: str) -> Expression:
    """Contour twist around branch point i of an extracted pair B_j^f x B_k^g.

    The leading term rewires both propagators through i; the convolution
    terms against the kernels Z_t switch on when k or j coincides with i, and
    a doubled convolution when both do.  Symmetric under (j, f) <-> (k, g).
    """
    out: Expression = {}
    add_into(out, term(Fraction(1, 2), [(int_prop(j, i, f, 0), 1),
                                        (int_prop(i, k, 0, g), 1),
                                        (ext_prop(i, 0, p), 1),
                                        (moment(1, i), -1)]))
    if k == i:
        w = Fraction(2 * g + 1, 2)
        for r in range(g + 2):
            for m in range(g + 2 - r):
                t = g + 1 - r - m
                e = term(w * Fraction(1, 2 * r + 1),
                         [(ext_prop(i, r, p), 1), (int_prop(j, i, f, m), 1)])
                add_into(out, mul(e, _z_at(t, i)))
    if j == i:
        w = Fraction(2 * f + 1, 2)
        for r in range(f + 2):
            for m in range(f + 2 - r):
                t = f + 1 - r - m
                e = term(w * Fraction(1, 2 * r + 1),
                         [(ext_prop(i, r, p), 1), (int_prop(k, i, g, m), 1)])
                add_into(out, mul(e, _z_at(t, i)))
    if j == i and k == i:
        w = Fraction((2 * f + 1) * (2 * g + 1), 2)
        for r in range(f + g + 3):
            e = term(w * Fraction(1, 2 * r + 1), [(ext_prop(i, r, p), 1)])
            add_into(out, mul(e, _z_at(f + g + 2 - r, i)))
    return out


def _split_bilinear(m, x: str):
    """The two external propagators at point x in a monomial, plus the rest.

    A squared propagator counts twice; anything other than exactly two is an
    internal inconsistency of the recursion and raises.
    """
    hits: list[tuple[int, int]] = []
    rest = []
    for gen, ex in m:
        if gen[0] == KIND_EXT and gen[3] == x:
            if ex < 1 or ex > 2:
                raise ArithmeticError(f"unexpected power {ex} of {gen_text(gen)}")
            hits.extend([(gen[1], gen[2])] * ex)
        else:
            rest.append((gen, ex))
    if len(hits) != 2:
        raise ArithmeticError(
            f"monomial carries {len(hits)} propagators at {x!r}, need exactly 2")
    (j, f), (k, g) = hits
    return (j, f), (k, g), tuple(rest)


def w1_recursion(h: int, s: int, seed: Expression | None = None,
                 table: CouplingTable | None = None) -> Expression:
    """Order-h one-point function from the order-one seed by repeated loop
    insertion and contour twisting.

    The default seed is the diagram engine's order-one result; the recursion
    itself never touches the diagram catalogs for orders two and up, so
    agreement with them is a two-pipeline check.
    """
    if h < 2:
        raise SeedMissing(f"the recursion produces orders >= 2, got h = {h}")
    if s < 1:
        raise ValueError(f"need at least one cut, got s = {s}")
    table = table or default_table()
    if seed is None:
        seed = correlator(1, 1, s, table)
    x, q = "__x", "__q"
    w: dict[int, Expression] = {1: substitute_point(seed, "p1", x)}
    for order in range(2, h + 1):
        bracket: Expression = {}
        for part in range(1, order):
            add_into(bracket, mul(w[order - part], w[part]))
        inserted = loop_apply(w[order - 1], LoopContext(s=s, new_point=q))
        add_into(bracket, substitute_point(inserted, q, x))
        nxt: Expression = {}
        for mono, c in bracket.items():
            (j, f), (k, g), rest = _split_bilinear(mono, x)
            for i in range(1, 2 * s + 1):
                add_into(nxt, mul({rest: c}, residue_step(f, g, j, k, i, x)))
        w[order] = nxt
    return substitute_point(w[h], x, "p1")
