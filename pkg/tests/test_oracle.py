"""Loop insertion and the residue recursion against the diagram expansion."""
from __future__ import annotations

from fractions import Fraction

import pytest

from loopeq.algebra import add, ext_prop, gen_expr, log_moment, moment, mul, term
from loopeq.couplings import default_table
from loopeq.diagrams import correlator
from loopeq.oracle import (
    LogPresent,
    LoopContext,
    SeedMissing,
    loop_apply,
    residue_step,
    w1_recursion,
)


@pytest.fixture(scope="module")
def table():
    return default_table()


def test_loop_apply_moment_rule():
    e = gen_expr(moment(2, 1))
    got = loop_apply(e, LoopContext(1, "q"))
    want = add(
        term(Fraction(5), [(moment(3, 1), 1), (ext_prop(1, 0, "q"), 1), (moment(1, 1), -1)]),
        term(Fraction(-1), [(ext_prop(1, 2, "q"), 1)]),
    )
    assert got == want


def test_loop_apply_is_a_derivation():
    ctx = LoopContext(1, "q")
    e1 = term(Fraction(2), [(moment(2, 1), 1), (moment(1, 1), -2)])
    e2 = term(Fraction(1, 3), [(ext_prop(2, 1, "p"), 1)])
    lhs = loop_apply(mul(e1, e2), ctx)
    rhs = add(mul(loop_apply(e1, ctx), e2), mul(e1, loop_apply(e2, ctx)))
    assert lhs == rhs


def test_loop_apply_rejects_logs():
    with pytest.raises(LogPresent):
        loop_apply(gen_expr(log_moment(1)), LoopContext(1, "q"))


def test_loop_apply_rejects_point_collision():
    e = gen_expr(ext_prop(1, 0, "q"))
    with pytest.raises(ValueError):
        loop_apply(e, LoopContext(1, "q"))


def test_loop_apply_rejects_index_free():
    with pytest.raises(ValueError):
        loop_apply(gen_expr(moment(2)), LoopContext(1, "q"))


def test_loop_insertion_matches_expansion(table):
    one = correlator(1, 1, 1, table=table)
    two = correlator(2, 1, 1, table=table)
    assert loop_apply(one, LoopContext(1, "p2")) == two


def test_residue_step_symmetric():
    assert residue_step(1, 2, 1, 2, 1, "p") == residue_step(2, 1, 2, 1, 1, "p")
    assert residue_step(0, 0, 2, 2, 2, "p") == residue_step(0, 0, 2, 2, 2, "p")


def test_recursion_needs_higher_order():
    with pytest.raises(SeedMissing):
        w1_recursion(1, 1)


def test_recursion_matches_expansion(table):
    got = w1_recursion(2, 1, table=table)
    want = correlator(1, 2, 1, table=table)
    assert got == want
