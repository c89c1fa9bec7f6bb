"""Ring operations, derivatives, projectors, and rendering."""
from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from loopeq.algebra import (
    LogDegreeError,
    UnboundGenerator,
    add,
    constant,
    diff,
    evaluate,
    exponent_of,
    ext_prop,
    gen_expr,
    gen_text,
    index_attach,
    int_prop,
    log_moment,
    moment,
    mul,
    neg,
    project_y1,
    render_json,
    render_text,
    scale,
    sub,
    substitute_point,
    term,
    y1_exponents,
)

Y1 = moment(1)
Y2 = moment(2)
Y3 = moment(3)


def test_generator_text():
    assert gen_text(moment(2)) == "y2"
    assert gen_text(moment(3, 2)) == "y3_2"
    assert gen_text(log_moment()) == "log(y1)"
    assert gen_text(ext_prop(1, 2, "p")) == "B1^2(p)"
    assert gen_text(int_prop(1, 2, 0, 1)) == "B1,2^0,1"


def test_int_prop_canonical_order():
    assert int_prop(2, 1, 1, 0) == int_prop(1, 2, 0, 1)


def test_zero_and_constant():
    assert add({}, {}) == {}
    assert constant(Fraction(0)) == {}
    assert mul(constant(Fraction(2)), constant(Fraction(3))) == constant(Fraction(6))


def test_term_rejects_bad_inverse():
    with pytest.raises(ValueError):
        term(Fraction(1), [(Y2, -1)])
    e = term(Fraction(1), [(Y1, -4)])
    assert exponent_of(next(iter(e)), Y1) == -4


def test_log_degree_guard():
    lg = gen_expr(log_moment())
    with pytest.raises(LogDegreeError):
        mul(lg, lg)
    with pytest.raises(LogDegreeError):
        term(Fraction(1), [(log_moment(), 2)])


def test_add_cancels():
    e = term(Fraction(1, 2), [(Y2, 1)])
    assert add(e, neg(e)) == {}
    assert sub(e, e) == {}


def test_scale():
    e = term(Fraction(3), [(Y2, 2)])
    assert scale(e, Fraction(1, 3)) == term(Fraction(1), [(Y2, 2)])
    assert scale(e, Fraction(0)) == {}


def test_diff_power_rule():
    e = term(Fraction(1), [(Y2, 3), (Y1, -2)])
    got = diff(e, Y2)
    assert got == term(Fraction(3), [(Y2, 2), (Y1, -2)])
    got = diff(e, Y1)
    assert got == term(Fraction(-2), [(Y2, 3), (Y1, -3)])


def test_diff_log_rule():
    assert diff(gen_expr(log_moment()), Y1) == term(Fraction(1), [(Y1, -1)])
    e = mul(term(Fraction(2), [(Y2, 1)]), gen_expr(log_moment()))
    assert diff(e, Y1) == term(Fraction(2), [(Y2, 1), (Y1, -1)])


def test_diff_unrelated_is_zero():
    assert diff(term(Fraction(5), [(Y2, 1)]), Y3) == {}


def test_projector_keeps_factor():
    e = add(term(Fraction(1), [(Y2, 1), (Y1, -3)]), term(Fraction(2), [(Y3, 1)]))
    p3 = project_y1(e, 3)
    assert p3 == term(Fraction(1), [(Y2, 1), (Y1, -3)])
    assert project_y1(e, 0) == term(Fraction(2), [(Y3, 1)])
    assert y1_exponents(e) == {-3, 0}


def test_evaluate_and_unbound():
    e = mul(term(Fraction(1, 2), [(Y2, 2)]), term(Fraction(1), [(Y1, -1)]))
    env = {Y2: 3.0, Y1: 2.0}
    assert evaluate(e, env) == pytest.approx(2.25)
    with pytest.raises(UnboundGenerator) as info:
        evaluate(add(e, gen_expr(Y3)), {Y1: 2.0})
    assert set(info.value.generators) == {Y2, Y3}


def test_evaluate_log_fallback():
    v = evaluate(gen_expr(log_moment(1)), {moment(1, 1): 2.0})
    assert v == pytest.approx(cmath.log(2.0))


def test_substitute_point_merges():
    e = add(gen_expr(ext_prop(1, 0, "p")), gen_expr(ext_prop(1, 0, "q")))
    merged = substitute_point(e, "q", "p")
    assert merged == scale(gen_expr(ext_prop(1, 0, "p")), Fraction(2))


def test_index_attach_strict():
    e = term(Fraction(1), [(Y2, 1), (Y1, -2)])
    attached = index_attach(e, 2)
    assert attached == term(Fraction(1), [(moment(2, 2), 1), (moment(1, 2), -2)])
    with pytest.raises(ValueError):
        index_attach(attached, 1)


def test_render_text_form():
    e = add(term(Fraction(-21, 160), [(Y2, 3), (Y1, -5)]), term(Fraction(29, 128), [(Y3, 1), (Y2, 1), (Y1, -4)]))
    text = render_text(e)
    assert text == "- 21/160 * y2^3 * y1^-5 + 29/128 * y3 * y2 * y1^-4"


def test_render_json_round_shape():
    import json

    doc = json.loads(render_json(term(Fraction(1, 3), [(Y2, 2)])))
    assert doc[0]["coefficient"] == "1/3"
    assert doc[0]["exponents"][0]["exp"] == 2


_coeffs = st.fractions(min_value=-5, max_value=5).filter(lambda c: c != 0)


@st.composite
def expressions(draw):
    e = {}
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        factors = []
        for _ in range(draw(st.integers(min_value=0, max_value=3))):
            f = draw(st.integers(min_value=1, max_value=4))
            exp = draw(st.integers(min_value=-3, max_value=3).filter(lambda x: x != 0)) \
                if f == 1 else draw(st.integers(min_value=1, max_value=3))
            factors.append((moment(f), exp))
        e = add(e, term(draw(_coeffs), factors))
    return e


@settings(max_examples=60, deadline=None)
@given(expressions(), expressions(), expressions())
def test_ring_axioms(e1, e2, e3):
    assert add(e1, e2) == add(e2, e1)
    assert mul(e1, e2) == mul(e2, e1)
    assert mul(e1, add(e2, e3)) == add(mul(e1, e2), mul(e1, e3))
    assert mul(mul(e1, e2), e3) == mul(e1, mul(e2, e3))


@settings(max_examples=60, deadline=None)
@given(expressions(), expressions(), st.integers(min_value=1, max_value=4))
def test_diff_leibniz_and_commute(e1, e2, f):
    var = moment(f)
    lhs = diff(mul(e1, e2), var)
    rhs = add(mul(diff(e1, var), e2), mul(e1, diff(e2, var)))
    assert lhs == rhs
    assert diff(diff(e1, Y1), var) == diff(diff(e1, var), Y1)


@settings(max_examples=60, deadline=None)
@given(expressions())
def test_projectors_resolve_identity(e):
    rebuilt = {}
    for n in y1_exponents(e):
        rebuilt = add(rebuilt, project_y1(e, -n))
    assert rebuilt == e
