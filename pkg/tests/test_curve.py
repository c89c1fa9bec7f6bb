"""One-cut curve solving, contour moments, and kernel values."""
from __future__ import annotations

import cmath

import pytest

from loopeq.algebra import ext_prop, gen_expr, int_prop, moment, term
from loopeq.curve import (
    NoOneCutSolution,
    OnCutError,
    Potential,
    QuadratureSpec,
    bergmann,
    endpoint_residuals,
    eval_expression,
    ext_prop_value,
    gaussian_potential,
    int_prop_value,
    moment_value,
    parse_config,
    solve_curve,
    sqrt_sigma,
)
from fractions import Fraction


@pytest.fixture(scope="module")
def gauss():
    return solve_curve(gaussian_potential())


def test_gaussian_endpoints(gauss):
    assert gauss.a1 == pytest.approx(-2.0, abs=1e-12)
    assert gauss.a2 == pytest.approx(2.0, abs=1e-12)
    res = endpoint_residuals(gauss.potential, gauss.center, gauss.half_length)
    assert max(abs(res[0]), abs(res[1])) < 1e-12
    assert gauss.m_coeffs == pytest.approx((1.0,))


def test_gaussian_right_moments(gauss):
    wants = {1: 2.0, 2: 0.25, 3: -1 / 64, 4: 1 / 512, 5: -5 / 16384}
    for f, want in wants.items():
        assert moment_value(gauss, f, 2) == pytest.approx(want, abs=1e-10)


def test_gaussian_left_moments(gauss):
    wants = {1: 2j, 2: -0.25j, 3: -1j / 64, 4: -1j / 512}
    for f, want in wants.items():
        assert moment_value(gauss, f, 1) == pytest.approx(want, abs=1e-10)


def test_external_kernel_closed_form(gauss):
    # around the right endpoint the f = 0 value is N(p, a2) residue over
    # the local square root: 1 / (sqrt(p^2 - 4) (p - 2)) for the quadratic well
    for p in (3.0, 4.5, 2.0 + 1.5j):
        want = 1 / (cmath.sqrt(p - 2) * cmath.sqrt(p + 2) * (p - 2))
        assert ext_prop_value(gauss, 2, 0, p) == pytest.approx(want, abs=1e-10)


def test_external_kernel_decay(gauss):
    near = abs(ext_prop_value(gauss, 2, 0, 4.0))
    far = abs(ext_prop_value(gauss, 2, 0, 40.0))
    assert far < near / 50


def test_internal_kernel_symmetry(gauss):
    assert int_prop_value(gauss, 1, 2, 1, 0) == pytest.approx(
        int_prop_value(gauss, 2, 1, 0, 1), abs=1e-10)
    assert int_prop_value(gauss, 1, 2, 0, 0) == pytest.approx(0.25j, abs=1e-10)


def test_on_cut_rejected(gauss):
    with pytest.raises(OnCutError):
        sqrt_sigma(gauss, 0.5)
    with pytest.raises(OnCutError):
        ext_prop_value(gauss, 1, 0, -1.0)
    with pytest.raises(OnCutError):
        bergmann(gauss, 3.0, 1.0)


def test_bergmann_symmetry_and_decay(gauss):
    p, q = 3.1 + 0.4j, -2.7 + 0.1j
    assert bergmann(gauss, p, q) == bergmann(gauss, q, p)
    scale = abs(bergmann(gauss, 50.0, q) * 50.0 ** 2)
    scale2 = abs(bergmann(gauss, 100.0, q) * 100.0 ** 2)
    assert scale == pytest.approx(scale2, rel=0.1)


def test_bergmann_series_overlap(gauss):
    p = 3.2 + 0.3j
    for eps in (3e-4, 3.9e-4):
        q = p + eps
        direct = (p * q - 4) / (2 * sqrt_sigma(gauss, p) * sqrt_sigma(gauss, q) * (q - p) ** 2)
        assert bergmann(gauss, p, q) == pytest.approx(direct, rel=1e-10)


def test_bergmann_coincident_rejected(gauss):
    with pytest.raises(ValueError):
        bergmann(gauss, 3.0, 3.0)


def test_quartic_potential_solves():
    data = solve_curve(Potential((0.0, -0.5, 0.0, 0.125)))
    res = endpoint_residuals(data.potential, data.center, data.half_length)
    assert max(abs(res[0]), abs(res[1])) < 1e-12
    assert data.a1 == pytest.approx(-data.a2, abs=1e-12)
    assert moment_value(data, 1, 2).imag == pytest.approx(0.0, abs=1e-10)


def test_deep_double_well_rejected():
    with pytest.raises(NoOneCutSolution):
        solve_curve(Potential((0.0, -1.0, 0.0, 0.125)))


def test_flat_potential_rejected():
    with pytest.raises(NoOneCutSolution):
        solve_curve(Potential((0.0,)))


def test_eval_expression_binding(gauss):
    e = term(Fraction(1, 2), [(moment(1, 2), -1), (ext_prop(2, 0, "p1"), 2)])
    got = eval_expression(gauss, e, {"p1": 3.0})
    want = 0.5 * (1 / 2.0) * ext_prop_value(gauss, 2, 0, 3.0) ** 2
    assert got == pytest.approx(want, abs=1e-12)
    with pytest.raises(ValueError):
        eval_expression(gauss, gen_expr(ext_prop(2, 0, "p9")))
    with pytest.raises(ValueError):
        eval_expression(gauss, gen_expr(moment(2)))


def test_eval_expression_int_prop(gauss):
    e = gen_expr(int_prop(2, 2, 0, 0))
    assert eval_expression(gauss, e) == pytest.approx(-0.125, abs=1e-10)


def test_parse_config():
    potential, s, quad = parse_config({"t": [0, 0.5], "s": 1, "quadrature": {"points": 512}})
    assert potential == gaussian_potential()
    assert s == 1 and quad == QuadratureSpec(radius=None, points=512)
    with pytest.raises(ValueError):
        parse_config({"t": [0, 0.5], "s": 2})
    with pytest.raises(ValueError):
        parse_config({"s": 1})
