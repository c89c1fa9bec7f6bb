"""One-cut spectral curve backend: numeric values for the algebra generators.

For a polynomial potential V(x) = sum_n t_n x^n with a single support interval
[a1, a2], the curve is y(x) = M(x) sqrt((x - a1)(x - a2)).  The endpoints
solve the two conditions

    avg_k V'(c + L s_k) = 0,    avg_k (c + L s_k) V'(c + L s_k) = 2,

with a1 = c - L, a2 = c + L and s_k the Chebyshev nodes; the node average is
the exact contour integral for polynomial integrands.  M(x) comes from the
large-x expansion of V'(x) / sqrt((x - c)^2 - L^2).

Generator values are contour integrals around one endpoint (or two), taken
on circles with the trapezoid rule, which converges geometrically for these
analytic integrands; the point count doubles until two successive levels
agree to 1e-10 relative.  Branch index 1 is the left endpoint a1, index 2 the
right endpoint a2:

    y_{f,i}       circle integral of M(z) comp_i(z) (z - a_i)^{-f}
    B_i^f(p)      circle integral of N(p, z) / (sqrt(sigma(p)) (p - z)^2
                                       comp_i(z) (z - a_i)^{f+1})
    B_{i,j}^{f,g} double circle integral of 2 N(z, z') / ((z - z')^2
                      comp_i(z) comp_j(z') (z - a_i)^{f+1} (z' - a_j)^{g+1})

where sigma(p) = (p - a1)(p - a2), N(p, q) = pq - (a1 + a2)(p + q)/2 + a1 a2,
and comp_i is the square-root factor analytic near a_i: comp_1(z) =
i sqrt(a2 - z), comp_2(z) = sqrt(z - a1).  The two-point kernel N / (2
sqrt(sigma(p)) sqrt(sigma(q)) (p - q)^2) is exposed as bergmann(); it keeps
its double pole at coinciding points but switches to a series form of
1/sqrt(sigma(q)) around p when the points nearly coincide, so the evaluation
stays stable there.
"""
from __future__ import annotations

import cmath
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, pi

import numpy as np

from .algebra import (
    Expression,
    KIND_EXT,
    KIND_INT,
    KIND_LOG,
    KIND_MOMENT,
    evaluate,
    gen_text,
)

_REL_TOL = 1e-10
_SINGLE_CAP = 4096
_DOUBLE_CAP = 2048


class NoOneCutSolution(RuntimeError):
    """The endpoint equations did not yield a valid one-cut configuration."""


class OnCutError(ValueError):
    """A point was placed on the support interval where the curve branches."""


class ConvergenceError(RuntimeError):
    """A contour quadrature failed to stabilize below the point-count cap."""


@dataclass(frozen=True)
class Potential:
    """Polynomial potential; t[n - 1] is the coefficient of x^n."""

    t: tuple[float, ...]

    def dv_coeffs(self) -> np.ndarray:
        """Ascending coefficients of V'."""
        return np.array([n * tn for n, tn in enumerate(self.t, start=1)], dtype=float)


@dataclass(frozen=True)
class QuadratureSpec:
    """Contour defaults: radius None resolves to a quarter of the cut length."""

    radius: float | None = None
    points: int = 256


@dataclass(frozen=True)
class CurveData:
    """A solved one-cut curve."""

    potential: Potential
    a1: float
    a2: float
    center: float
    half_length: float
    m_coeffs: tuple[float, ...]
    radius: float
    points: int


def gaussian_potential() -> Potential:
    return Potential((0.0, 0.5))


def _chebyshev_nodes(n: int) -> np.ndarray:
    k = np.arange(1, n + 1)
    return np.cos((2 * k - 1) * pi / (2 * n))


def endpoint_residuals(potential: Potential, c: float, half: float) -> tuple[float, float]:
    """The two endpoint conditions at (c, L); both vanish on a solution
    (the second is stated as a residual, node average minus 2)."""
    dv = potential.dv_coeffs()
    nodes = _chebyshev_nodes(max(8, len(dv)))
    z = c + half * nodes
    vp = np.polynomial.polynomial.polyval(z, dv)
    return float(np.mean(vp)), float(np.mean(z * vp) - 2.0)


def solve_curve(potential: Potential, quad: QuadratureSpec | None = None) -> CurveData:
    """Damped Newton iteration for the endpoints, then the M polynomial.

    Raises NoOneCutSolution when the iteration stalls, the cut degenerates,
    or M has a real zero strictly inside the support.
    """
    quad = quad or QuadratureSpec()
    dv = potential.dv_coeffs()
    if len(dv) == 0 or not np.any(dv):
        raise NoOneCutSolution("potential has a vanishing derivative")
    deg = len(dv) - 1
    ddv = np.array([q * dv[q] for q in range(1, len(dv))], dtype=float)
    nodes = _chebyshev_nodes(max(8, len(dv)))

    def residuals(c: float, half: float) -> np.ndarray:
        z = c + half * nodes
        vp = np.polynomial.polynomial.polyval(z, dv)
        return np.array([np.mean(vp), np.mean(z * vp) - 2.0])

    def jacobian(c: float, half: float) -> np.ndarray:
        z = c + half * nodes
        vp = np.polynomial.polynomial.polyval(z, dv)
        vpp = np.polynomial.polynomial.polyval(z, ddv) if len(ddv) else np.zeros_like(z)
        return np.array([
            [np.mean(vpp), np.mean(vpp * nodes)],
            [np.mean(vp + z * vpp), np.mean((vp + z * vpp) * nodes)],
        ])

    c, half = 0.0, 1.0
    converged = False
    for _ in range(120):
        f = residuals(c, half)
        norm = float(np.max(np.abs(f)))
        if norm < 1e-13:
            converged = True
            break
        try:
            step = np.linalg.solve(jacobian(c, half), -f)
        except np.linalg.LinAlgError as exc:
            raise NoOneCutSolution(f"singular endpoint Jacobian at (c, L) = ({c}, {half})") from exc
        lam = 1.0
        while lam > 1e-12:
            c_new = c + lam * step[0]
            half_new = abs(half + lam * step[1])
            if float(np.max(np.abs(residuals(c_new, half_new)))) < norm:
                c, half = c_new, half_new
                break
            lam /= 2
        else:
            raise NoOneCutSolution(f"endpoint iteration stalled at (c, L) = ({c}, {half})")
    if not converged:
        raise NoOneCutSolution("endpoint iteration did not converge")
    if half < 1e-12:
        raise NoOneCutSolution(f"cut degenerated to a point at c = {c}")

    shifted = np.polynomial.Polynomial(dv)(np.polynomial.Polynomial([c, 1.0]))
    b = np.zeros(deg + 1)
    b[:len(shifted.coef)] = shifted.coef
    m_coeffs = np.zeros(max(deg, 1))
    for q in range(deg):
        total = 0.0
        m = 0
        while q + 2 * m + 1 <= deg:
            total += comb(2 * m, m) * (half / 2) ** (2 * m) * b[q + 2 * m + 1]
            m += 1
        m_coeffs[q] = total
    a1, a2 = c - half, c + half
    if deg >= 2:
        margin = 1e-8 * (a2 - a1)
        for root in np.roots(m_coeffs[::-1]):
            if abs(root.imag) < margin and a1 + margin < root.real < a2 - margin:
                raise NoOneCutSolution(f"curve degenerates: M vanishes at {root.real} inside the cut")
    return CurveData(
        potential=potential,
        a1=a1,
        a2=a2,
        center=c,
        half_length=half,
        m_coeffs=tuple(m_coeffs),
        radius=quad.radius if quad.radius is not None else 0.25 * (a2 - a1),
        points=quad.points,
    )


def _endpoint(curve: CurveData, i: int) -> float:
    if i == 1:
        return curve.a1
    if i == 2:
        return curve.a2
    raise ValueError(f"one-cut curve has branch indices 1 and 2, got {i}")


def _comp(curve: CurveData, i: int, z):
    """Square-root companion factor analytic near endpoint i."""
    if i == 1:
        return 1j * np.sqrt(curve.a2 - z)
    return np.sqrt(z - curve.a1)


def _m_eval(curve: CurveData, z):
    return np.polynomial.polynomial.polyval(z - curve.center, np.array(curve.m_coeffs))


def _kernel_num(curve: CurveData, p, q):
    return p * q - 0.5 * (curve.a1 + curve.a2) * (p + q) + curve.a1 * curve.a2


def _assert_off_cut(curve: CurveData, p: complex, what: str) -> None:
    p = complex(p)
    if abs(p.imag) < 1e-12 and curve.a1 - 1e-12 <= p.real <= curve.a2 + 1e-12:
        raise OnCutError(f"{what} = {p} lies on the support [{curve.a1}, {curve.a2}]")


def sqrt_sigma(curve: CurveData, p: complex) -> complex:
    """The off-cut square root of sigma(p) = (p - a1)(p - a2)."""
    _assert_off_cut(curve, p, "point")
    return cmath.sqrt(p - curve.a1) * cmath.sqrt(p - curve.a2)


def _contour(curve: CurveData, center: float, radius: float, integrand) -> complex:
    n = curve.points
    prev = None
    while n <= _SINGLE_CAP:
        theta = 2 * pi * np.arange(n) / n
        z = center + radius * np.exp(1j * theta)
        val = complex(np.mean(integrand(z) * (z - center)))
        if prev is not None and abs(val - prev) <= _REL_TOL * max(1.0, abs(val)):
            return val
        prev = val
        n *= 2
    raise ConvergenceError(f"contour at {center} (radius {radius}) did not stabilize by {_SINGLE_CAP} points")


def _double_contour(curve: CurveData, center1: float, r1: float, center2: float, r2: float,
                    integrand) -> complex:
    n = curve.points
    prev = None
    while n <= _DOUBLE_CAP:
        theta = 2 * pi * np.arange(n) / n
        z1 = (center1 + r1 * np.exp(1j * theta))[:, None]
        z2 = (center2 + r2 * np.exp(1j * theta))[None, :]
        val = complex(np.mean(integrand(z1, z2) * (z1 - center1) * (z2 - center2)))
        if prev is not None and abs(val - prev) <= _REL_TOL * max(1.0, abs(val)):
            return val
        prev = val
        n *= 2
    raise ConvergenceError(
        f"double contour at ({center1}, {center2}) did not stabilize by {_DOUBLE_CAP} points")


def moment_value(curve: CurveData, f: int, i: int) -> complex:
    """Numeric y_{f,i}."""
    if f < 1:
        raise ValueError(f"moment order must be >= 1, got {f}")
    a = _endpoint(curve, i)
    return _contour(curve, a, curve.radius,
                    lambda z: _m_eval(curve, z) * _comp(curve, i, z) * (z - a) ** (-f))


def ext_prop_value(curve: CurveData, i: int, f: int, p: complex) -> complex:
    """Numeric B_i^f(p) for p off the cut."""
    if f < 0:
        raise ValueError(f"derivative order must be >= 0, got {f}")
    a = _endpoint(curve, i)
    p = complex(p)
    _assert_off_cut(curve, p, "external point")
    sp = sqrt_sigma(curve, p)
    radius = min(curve.radius, 0.5 * abs(p - a))
    if radius <= 0:
        raise OnCutError(f"external point {p} coincides with endpoint {a}")
    return _contour(
        curve, a, radius,
        lambda z: _kernel_num(curve, p, z)
        / (sp * (p - z) ** 2 * _comp(curve, i, z) * (z - a) ** (f + 1)))


def int_prop_value(curve: CurveData, i: int, j: int, f: int, g: int) -> complex:
    """Numeric B_{i,j}^{f,g}; equal endpoints nest the two contours."""
    if min(f, g) < 0:
        raise ValueError(f"derivative orders must be >= 0, got {f}, {g}")
    ai = _endpoint(curve, i)
    aj = _endpoint(curve, j)
    r1 = curve.radius
    r2 = curve.radius / 2 if i == j else curve.radius

    def integrand(z1, z2):
        return 2 * _kernel_num(curve, z1, z2) / (
            (z1 - z2) ** 2 * _comp(curve, i, z1) * _comp(curve, j, z2)
            * (z1 - ai) ** (f + 1) * (z2 - aj) ** (g + 1))

    return _double_contour(curve, ai, r1, aj, r2, integrand)


def bergmann(curve: CurveData, p: complex, q: complex) -> complex:
    """The two-point kernel N(p, q) / (2 sqrt(sigma(p)) sqrt(sigma(q)) (p-q)^2).

    Symmetric, with a genuine double pole at p = q; nearly coinciding points
    are evaluated through a binomial series of 1/sqrt(sigma(q)) around p to
    avoid the unstable quotient of two close square roots.
    """
    p, q = complex(p), complex(q)
    _assert_off_cut(curve, p, "point")
    _assert_off_cut(curve, q, "point")
    delta = q - p
    if delta == 0:
        raise ValueError("the two-point kernel is singular at coinciding points")
    sigma_p = (p - curve.a1) * (p - curve.a2)
    dsigma_p = 2 * p - curve.a1 - curve.a2
    if abs(delta) < 1e-4 * (curve.a2 - curve.a1):
        u = (delta * dsigma_p + delta * delta) / sigma_p
        if abs(u) < 0.5:
            series = 0j
            coeff = 1.0 + 0j
            n = 0
            while n < 64:
                series += coeff
                if abs(coeff) <= 1e-17 * max(1.0, abs(series)):
                    break
                coeff *= u * (-0.5 - n) / (n + 1)
                n += 1
            num = sigma_p + delta * dsigma_p / 2
            return num * series / (2 * sigma_p * delta * delta)
    return _kernel_num(curve, p, q) / (2 * sqrt_sigma(curve, p) * sqrt_sigma(curve, q) * delta ** 2)


def _generator_value(curve: CurveData, g, bindings: dict[str, complex]) -> complex:
    kind = g[0]
    if kind == KIND_MOMENT:
        if g[1] == 0:
            raise ValueError(f"{gen_text(g)} carries no branch index")
        return moment_value(curve, g[2], g[1])
    if kind == KIND_LOG:
        if g[1] == 0:
            raise ValueError(f"{gen_text(g)} carries no branch index")
        return cmath.log(moment_value(curve, 1, g[1]))
    if kind == KIND_EXT:
        point = g[3]
        if point not in bindings:
            raise ValueError(f"no value bound to external point {point!r}")
        return ext_prop_value(curve, g[1], g[2], bindings[point])
    if kind == KIND_INT:
        return int_prop_value(curve, g[1], g[2], g[3], g[4])
    raise ValueError(f"unknown generator {g!r}")


def eval_expression(curve: CurveData, e: Expression, bindings: dict[str, complex] | None = None) -> complex:
    """Numeric value of an algebra expression on the curve.

    External points are bound by label.  Generator values are computed once
    each; LOOPEQ_WORKERS > 1 spreads them over a thread pool.
    """
    bindings = dict(bindings or {})
    gens = sorted({g for m in e for g, _ in m})
    workers = int(os.environ.get("LOOPEQ_WORKERS", "1"))
    if workers > 1 and len(gens) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda g: _generator_value(curve, g, bindings), gens))
    else:
        values = [_generator_value(curve, g, bindings) for g in gens]
    return evaluate(e, dict(zip(gens, values)))


def parse_config(doc: dict) -> tuple[Potential, int, QuadratureSpec]:
    """Curve configuration from a JSON document:
    {"t": [...], "s": 1, "quadrature": {"radius": ..., "points": ...}}."""
    if "t" not in doc:
        raise ValueError("configuration needs a potential coefficient list under 't'")
    t = tuple(float(x) for x in doc["t"])
    s = int(doc.get("s", 1))
    if s != 1:
        raise ValueError(f"the numeric backend covers one cut only (s = 1), got s = {s}")
    qdoc = doc.get("quadrature", {})
    quad = QuadratureSpec(
        radius=float(qdoc["radius"]) if "radius" in qdoc else None,
        points=int(qdoc.get("points", 256)),
    )
    return Potential(t), s, quad


def load_config(path: str) -> tuple[Potential, int, QuadratureSpec]:
    with open(path, encoding="utf-8") as fh:
        return parse_config(json.load(fh))
