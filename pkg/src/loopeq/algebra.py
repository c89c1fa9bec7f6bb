"""Sparse exact algebra for loop-equation computations.

Everything downstream (the coupling recursion, diagram assembly, the residue
recursion) manipulates elements of one commutative algebra over Q whose
generators are

    y_{f,i}        branch-point moments, f = 1, 2, 3, ...
    log y_{1,i}    one logarithm per branch point
    B_i^f(p)       external-line propagator at the point labeled p
    B_{i,j}^{f,g}  internal-line propagator (a symmetric object)

i, j are branch-point indices 1..2s; i = 0 marks an index-free template
variable (y_f before any branch point is chosen).  Only the y_{1,i} may carry
negative exponents: the algebra is a Laurent ring in the y_1's and a plain
polynomial ring in everything else.  log y_{1,i} never occurs with exponent
other than 1; a product that would square it raises LogDegreeError.

Representation.  A generator is a plain tuple whose first entry is a kind tag
(tuples hash and sort fast, and the tag keeps kinds apart):

    (0, i, f)         y_{f,i}
    (1, i)            log y_{1,i}
    (2, i, f, p)      B_i^f(p), p a string label
    (3, i, j, f, g)   B_{i,j}^{f,g}, stored with (i, f) <= (j, g)

A monomial is a tuple of (generator, exponent) pairs sorted by generator,
exponents nonzero.  An expression is a dict {monomial: Fraction} with no zero
coefficients; {} is zero and the empty monomial () carries constants.
Expressions are plain dicts treated as immutable values: every operation
returns a fresh dict and never mutates its arguments.
"""
from __future__ import annotations

import cmath
import json
from fractions import Fraction
from typing import Iterable, Mapping

KIND_MOMENT = 0
KIND_LOG = 1
KIND_EXT = 2
KIND_INT = 3

Generator = tuple
Monomial = tuple
Expression = dict

_ZERO = Fraction(0)


class LogDegreeError(ValueError):
    """A product or power would raise a logarithm above degree one."""


class UnboundGenerator(KeyError):
    """Numeric evaluation hit generators missing from the environment."""

    def __init__(self, generators: Iterable[Generator]):
        self.generators = tuple(sorted(generators))
        names = ", ".join(gen_text(g) for g in self.generators)
        super().__init__(f"no value bound for: {names}")


def moment(f: int, i: int = 0) -> Generator:
    """The moment y_{f,i}; i = 0 is the index-free template variable."""
    if f < 1:
        raise ValueError(f"moment order must be >= 1, got {f}")
    if i < 0:
        raise ValueError(f"branch-point index must be >= 0, got {i}")
    return (KIND_MOMENT, i, f)


def log_moment(i: int = 0) -> Generator:
    """log y_{1,i}."""
    if i < 0:
        raise ValueError(f"branch-point index must be >= 0, got {i}")
    return (KIND_LOG, i)


def ext_prop(i: int, f: int, point: str) -> Generator:
    """External propagator B_i^f(point)."""
    if i < 1:
        raise ValueError(f"propagator branch index must be >= 1, got {i}")
    if f < 0:
        raise ValueError(f"derivative order must be >= 0, got {f}")
    return (KIND_EXT, i, f, point)


def int_prop(i: int, j: int, f: int, g: int) -> Generator:
    """Internal propagator B_{i,j}^{f,g}; the symmetric pair is canonicalized."""
    if min(i, j) < 1:
        raise ValueError(f"propagator branch indices must be >= 1, got {i},{j}")
    if min(f, g) < 0:
        raise ValueError(f"derivative orders must be >= 0, got {f},{g}")
    if (j, g) < (i, f):
        i, j, f, g = j, i, g, f
    return (KIND_INT, i, j, f, g)


def _check_power(g: Generator, e: int) -> None:
    if e == 0:
        return
    if g[0] == KIND_LOG:
        if e != 1:
            raise LogDegreeError(f"{gen_text(g)} cannot occur with exponent {e}")
    elif e < 0 and not (g[0] == KIND_MOMENT and g[2] == 1):
        raise ValueError(f"negative exponent {e} on {gen_text(g)}; only y_1 moments are invertible")


def monomial_of(pairs: Iterable[tuple[Generator, int]]) -> Monomial:
    """Canonical monomial from (generator, exponent) pairs; merges duplicates."""
    acc: dict[Generator, int] = {}
    for g, e in pairs:
        acc[g] = acc.get(g, 0) + e
    out = []
    for g in sorted(acc):
        e = acc[g]
        if e == 0:
            continue
        _check_power(g, e)
        out.append((g, e))
    return tuple(out)


def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    """Product of two canonical monomials (merge of sorted pair lists)."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        g1, e1 = m1[i]
        g2, e2 = m2[j]
        if g1 == g2:
            e = e1 + e2
            if e:
                _check_power(g1, e)
                out.append((g1, e))
            i += 1
            j += 1
        elif g1 < g2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def exponent_of(m: Monomial, g: Generator) -> int:
    for gen, e in m:
        if gen == g:
            return e
        if gen > g:
            return 0
    return 0


def constant(c) -> Expression:
    c = Fraction(c)
    return {(): c} if c else {}


def gen_expr(g: Generator, exp: int = 1, coeff=1) -> Expression:
    """Expression holding a single power of a single generator."""
    c = Fraction(coeff)
    if not c:
        return {}
    if exp == 0:
        return {(): c}
    _check_power(g, exp)
    return {((g, exp),): c}


def term(coeff, pairs: Iterable[tuple[Generator, int]]) -> Expression:
    c = Fraction(coeff)
    if not c:
        return {}
    return {monomial_of(pairs): c}


def add(*exprs: Expression) -> Expression:
    out: Expression = {}
    for e in exprs:
        for m, c in e.items():
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def add_into(dst: Expression, e: Expression, factor=1) -> None:
    """In-place accumulation dst += factor * e (dst is a working dict)."""
    f = Fraction(factor)
    if not f:
        return
    for m, c in e.items():
        s = dst.get(m, _ZERO) + f * c
        if s:
            dst[m] = s
        else:
            dst.pop(m, None)


def scale(e: Expression, factor) -> Expression:
    f = Fraction(factor)
    if not f:
        return {}
    return {m: f * c for m, c in e.items()}


def neg(e: Expression) -> Expression:
    return {m: -c for m, c in e.items()}


def sub(a: Expression, b: Expression) -> Expression:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, _ZERO) - c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def mul(a: Expression, b: Expression) -> Expression:
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out: Expression = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = monomial_mul(ma, mb)
            s = out.get(m, _ZERO) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def diff(e: Expression, var: Generator) -> Expression:
    """Partial derivative with respect to a moment generator.

    The power rule covers negative exponents on y_1 moments; the logarithm
    differentiates as d log y_{1,i} / d y_{1,i} = 1 / y_{1,i}, with the fresh
    inverse power merged into the monomial.
    """
    if var[0] != KIND_MOMENT:
        raise ValueError(f"can only differentiate by a moment, got {gen_text(var)}")
    logvar = (KIND_LOG, var[1]) if var[2] == 1 else None
    inv = ((var, -1),)
    out: Expression = {}
    for m, c in e.items():
        for idx, (g, ex) in enumerate(m):
            if g == var:
                rest = m[:idx] + m[idx + 1:]
                nm = monomial_mul(rest, ((g, ex - 1),)) if ex != 1 else rest
                s = out.get(nm, _ZERO) + c * ex
                if s:
                    out[nm] = s
                else:
                    out.pop(nm, None)
            elif g == logvar:
                rest = m[:idx] + m[idx + 1:]
                nm = monomial_mul(rest, inv)
                s = out.get(nm, _ZERO) + c
                if s:
                    out[nm] = s
                else:
                    out.pop(nm, None)
    return out


def project_y1(e: Expression, r: int) -> Expression:
    """P_r: keep the terms whose index-free y_1 exponent is exactly -r.

    The y_1^(-r) factor itself is kept, so summing P_r over all occurring r
    reproduces the expression.
    """
    y1 = (KIND_MOMENT, 0, 1)
    target = -r
    return {m: c for m, c in e.items() if exponent_of(m, y1) == target}


def y1_exponents(e: Expression) -> set[int]:
    y1 = (KIND_MOMENT, 0, 1)
    return {exponent_of(m, y1) for m in e}


def evaluate(e: Expression, env: Mapping[Generator, complex]) -> complex:
    """Numeric value of an expression under a generator environment.

    A log generator missing from env falls back to cmath.log of the bound
    y_{1,i} value.  All unbound generators are collected and reported at once.
    """
    vals: dict[Generator, complex] = {}
    missing: set[Generator] = set()
    for m in e:
        for g, _ in m:
            if g in vals or g in missing:
                continue
            if g in env:
                vals[g] = complex(env[g])
            elif g[0] == KIND_LOG and (KIND_MOMENT, g[1], 1) in env:
                vals[g] = cmath.log(complex(env[(KIND_MOMENT, g[1], 1)]))
            else:
                missing.add(g)
    if missing:
        raise UnboundGenerator(missing)
    total = 0j
    for m, c in e.items():
        v = complex(float(c.numerator) / float(c.denominator))
        for g, ex in m:
            v *= vals[g] ** ex
        total += v
    return total


def substitute_point(e: Expression, old: str, new: str) -> Expression:
    """Relabel the point of every external propagator at `old` to `new`.

    Propagators that collide after the relabeling merge exponents, and
    coefficients of colliding monomials are summed.
    """
    out: Expression = {}
    for m, c in e.items():
        if any(g[0] == KIND_EXT and g[3] == old for g, _ in m):
            pairs = [((KIND_EXT, g[1], g[2], new) if g[0] == KIND_EXT and g[3] == old else g, ex)
                     for g, ex in m]
            nm = monomial_of(pairs)
        else:
            nm = m
        s = out.get(nm, _ZERO) + c
        if s:
            out[nm] = s
        else:
            out.pop(nm, None)
    return out


def index_attach(e: Expression, i: int) -> Expression:
    """Attach branch-point index i to every index-free moment and logarithm."""
    if i < 1:
        raise ValueError(f"branch-point index must be >= 1, got {i}")
    out: Expression = {}
    for m, c in e.items():
        pairs = []
        for g, ex in m:
            if g[0] == KIND_MOMENT:
                if g[1] != 0:
                    raise ValueError(f"{gen_text(g)} already carries an index")
                pairs.append(((KIND_MOMENT, i, g[2]), ex))
            elif g[0] == KIND_LOG:
                if g[1] != 0:
                    raise ValueError(f"{gen_text(g)} already carries an index")
                pairs.append(((KIND_LOG, i), ex))
            else:
                raise ValueError(f"cannot index-attach through {gen_text(g)}")
        out[monomial_of(pairs)] = c
    return out


def _compare_monomials(m1: Monomial, m2: Monomial) -> int:
    d1 = sum(e for _, e in m1)
    d2 = sum(e for _, e in m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 or j < n2:
        g1 = m1[i][0] if i < n1 else None
        g2 = m2[j][0] if j < n2 else None
        if g1 is not None and (g2 is None or g1 < g2):
            e1, e2 = m1[i][1], 0
            i += 1
        elif g2 is not None and (g1 is None or g2 < g1):
            e1, e2 = 0, m2[j][1]
            j += 1
        else:
            e1, e2 = m1[i][1], m2[j][1]
            i += 1
            j += 1
        if e1 != e2:
            return -1 if e1 < e2 else 1
    return 0


def canonical_items(e: Expression) -> list[tuple[Monomial, Fraction]]:
    """Terms in the canonical order: by total degree, then by the dense
    exponent vector over the generator universe (absent generators count 0)."""
    import functools
    key = functools.cmp_to_key(lambda a, b: _compare_monomials(a[0], b[0]))
    return sorted(e.items(), key=key)


def gen_text(g: Generator) -> str:
    kind = g[0]
    if kind == KIND_MOMENT:
        return f"y{g[2]}" if g[1] == 0 else f"y{g[2]}_{g[1]}"
    if kind == KIND_LOG:
        return "log(y1)" if g[1] == 0 else f"log(y1_{g[1]})"
    if kind == KIND_EXT:
        return f"B{g[1]}^{g[2]}({g[3]})"
    if kind == KIND_INT:
        return f"B{g[1]},{g[2]}^{g[3]},{g[4]}"
    raise ValueError(f"unknown generator {g!r}")


def render_text(e: Expression) -> str:
    """Canonical single-line text form, e.g. '- 21/160 * y2^3 * y1^-5 + ...'."""
    items = canonical_items(e)
    if not items:
        return "0"
    parts = []
    for m, c in items:
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        factors = [f"{a.numerator}/{a.denominator}"]
        for g, ex in reversed(m):
            factors.append(gen_text(g) if ex == 1 else f"{gen_text(g)}^{ex}")
        parts.append(f"{sign} " + " * ".join(factors))
    return " ".join(parts)


def _gen_descriptor(g: Generator) -> dict:
    kind = g[0]
    if kind == KIND_MOMENT:
        return {"kind": "moment", "i": g[1], "f": g[2]}
    if kind == KIND_LOG:
        return {"kind": "log", "i": g[1]}
    if kind == KIND_EXT:
        return {"kind": "ext", "i": g[1], "f": g[2], "point": g[3]}
    if kind == KIND_INT:
        return {"kind": "int", "i": g[1], "j": g[2], "f": g[3], "g": g[4]}
    raise ValueError(f"unknown generator {g!r}")


def render_json(e: Expression) -> str:
    """Canonical JSON form: a list of {coefficient, exponents} objects."""
    out = []
    for m, c in canonical_items(e):
        out.append({
            "coefficient": f"{c.numerator}/{c.denominator}",
            "exponents": [{"generator": _gen_descriptor(g), "exp": ex} for g, ex in m],
        })
    return json.dumps(out, sort_keys=True)
