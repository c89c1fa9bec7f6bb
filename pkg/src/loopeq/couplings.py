"""Recursive computation of the vertex coupling constants.

The couplings live in the index-free moment algebra: lambda(0) = 1/y1,
lambda(1) = -(1/24) log y1, and every higher order is a Laurent polynomial in
y1 with polynomial dependence on y2, y3, ...  Differential decorations of a
coupling are indexed by multi-indices alpha = (alpha_0, alpha_1, ...) drawn
from the admissible set

    M(k, h) = { alpha : sum_j alpha_j = k,  sum_j j*alpha_j <= k + 3h - 3 }.

The decoration operator applies the first-order shift remnant

    R = sum_{f>=1} (2f+1) (y_{f+1}/y1) d/dy_f

alpha_0 times (three applications fewer at h = 0, where the seed already
carries them), followed by prod_{f>=1} (-d/dy_f)^(alpha_f).

For h >= 2 the coupling is assembled from bilinear and linear source terms.
Both sources multiply the same family of inverse-series kernels Z_n (the
formal-series inverse of sum_l y_{1+l} u^l), so the implementation groups all
sources by the kernel subscript n before multiplying: each grouped product is
then integrated monomial by monomial, the integration weight being 1/(3s)
where s is minus the y1 exponent of the monomial.  s = 0 cannot occur for a
well-formed source (every decorated coupling has strictly negative y1
degree); hitting it raises DivisionByZeroGuard rather than dividing.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import (
    Expression,
    add_into,
    constant,
    diff,
    exponent_of,
    gen_expr,
    log_moment,
    moment,
    mul,
    neg,
    scale,
    term,
)

Y1 = moment(1)


class AdmissibilityError(ValueError):
    """A multi-index lies outside M(k, h)."""


class DivisionByZeroGuard(ArithmeticError):
    """A source term produced a monomial with vanishing integration weight."""


def trim(alpha) -> tuple[int, ...]:
    """Drop trailing zeros; the canonical form of a multi-index."""
    a = tuple(alpha)
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def unit(j: int) -> tuple[int, ...]:
    """The multi-index with a single entry 1 in slot j."""
    return (0,) * j + (1,)


def admissible(k: int, h: int, alpha) -> bool:
    a = trim(alpha)
    if any(x < 0 for x in a):
        return False
    if sum(a) != k:
        return False
    return sum(j * x for j, x in enumerate(a)) <= k + 3 * h - 3


def enumerate_mset(k: int, h: int) -> list[tuple[int, ...]]:
    """All of M(k, h), trailing zeros trimmed, in lexicographic order."""
    if k < 0:
        return []
    budget = k + 3 * h - 3
    if budget < 0:
        return []
    if k == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(j: int, count: int, weight: int, prefix: list[int]) -> None:
        if count == 0:
            out.append(trim(prefix))
            return
        if j > budget:
            return
        top = count if j == 0 else min(count, weight // j)
        for a in range(top + 1):
            prefix.append(a)
            rec(j + 1, count - a, weight - j * a, prefix)
            prefix.pop()

    rec(0, k, budget, [])
    out.sort()
    return out


def count_terms(k: int, h: int) -> int:
    """|M(k, h)| from the partition generating function.

    The number of multi-indices with sum r and weight m equals the number of
    partitions of m into exactly r parts, so the count is the double sum of
    that table over m <= k+3h-3 and r <= k (alpha_0 absorbs the slack k-r).
    """
    budget = k + 3 * h - 3
    if budget < 0 or k < 0:
        return 0
    # p[m][r]: partitions of m into exactly r positive parts
    p = [[0] * (k + 1) for _ in range(budget + 1)]
    p[0][0] = 1
    for m in range(1, budget + 1):
        for r in range(1, k + 1):
            p[m][r] = p[m - 1][r - 1] + (p[m - r][r] if m >= r else 0)
    return sum(p[m][r] for m in range(budget + 1) for r in range(k + 1))


def _partitions(n: int):
    """Multiplicity tuples ((part, mult), ...) of the partitions of n."""
    def rec(rest: int, largest: int, acc: list[tuple[int, int]]):
        if rest == 0:
            yield tuple(acc)
            return
        for part in range(min(rest, largest), 0, -1):
            for m in range(rest // part, 0, -1):
                acc.append((part, m))
                yield from rec(rest - part * m, part - 1, acc)
                acc.pop()

    yield from rec(n, n, [])


def z_poly(n: int) -> Expression:
    """The kernel Z_n: coefficient of u^n in 1 / sum_{l>=0} y_{1+l} u^l.

    Explicitly a sum over partitions of n; n < 0 gives zero and Z_0 = 1/y1.
    """
    if n < 0:
        return {}
    out: Expression = {}
    for parts in _partitions(n):
        k = sum(m for _, m in parts)
        coeff = Fraction((-1) ** k * factorial(k))
        for _, m in parts:
            coeff /= factorial(m)
        pairs = [(Y1, -(k + 1))]
        pairs.extend((moment(1 + part), m) for part, m in parts)
        add_into(out, term(coeff, pairs))
    return out


def z_split(n: int, k: int) -> Expression:
    """The y1-free coefficient of y1^-(k+1) in Z_n."""
    target = -(k + 1)
    out: Expression = {}
    for m, c in z_poly(n).items():
        if exponent_of(m, Y1) == target:
            stripped = tuple(p for p in m if p[0] != Y1)
            out[stripped] = c
    return out


def a_factor(alpha) -> Fraction:
    """The half-integer weight prod_f (f + 1/2)^alpha_f."""
    out = Fraction(1)
    for f, a in enumerate(trim(alpha)):
        out *= Fraction(2 * f + 1, 2) ** a
    return out


def n_index(alpha, beta=None) -> int:
    """Kernel subscript 1 + sum_j j*alpha_j (+ sum_j j*beta_j)."""
    n = 1 + sum(j * a for j, a in enumerate(alpha))
    if beta is not None:
        n += sum(j * b for j, b in enumerate(beta))
    return n


def _remnant(e: Expression) -> Expression:
    """One application of R = sum_f (2f+1) (y_{f+1}/y1) d/dy_f."""
    orders = set()
    for m in e:
        for g, _ in m:
            if g[0] == 0:  # moment
                orders.add(g[2])
            elif g[0] == 1:  # log y1
                orders.add(1)
    out: Expression = {}
    for f in sorted(orders):
        d = diff(e, moment(f))
        if not d:
            continue
        shift = term(2 * f + 1, [(moment(f + 1), 1), (Y1, -1)])
        add_into(out, mul(d, shift))
    return out


class CouplingTable:
    """Memoized couplings lambda(h) and their decorations."""

    def __init__(self) -> None:
        self._lam: dict[int, Expression] = {
            0: gen_expr(Y1, -1),
            1: gen_expr(log_moment(), 1, Fraction(-1, 24)),
        }
        self._dal: dict[tuple[int, tuple[int, ...]], Expression] = {}

    def lam(self, h: int) -> Expression:
        if h < 0:
            raise ValueError(f"order must be >= 0, got {h}")
        e = self._lam.get(h)
        if e is None:
            e = _lambda_order(h, self)
            self._lam[h] = e
        return e

    def d_alpha(self, h: int, alpha) -> Expression:
        a = trim(alpha)
        key = (h, a)
        e = self._dal.get(key)
        if e is None:
            e = _d_alpha_compute(h, a, self)
            self._dal[key] = e
        return e


_DEFAULT_TABLE: CouplingTable | None = None


def default_table() -> CouplingTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = CouplingTable()
    return _DEFAULT_TABLE


def _d_alpha_compute(h: int, alpha: tuple[int, ...], table: CouplingTable) -> Expression:
    k = sum(alpha)
    if not admissible(k, h, alpha):
        raise AdmissibilityError(f"alpha={alpha} is not in M({k}, {h})")
    e = table.lam(h)
    remnants = (alpha[0] if alpha else 0) - (3 if h == 0 else 0)
    for _ in range(remnants):
        e = _remnant(e)
    for f in range(1, len(alpha)):
        for _ in range(alpha[f]):
            e = neg(diff(e, moment(f)))
    return e


def d_alpha(h: int, alpha, table: CouplingTable | None = None) -> Expression:
    """Decorated coupling: the alpha-derivative pattern applied to lambda(h)."""
    return (table or default_table()).d_alpha(h, alpha)


def lambda_order(h: int, table: CouplingTable | None = None) -> Expression:
    """The coupling lambda(h); h >= 2 triggers the integrated recursion."""
    return (table or default_table()).lam(h)


def _sources_by_kernel(h: int, table: CouplingTable) -> dict[int, Expression]:
    """Bilinear and linear sources of the order-h recursion, grouped by the
    subscript of the kernel Z_n each source multiplies."""
    grouped: dict[int, Expression] = {}
    for m in range(1, h):
        for j1 in range(3 * (h - m) - 1):
            d1 = table.d_alpha(h - m, unit(j1))
            if not d1:
                continue
            w1 = 2 * Fraction(2 * j1 + 1, 2)
            for j2 in range(3 * m - 1):
                d2 = table.d_alpha(m, unit(j2))
                if not d2:
                    continue
                w = w1 * Fraction(2 * j2 + 1, 2)
                n = 1 + j1 + j2
                dst = grouped.setdefault(n, {})
                add_into(dst, mul(d1, d2), w)
    for alpha in enumerate_mset(2, h - 1):
        multiplicity = 2 - sum(1 for a in alpha if a == 2)
        w = multiplicity * 2 * a_factor(alpha)
        d = table.d_alpha(h - 1, alpha)
        if not d:
            continue
        dst = grouped.setdefault(n_index(alpha), {})
        add_into(dst, d, w)
    return grouped


def _lambda_order(h: int, table: CouplingTable) -> Expression:
    if h < 2:
        return table.lam(h)
    total: Expression = {}
    for n, src in sorted(_sources_by_kernel(h, table).items()):
        if not src:
            continue
        kernel = mul(gen_expr(Y1), z_poly(n))  # y1 * Z_n
        for mono, c in mul(kernel, src).items():
            s = -exponent_of(mono, Y1)
            if s == 0:
                raise DivisionByZeroGuard(
                    f"order-{h} source produced a y1-free monomial under kernel Z_{n}")
            add_into(total, {mono: c}, Fraction(1, 3 * s))
    return total


def lambda_consistency(h: int, k_prime: int, table: CouplingTable | None = None) -> bool:
    """Check the pre-integration identity at unit target index e_{k_prime}.

    The decorated coupling d_alpha(h, e_{k_prime}) must equal the bilinear
    plus linear sources contracted with shifted kernels Z_{n - k_prime + 1}
    and weight 1/(2 k_prime + 1).  Valid for 0 <= k_prime <= 3h - 2.
    """
    if not 0 <= k_prime <= 3 * h - 2:
        raise ValueError(f"k_prime must lie in 0..{3 * h - 2}, got {k_prime}")
    table = table or default_table()
    lhs = table.d_alpha(h, unit(k_prime))
    rhs: Expression = {}
    weight = Fraction(1, 2 * k_prime + 1)
    for n, src in _sources_by_kernel(h, table).items():
        kernel = z_poly(n - k_prime + 1)
        if not kernel:
            continue
        add_into(rhs, mul(kernel, src), weight)
    return lhs == rhs


def fhat(h: int, s: int, table: CouplingTable | None = None) -> Expression:
    """Index-summed coupling: lambda(h) attached to every branch point 1..2s."""
    from .algebra import index_attach

    table = table or default_table()
    lam = table.lam(h)
    out: Expression = {}
    for i in range(1, 2 * s + 1):
        add_into(out, index_attach(lam, i))
    return out
