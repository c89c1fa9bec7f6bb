"""Connected decorated-multigraph expansion of correlators.

The order-h part of a k-point correlator is a finite sum over connected
multigraphs.  A vertex carries a structure (h_v, alpha): its coupling order
and a leg multi-index, alpha[f] legs of class f for f = 0, 1, 2, ...  The
vertex factor is the decorated coupling d_alpha(h_v, alpha).  Each internal
edge joins two legs and becomes an internal propagator B_{i,j}^{f,g}; each of
the k external points occupies one leg and becomes B_i^f(p).  Euler counting
fixes the shape: n vertices of total coupling order H are joined by
E = n - 1 + (h - H) edges and expose 2E + k legs.

Vertices at coupling order 0 need at least three legs, at order 1 at least
one; the leg multi-index must lie in M(k_v, h_v).  Four small (k, h) pairs
fall outside the expansion altogether and raise ExcludedCase.

Per diagram the multiplicity is computed along two independent routes:

* orbit route (symmetry_factor): weight = 1 / (vertex stabilizer x edge
  symmetry), the edge symmetry being prod m! over repeated edges with an
  extra 2^m for same-class self-loops;
* pairing route (wick_weights): count labeled leg configurations, an ordered
  choice of legs for the external points followed by a perfect matching of
  the rest, that canonicalize to the diagram, then divide by the c vertex
  copy permutations and the d leg relabelings.

The two implementations share nothing beyond the structure listing, so their
diagram-by-diagram agreement is a meaningful consistency check.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, perm

from .algebra import (
    Expression,
    add_into,
    constant,
    ext_prop,
    index_attach,
    int_prop,
    monomial_of,
    mul,
)
from .couplings import CouplingTable, admissible, default_table, enumerate_mset, trim

_EXCLUDED = {(0, 0), (1, 0), (2, 0), (0, 1)}

DEFAULT_WICK_BUDGET = 2_000_000


class ExcludedCase(ValueError):
    """The requested (k, h) sits outside the multigraph expansion."""


class WickBudgetError(RuntimeError):
    """A labeled-pairing run would exceed its configuration budget."""


@dataclass(frozen=True, order=True)
class VertexStructure:
    """Coupling order h and leg multi-index alpha (alpha[f] legs of class f)."""

    h: int
    alpha: tuple[int, ...]

    @property
    def legs(self) -> int:
        return sum(self.alpha)


@dataclass(frozen=True, order=True)
class Diagram:
    """A connected multigraph in canonical form.

    vertices is nondecreasing.  An edge joins two leg classes,
    ((v, f), (w, g)) with the pair and the edge list sorted.  externals holds
    (point, vertex, f) triples sorted by point.  Instances produced by
    enumerate_diagrams are canonical: lexicographically minimal over
    permutations of identical-structure vertices.
    """

    vertices: tuple[VertexStructure, ...]
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    externals: tuple[tuple[str, int, int], ...]


@dataclass(frozen=True)
class SymFactor:
    """Diagram multiplicity bookkeeping.

    weight = pi / (c * d): pi labeled leg pairings reaching this canonical
    form, c permutations of identical vertex copies, d leg relabelings inside
    each class.  The orbit route computes weight directly and recovers pi.
    """

    pi: int
    c: int
    d: int
    weight: Fraction


def vertex_admissible(h: int, alpha) -> bool:
    """Whether (h, alpha) may appear as a vertex structure."""
    a = trim(alpha)
    k = sum(a)
    if not admissible(k, h, a):
        return False
    if h == 0:
        return k >= 3
    if h == 1:
        return k >= 1
    return True


def _validate_kh(k: int, h: int) -> None:
    if k < 0 or h < 0:
        raise ValueError(f"need k, h >= 0, got ({k}, {h})")
    if (k, h) in _EXCLUDED:
        raise ExcludedCase(f"the expansion does not cover (k, h) = ({k}, {h})")


def _point_names(k: int) -> tuple[str, ...]:
    return tuple(f"p{m}" for m in range(1, k + 1))


def _double_factorial(n: int) -> int:
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _leg_minimum(h: int, n: int) -> int:
    base = 3 if h == 0 else (1 if h == 1 else 0)
    return max(base, 1) if n >= 2 else base


def _structure_multisets(n: int, order_sum: int, leg_sum: int) -> list[tuple[VertexStructure, ...]]:
    """Nondecreasing admissible structure tuples with the given order and leg
    totals; a vertex with no legs is only allowed alone (it cannot connect)."""
    out: list[tuple[VertexStructure, ...]] = []
    acc: list[VertexStructure] = []

    def rec(pos: int, h_rem: int, s_rem: int, prev: VertexStructure | None) -> None:
        if pos == n:
            if h_rem == 0 and s_rem == 0:
                out.append(tuple(acc))
            return
        for h_v in range(h_rem + 1):
            for k_v in range(_leg_minimum(h_v, n), s_rem + 1):
                for alpha in enumerate_mset(k_v, h_v):
                    st = VertexStructure(h_v, alpha)
                    if prev is not None and st < prev:
                        continue
                    acc.append(st)
                    rec(pos + 1, h_rem - h_v, s_rem - k_v, st)
                    acc.pop()

    rec(0, order_sum, leg_sum, None)
    return out


def _iter_structures(k: int, h: int):
    """Yield (structure multiset, edge count) over the whole expansion."""
    nmax = max(1, 2 * h + k - 2)
    for n in range(1, nmax + 1):
        for order_sum in range(h + 1):
            n_edges = n - 1 + (h - order_sum)
            for structs in _structure_multisets(n, order_sum, 2 * n_edges + k):
                yield structs, n_edges


def _slots_of(structs) -> tuple[list[tuple[int, int]], list[int]]:
    """Occupied leg classes (v, f) in ascending order with their capacities."""
    slots: list[tuple[int, int]] = []
    caps: list[int] = []
    for v, st in enumerate(structs):
        for f, a in enumerate(st.alpha):
            if a > 0:
                slots.append((v, f))
                caps.append(a)
    return slots, caps


def _external_assignments(caps: list[int], k: int) -> list[tuple[int, ...]]:
    """Ordered point-to-slot-index assignments respecting capacities."""
    out: list[tuple[int, ...]] = []
    used = [0] * len(caps)
    acc: list[int] = []

    def rec(m: int) -> None:
        if m == k:
            out.append(tuple(acc))
            return
        for i, cap in enumerate(caps):
            if used[i] < cap:
                used[i] += 1
                acc.append(i)
                rec(m + 1)
                acc.pop()
                used[i] -= 1

    rec(0)
    return out


def _norm_edge(a: tuple[int, int], b: tuple[int, int]):
    return (a, b) if a <= b else (b, a)


def _edge_multisets(residual: list[int], slots) -> list[tuple]:
    """All edge multisets saturating the residual leg counts, each exactly
    once: the first unsaturated class has its edges fixed completely (shares
    to later classes, leftover paired off as self-loops) before recursing."""
    out: list[tuple] = []
    edges: list = []
    nslots = len(residual)

    def rec() -> None:
        s = -1
        for i in range(nslots):
            if residual[i] > 0:
                s = i
                break
        if s < 0:
            out.append(tuple(sorted(edges)))
            return
        r = residual[s]
        residual[s] = 0
        partners = [t for t in range(s + 1, nslots) if residual[t] > 0]

        def place(idx: int, rem: int) -> None:
            if idx == len(partners):
                if rem % 2:
                    return
                half = rem // 2
                for _ in range(half):
                    edges.append((slots[s], slots[s]))
                rec()
                for _ in range(half):
                    edges.pop()
                return
            t = partners[idx]
            for m in range(min(rem, residual[t]) + 1):
                residual[t] -= m
                for _ in range(m):
                    edges.append(_norm_edge(slots[s], slots[t]))
                place(idx + 1, rem - m)
                for _ in range(m):
                    edges.pop()
                residual[t] += m

        place(0, r)
        residual[s] = r

    rec()
    return out


def _connected(n: int, edges) -> bool:
    if n <= 1:
        return True
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for (v, _), (w, _) in edges:
        adj[v].add(w)
        adj[w].add(v)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def _block_permutations(structs) -> list[tuple[int, ...]]:
    """Vertex permutations preserving the sorted structure tuple."""
    blocks = []
    i = 0
    n = len(structs)
    while i < n:
        j = i
        while j < n and structs[j] == structs[i]:
            j += 1
        blocks.append(range(i, j))
        i = j
    out = []
    for combo in itertools.product(*(itertools.permutations(b) for b in blocks)):
        sigma = [0] * n
        for block, permuted in zip(blocks, combo):
            for off, target in zip(block, permuted):
                sigma[off] = target
        out.append(tuple(sigma))
    return out


def _relabel(sigma, edges, externals):
    es = tuple(sorted(_norm_edge((sigma[v], f), (sigma[w], g)) for (v, f), (w, g) in edges))
    xs = tuple(sorted((p, sigma[v], f) for p, v, f in externals))
    return es, xs


def _canonical(edges, externals, perms):
    best = None
    for sigma in perms:
        cand = _relabel(sigma, edges, externals)
        if best is None or cand < best:
            best = cand
    return best


def enumerate_diagrams(k: int, h: int) -> tuple[Diagram, ...]:
    """All connected diagrams of the k-point order-h expansion, canonical and
    sorted.  Raises ExcludedCase for the four pairs the expansion skips."""
    _validate_kh(k, h)
    points = _point_names(k)
    found: set[Diagram] = set()
    for structs, _ in _iter_structures(k, h):
        slots, caps = _slots_of(structs)
        n = len(structs)
        perms = _block_permutations(structs)
        cache: dict[tuple, tuple] = {}
        for ext in _external_assignments(caps, k):
            residual = list(caps)
            for i in ext:
                residual[i] -= 1
            externals = tuple(sorted((points[m], *slots[i]) for m, i in enumerate(ext)))
            for edges in _edge_multisets(residual, slots):
                if not _connected(n, edges):
                    continue
                key = (edges, externals)
                canon = cache.get(key)
                if canon is None:
                    canon = _canonical(edges, externals, perms)
                    cache[key] = canon
                found.add(Diagram(structs, canon[0], canon[1]))
    return tuple(sorted(found))


def symmetry_factor(diagram: Diagram) -> SymFactor:
    """Orbit-route multiplicity; the pairing count pi is recovered from it
    and must come out integral."""
    perms = _block_permutations(diagram.vertices)
    target = (diagram.edges, diagram.externals)
    stab = sum(1 for sigma in perms if _relabel(sigma, diagram.edges, diagram.externals) == target)
    edge_sym = 1
    for (a, b), m in Counter(diagram.edges).items():
        edge_sym *= factorial(m) * (2 ** m if a == b else 1)
    weight = Fraction(1, stab * edge_sym)
    c = len(perms)
    d = 1
    for st in diagram.vertices:
        for a_f in st.alpha:
            d *= factorial(a_f)
    pi = weight * c * d
    if pi.denominator != 1:
        raise ArithmeticError(f"pairing count is not integral for {diagram}: {pi}")
    return SymFactor(pi=int(pi), c=c, d=d, weight=weight)


def _matching_keys(slot_idx: list[int]) -> list[tuple]:
    """Slot-pair keys of every perfect matching of the given labeled legs
    (legs are positions, values are slot indices); duplicates stand for
    distinct matchings and are kept."""
    out: list[tuple] = []
    pairs: list[tuple[int, int]] = []

    def rec(avail: tuple[int, ...]) -> None:
        if not avail:
            out.append(tuple(sorted(pairs)))
            return
        a = avail[0]
        tail = avail[1:]
        for i in range(len(tail)):
            b = tail[i]
            pairs.append((a, b) if a <= b else (b, a))
            rec(tail[:i] + tail[i + 1:])
            pairs.pop()

    rec(tuple(slot_idx))
    return out


def wick_weights(k: int, h: int, budget: int = DEFAULT_WICK_BUDGET) -> dict[Diagram, Fraction]:
    """Diagram multiplicities recomputed by brute labeled pairing.

    Within each structure multiset every labeled configuration is visited: an
    ordered choice of legs for the external points, then a perfect matching
    of the remainder.  Connected configurations are grouped by canonical form
    and counted; count / (c * d) is the multiplicity.  A multiset whose
    configuration count exceeds `budget` raises WickBudgetError rather than
    silently truncating the survey.
    """
    _validate_kh(k, h)
    points = _point_names(k)
    results: dict[Diagram, Fraction] = {}
    for structs, _ in _iter_structures(k, h):
        slots, caps = _slots_of(structs)
        legs: list[int] = []
        for i, cap in enumerate(caps):
            legs.extend([i] * cap)
        total_legs = len(legs)
        cost = perm(total_legs, k) * _double_factorial(total_legs - k - 1)
        if cost > budget:
            raise WickBudgetError(
                f"structures {structs} need {cost} labeled configurations, budget is {budget}")
        counter: Counter = Counter()
        for subset in itertools.combinations(range(total_legs), k):
            chosen = set(subset)
            rest = [legs[i] for i in range(total_legs) if i not in chosen]
            mkeys = _matching_keys(rest)
            for arrangement in itertools.permutations(subset):
                a = tuple(legs[i] for i in arrangement)
                for mkey in mkeys:
                    counter[(a, mkey)] += 1
        n = len(structs)
        perms = _block_permutations(structs)
        denom = len(perms)
        for st in structs:
            for a_f in st.alpha:
                denom *= factorial(a_f)
        cache: dict[tuple, tuple] = {}
        for (a, mkey), cnt in counter.items():
            edges = tuple((slots[i], slots[j]) for i, j in mkey)
            if not _connected(n, edges):
                continue
            externals = tuple(sorted((points[m], *slots[i]) for m, i in enumerate(a)))
            key = (edges, externals)
            canon = cache.get(key)
            if canon is None:
                canon = _canonical(edges, externals, perms)
                cache[key] = canon
            diagram = Diagram(structs, canon[0], canon[1])
            results[diagram] = results.get(diagram, Fraction(0)) + Fraction(cnt, denom)
    return results


def catalog(k: int, h: int) -> list[tuple[Diagram, SymFactor]]:
    """The sorted diagram list with orbit-route multiplicities."""
    return [(d, symmetry_factor(d)) for d in enumerate_diagrams(k, h)]


def assemble(diagram: Diagram, s: int, table: CouplingTable | None = None) -> Expression:
    """Sum the diagram over branch-point index assignments 1..2s.

    Vertex j contributes its decorated coupling at index i_j, an external
    (p, v, f) contributes B_{i_v}^f(p) and an edge ((v, f), (w, g))
    contributes B_{i_v, i_w}^{f, g}.
    """
    if s < 1:
        raise ValueError(f"need at least one cut, got s = {s}")
    table = table or default_table()
    n = len(diagram.vertices)
    attached = [
        {i: index_attach(table.d_alpha(st.h, st.alpha), i) for i in range(1, 2 * s + 1)}
        for st in diagram.vertices
    ]
    total: Expression = {}
    for idx in itertools.product(range(1, 2 * s + 1), repeat=n):
        e = constant(1)
        for j in range(n):
            e = mul(e, attached[j][idx[j]])
        props = [(ext_prop(idx[v], f, p), 1) for p, v, f in diagram.externals]
        props.extend((int_prop(idx[v], idx[w], f, g), 1) for (v, f), (w, g) in diagram.edges)
        e = mul(e, {monomial_of(props): Fraction(1)})
        add_into(total, e)
    return total


def correlator(k: int, h: int, s: int, table: CouplingTable | None = None) -> Expression:
    """Order-h k-point sum over the whole catalog; k = 0 gives the closed
    free-energy contribution."""
    table = table or default_table()
    total: Expression = {}
    for diagram in enumerate_diagrams(k, h):
        add_into(total, assemble(diagram, s, table), symmetry_factor(diagram).weight)
    return total


def render_dot(diagram: Diagram, name: str = "D") -> str:
    """Graphviz source for one diagram; edge labels carry the leg classes."""
    lines = [f"graph {name} {{"]
    for j, st in enumerate(diagram.vertices):
        lines.append(f'  v{j} [label="h={st.h}"];')
    for p, _, _ in diagram.externals:
        lines.append(f'  ext_{p} [label="{p}", shape=box];')
    for (v, f), (w, g) in diagram.edges:
        lines.append(f'  v{v} -- v{w} [label="{f}|{g}"];')
    for p, v, f in diagram.externals:
        lines.append(f'  ext_{p} -- v{v} [label="{f}"];')
    lines.append("}")
    return "\n".join(lines)


def catalog_dot(k: int, h: int) -> str:
    """Graphviz source for the whole catalog, one cluster per diagram with
    its multiplicity in the cluster label."""
    lines = ["graph catalog {", f'  label="k={k} h={h}";']
    for idx, (diagram, sym) in enumerate(catalog(k, h)):
        lines.append(f"  subgraph cluster_{idx} {{")
        lines.append(f'    label="D{idx}  weight {sym.weight}";')
        for j, st in enumerate(diagram.vertices):
            lines.append(f'    d{idx}_v{j} [label="h={st.h}"];')
        for p, _, _ in diagram.externals:
            lines.append(f'    d{idx}_ext_{p} [label="{p}", shape=box];')
        for (v, f), (w, g) in diagram.edges:
            lines.append(f'    d{idx}_v{v} -- d{idx}_v{w} [label="{f}|{g}"];')
        for p, v, f in diagram.externals:
            lines.append(f'    d{idx}_ext_{p} -- d{idx}_v{v} [label="{f}"];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines)


def catalog_json(k: int, h: int) -> str:
    """JSON catalog: vertices, edges, externals and both multiplicity
    bookkeeping numbers per diagram."""
    entries = []
    for diagram, sym in catalog(k, h):
        entries.append({
            "vertices": [{"h": st.h, "alpha": list(st.alpha)} for st in diagram.vertices],
            "internal_edges": [[[v, f], [w, g]] for (v, f), (w, g) in diagram.edges],
            "external": [{"p": p, "v": v, "m": f} for p, v, f in diagram.externals],
            "pi": sym.pi,
            "c": sym.c,
            "d": sym.d,
            "weight": str(sym.weight),
        })
    doc = {"k": k, "h": h, "count": len(entries), "diagrams": entries}
    return json.dumps(doc, indent=2, sort_keys=True)
