"""Exact counters: homomorphisms, independence / matching / Potts polynomials,
and the hard-core and Potts observables as exact rationals.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .graphcore import Bigraph, LoopGraph, _bits, components, popcount

Rational = Fraction


# vertex orders and the frontier dynamic program ------------------------------


def bfs_order(g: LoopGraph, vertices: Sequence[int]) -> list[int]:
    """BFS from a maximum-degree root; neighbours visited by (-degree, label)."""
    vs = set(vertices)
    root = max(sorted(vs), key=g.degree)
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted((w for w in g.neighbors(u) if w in vs and w not in seen), key=lambda w: (-g.degree(w), w)):
            seen.add(w)
            order.append(w)
            queue.append(w)
    return order


def _frontier_plan(g: LoopGraph, order: list[int]):
    pos = {v: i for i, v in enumerate(order)}
    last = {}
    for v in order:
        later = [pos[w] for w in g.neighbors(v) if w != v and w in pos]
        last[v] = max([pos[v]] + later)
    return pos, last


def _hom_component(g: LoopGraph, h: LoopGraph, order: list[int], allowed: list[int]) -> int:
    pos, last = _frontier_plan(g, order)
    h_rows = h.rows
    loop_mask = sum(1 << v for v in h.loops)
    frontier: list[int] = []
    states = {(): 1}
    for i, v in enumerate(order):
        back = [frontier.index(u) for u in g.neighbors(v) if u != v and u in pos and pos[u] < i]
        base = allowed[v]
        if g.has_loop(v):
            base &= loop_mask
        keep_v = last[v] > i
        new_frontier = [u for u in frontier if last[u] > i]
        keep_idx = [k for k, u in enumerate(frontier) if last[u] > i]
        if keep_v:
            new_frontier.append(v)
        new_states: dict[tuple, int] = {}
        for state, cnt in states.items():
            cand = base
            for k in back:
                cand &= h_rows[state[k]]
                if not cand:
                    break
            if not cand:
                continue
            kept = tuple(state[k] for k in keep_idx)
            if keep_v:
                for c in _bits(cand):
                    key = kept + (c,)
                    new_states[key] = new_states.get(key, 0) + cnt
            else:
                new_states[kept] = new_states.get(kept, 0) + cnt * popcount(cand)
        states = new_states
        frontier = new_frontier
        if not states:
            return 0
    return sum(states.values())


def _hom(g: LoopGraph, h: LoopGraph, allowed: list[int]) -> int:
    total = 1
    for comp in components(g):
        total *= _hom_component(g, h, bfs_order(g, comp), allowed)
        if total == 0:
            return 0
    return total


def hom_count(g: LoopGraph, h: LoopGraph) -> int:
    """Number of maps ``V(G) -> V(H)`` sending edges (and loops) of G to edges of H."""
    full = (1 << h.n) - 1
    return _hom(g, h, [full] * g.n)


def bigraph_hom_count(g: Bigraph, h: Bigraph) -> int:
    """Homomorphisms that also send left to left and right to right."""
    lmask = sum(1 << v for v in h.left_vertices)
    rmask = sum(1 << v for v in h.right_vertices)
    allowed = [lmask if side else rmask for side in g.left]
    return _hom(g.graph, h.graph, allowed)


# polynomials -------------------------------------------------------------------


@dataclass(frozen=True)
class CountPolynomial:
    """Integer polynomial, coefficients listed by ascending degree."""

    coeffs: tuple[int, ...]
    kind: str = "generic"

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, t: int) -> int:
        return self.coeffs[t] if 0 <= t < len(self.coeffs) else 0

    def __call__(self, x):
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if acc.denominator != 1 else int(acc)

    def derivative(self) -> "CountPolynomial":
        return CountPolynomial(tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (0,), self.kind)

    def weighted(self, x) -> Fraction:
        """``sum_k k c_k x^k``."""
        x = Fraction(x)
        return sum((k * c * x**k for k, c in enumerate(self.coeffs)), Fraction(0))

    def __mul__(self, other: "CountPolynomial") -> "CountPolynomial":
        return CountPolynomial(tuple(_poly_mul(list(self.coeffs), list(other.coeffs))), self.kind)

    def __pow__(self, k: int) -> "CountPolynomial":
        out = CountPolynomial((1,), self.kind)
        for _ in range(k):
            out = out * self
        return out

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str, kind: str = "generic") -> "CountPolynomial":
        return cls(tuple(int(c) for c in json.loads(text)), kind)


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def independence_polynomial(g: LoopGraph) -> CountPolynomial:
    """Coefficient ``t`` is the number of independent sets of size ``t``."""
    rows = [r & ~(1 << v) for v, r in enumerate(g.rows)]
    memo: dict[int, list[int]] = {0: [1]}

    def rec(mask: int) -> list[int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        best, best_deg = -1, -1
        for v in _bits(mask):
            dv = popcount(rows[v] & mask)
            if dv > best_deg:
                best, best_deg = v, dv
        if best_deg == 0:
            k = popcount(mask)
            res = [comb(k, t) for t in range(k + 1)]
        else:
            v = best
            without = rec(mask & ~(1 << v))
            with_v = rec(mask & ~(1 << v) & ~rows[v])
            res = _poly_add(without, [0] + with_v)
        memo[mask] = res
        return res

    return CountPolynomial(tuple(rec((1 << g.n) - 1)), "independence")


def matching_polynomial(g: LoopGraph) -> CountPolynomial:
    """Coefficient ``t`` is the number of matchings with ``t`` edges (loops ignored)."""
    rows = [r & ~(1 << v) for v, r in enumerate(g.rows)]
    memo: dict[int, list[int]] = {}

    def rec(mask: int) -> list[int]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        v = next((u for u in _bits(mask) if rows[u] & mask), None)
        if v is None:
            res = [1]
        else:
            rest = mask & ~(1 << v)
            res = list(rec(rest))
            for u in _bits(rows[v] & rest):
                res = _poly_add(res, [0] + rec(rest & ~(1 << u)))
        memo[mask] = res
        return res

    return CountPolynomial(tuple(rec((1 << g.n) - 1)), "matching")


def perfect_matchings(g: LoopGraph) -> int:
    if g.n % 2:
        return 0
    return matching_polynomial(g)[g.n // 2]


def _potts_component(g: LoopGraph, q: int, order: list[int]) -> list[int]:
    pos, last = _frontier_plan(g, order)
    frontier: list[int] = []
    states: dict[tuple, list[int]] = {(): [1]}
    for i, v in enumerate(order):
        back = [frontier.index(u) for u in g.neighbors(v) if u != v and pos[u] < i]
        keep_v = last[v] > i
        keep_idx = [k for k, u in enumerate(frontier) if last[u] > i]
        new_frontier = [frontier[k] for k in keep_idx] + ([v] if keep_v else [])
        colors = [0] if i == 0 else range(q)
        new_states: dict[tuple, list[int]] = {}
        for state, poly in states.items():
            kept = tuple(state[k] for k in keep_idx)
            for c in colors:
                mono = sum(1 for k in back if state[k] == c)
                shifted = [0] * mono + poly
                key = kept + (c,) if keep_v else kept
                prev = new_states.get(key)
                new_states[key] = shifted if prev is None else _poly_add(prev, shifted)
        states = new_states
        frontier = new_frontier
    total = [0]
    for poly in states.values():
        total = _poly_add(total, poly)
    # the first vertex was pinned to colour 0
    return [q * c for c in total]


def potts_polynomial(g: LoopGraph, q: int) -> CountPolynomial:
    """Coefficient ``j`` counts colourings ``V(G) -> [q]`` with ``j`` monochromatic edges."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    total = [1]
    for comp in components(g):
        total = _poly_mul(total, _potts_component(g, q, bfs_order(g, comp)))
    return CountPolynomial(tuple(total), "potts")


# observables -------------------------------------------------------------------


def independent_sets(g: LoopGraph) -> Iterator[int]:
    """All independent sets of a simple graph, as vertex bitmasks."""
    rows = g.rows

    def rec(v: int, chosen: int, blocked: int):
        if v == g.n:
            yield chosen
            return
        yield from rec(v + 1, chosen, blocked)
        if not (blocked >> v) & 1 and not (rows[v] >> v) & 1:
            yield from rec(v + 1, chosen | (1 << v), blocked | rows[v])

    yield from rec(0, 0, 0)


def occupancy_fraction(g: LoopGraph, lam) -> Fraction:
    """Expected fraction of occupied vertices under the hard-core model."""
    if g.n == 0:
        raise ValueError("occupancy fraction of the empty graph is undefined")
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("fugacity must be nonnegative")
    p = independence_polynomial(g)
    return Fraction(p.weighted(lam)) / (g.n * Fraction(p(lam)))


def neighbor_occupancy_distribution(g: LoopGraph, lam) -> list[Fraction]:
    """``p_k`` = probability that a uniform vertex has exactly ``k`` occupied neighbours."""
    if g.n == 0:
        raise ValueError("empty graph")
    lam = Fraction(lam)
    rows = [r & ~(1 << v) for v, r in enumerate(g.rows)]
    dmax = max(popcount(r) for r in rows)
    weight = [Fraction(0)] * (dmax + 1)
    z = Fraction(0)
    for s in independent_sets(g):
        w = lam ** popcount(s)
        z += w
        for r in rows:
            weight[popcount(r & s)] += w
    return [x / (g.n * z) for x in weight]


def potts_internal_energy(g: LoopGraph, q: int, x) -> Fraction:
    """Expected number of monochromatic edges per vertex, at ``x = exp(-beta)``."""
    if g.n == 0:
        raise ValueError("empty graph")
    x = Fraction(x)
    if not 0 < x <= 1:
        raise ValueError("x must lie in (0, 1]")
    z = potts_polynomial(g, q)
    return z.weighted(x) / (g.n * Fraction(z(x)))


def occupancy_lp_solution(d: int, lam) -> list[Fraction]:
    """Maximiser ``(p_0..p_d)`` of ``p_0`` under the neighbour-occupancy constraints.

    At the optimum every descent inequality is tight, which pins
    ``p_k = p_1 lam^(k-1) C(d,k)/d`` and leaves one free parameter fixed by
    the neighbour relation and normalisation.
    """
    if d < 1:
        raise ValueError("d must be positive")
    lam = Fraction(lam)
    if lam < 0:
        raise ValueError("fugacity must be nonnegative")
    a = (1 + lam) ** d
    p0 = a / (2 * a - 1)
    p1 = d * lam * p0 / a
    return [p0] + [p1 * lam ** (k - 1) * comb(d, k) / d for k in range(1, d + 1)]


def occupancy_lp_optimum(d: int, lam) -> Fraction:
    return occupancy_lp_solution(d, lam)[0]


def kdd_occupancy(d: int, lam) -> Fraction:
    """Closed form of the hard-core occupancy fraction of ``K_{d,d}``."""
    lam = Fraction(lam)
    return lam * (1 + lam) ** (d - 1) / (2 * (1 + lam) ** d - 1)


def falling(q: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= q - j
    return out
