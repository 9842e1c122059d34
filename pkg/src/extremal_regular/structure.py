"""Structural recognisers and constructive gadgets.

Sets of vertices of ``2G`` and of ``G x K_2`` are both written as a pair of
bitmasks ``(a, b)``: ``a`` holds the vertices ``v`` with ``v_0`` in the set,
``b`` those with ``v_1`` in the set.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .graphcore import (
    EXPONENT_CAP,
    Bigraph,
    Graph,
    GraphError,
    LoopGraph,
    _bits,
    _two_coloring,
    components,
    popcount,
)

Pair = tuple[int, int]


# loop-threshold graphs ---------------------------------------------------------


def is_staircase(h: LoopGraph, order: Sequence[int]) -> bool:
    """Every row is a prefix of 1s and prefix lengths never increase down the rows."""
    prev = h.n
    for v in order:
        row = [h.adjacent(v, w) for w in order]
        r = sum(row)
        if any(row[r:]) or r > prev:
            return False
        prev = r
    return True


def is_loop_threshold(h: LoopGraph, exhaustive_limit: int = 8) -> tuple[int, ...] | None:
    """A vertex ordering exhibiting the staircase matrix, or ``None``.

    Sorting by row weight (loop counted) is complete: two vertices with
    equal weight in a staircase ordering have identical rows, so any tie
    order gives the same matrix.  The exhaustive search only backs that up
    on small inputs.
    """
    order = tuple(sorted(range(h.n), key=lambda v: (-popcount(h.rows[v]), not h.has_loop(v), v)))
    if is_staircase(h, order):
        return order
    if h.n <= exhaustive_limit:
        for perm in itertools.permutations(range(h.n)):
            if is_staircase(h, perm):
                return perm
    return None


# bipartite swapping targets ----------------------------------------------------


def bst_graph(h: LoopGraph) -> LoopGraph:
    """Auxiliary graph on ``V(H) x V(H)``; vertex ``(u, v)`` has index ``u * n + v``."""
    n = h.n
    rows = [0] * (n * n)
    for u, v in itertools.product(range(n), repeat=2):
        i = u * n + v
        for u2 in _bits(h.rows[u]):
            for v2 in _bits(h.rows[v]):
                if not (h.adjacent(u, v2) and h.adjacent(u2, v)):
                    rows[i] |= 1 << (u2 * n + v2)
    return LoopGraph(n * n, tuple(rows))


@dataclass(frozen=True)
class BstVerdict:
    is_target: bool
    coloring: tuple[int, ...] | None = None
    odd_walk: tuple[tuple[int, int], ...] | None = None

    def to_dict(self) -> dict:
        return {
            "is_target": self.is_target,
            "coloring": list(self.coloring) if self.coloring is not None else None,
            "odd_walk": [list(p) for p in self.odd_walk] if self.odd_walk is not None else None,
        }


def is_bipartite_swapping_target(h: LoopGraph) -> BstVerdict:
    b = bst_graph(h)
    coloring, walk = _two_coloring(b)
    if coloring is not None:
        return BstVerdict(True, coloring=coloring)
    return BstVerdict(False, odd_walk=tuple(divmod(x, h.n) for x in walk))


def validate_bst_verdict(h: LoopGraph, verdict: BstVerdict) -> bool:
    b = bst_graph(h)
    if verdict.is_target:
        c = verdict.coloring
        return c is not None and all(c[x] != c[y] for x, y in b.edges())
    walk = verdict.odd_walk
    if not walk or len(walk) % 2 == 0:
        return False
    idx = [u * h.n + v for u, v in walk]
    return all(b.adjacent(idx[i], idx[(i + 1) % len(idx)]) for i in range(len(idx)))


# the swapping injection I(2G) -> I(G x K_2) ------------------------------------


@dataclass(frozen=True)
class SwapCertificate:
    bad_edges: tuple[tuple[int, int], ...]
    swap: int
    image: Pair

    def to_dict(self) -> dict:
        return {
            "bad_edges": [list(e) for e in self.bad_edges],
            "swap": list(_bits(self.swap)),
            "image": [list(_bits(self.image[0])), list(_bits(self.image[1]))],
        }


def _independent(g: LoopGraph, mask: int) -> bool:
    return all(not (g.rows[v] & mask) for v in _bits(mask))


def is_independent_in_double(g: LoopGraph, s: Pair) -> bool:
    """Independent in the two labelled copies ``2G``."""
    return _independent(g, s[0]) and _independent(g, s[1])


def is_independent_in_cover(g: LoopGraph, t: Pair) -> bool:
    """Independent in ``G x K_2`` (edges ``u_0 v_1``)."""
    return all(not (g.rows[v] & t[1]) for v in _bits(t[0]))


def _first_separating_set(n: int, edges: Sequence[tuple[int, int]]) -> int | None:
    """Least (as an integer bitmask) vertex set cutting every edge exactly once."""
    if not edges:
        return 0
    sub = Graph.from_edges(n, edges)
    coloring, _ = _two_coloring(sub)
    if coloring is None:
        return None
    chosen = 0
    for comp in components(sub):
        if len(comp) == 1:
            continue
        side0 = sum(1 << v for v in comp if coloring[v] == 0)
        side1 = sum(1 << v for v in comp if coloring[v] == 1)
        chosen |= min(side0, side1)
    return chosen


def _swap(s: Pair, a: int) -> Pair:
    x, y = s
    return ((x & ~a) | (y & a), (y & ~a) | (x & a))


def bad_edges(g: LoopGraph, s: Pair) -> tuple[tuple[int, int], ...]:
    """Edges ``uv`` of G with ``u_0`` and ``v_1`` both in ``s`` (either orientation)."""
    x, y = s
    return tuple((u, v) for u, v in g.edges() if u != v and ((x >> u & 1 and y >> v & 1) or (x >> v & 1 and y >> u & 1)))


def swap_injection(g: LoopGraph, s: Pair) -> SwapCertificate:
    if not is_independent_in_double(g, s):
        raise GraphError("set is not independent in 2G")
    bad = bad_edges(g, s)
    a = _first_separating_set(g.n, bad)
    if a is None:  # pragma: no cover - bad edges of an independent set are bipartite
        raise AssertionError("bad-edge graph is not bipartite")
    return SwapCertificate(bad, a, _swap(s, a))


def cover_bad_edges(g: LoopGraph, t: Pair) -> tuple[tuple[int, int], ...]:
    """Edges ``uv`` of G with ``u_i, v_i`` both in ``t`` for some ``i``."""
    x, y = t
    return tuple(
        (u, v) for u, v in g.edges() if u != v and ((x >> u & 1 and x >> v & 1) or (y >> u & 1 and y >> v & 1))
    )


def swap_injection_inverse(g: LoopGraph, t: Pair) -> Pair | None:
    """Preimage of ``t`` under the injection, or ``None`` when ``t`` is not in the image."""
    if not is_independent_in_cover(g, t):
        raise GraphError("set is not independent in G x K_2")
    a = _first_separating_set(g.n, cover_bad_edges(g, t))
    if a is None:
        return None
    return _swap(t, a)


def independent_pairs(g: LoopGraph) -> list[Pair]:
    from .counting import independent_sets

    sets = list(independent_sets(g))
    return [(a, b) for a in sets for b in sets]


def cover_independent_sets(g: LoopGraph) -> list[Pair]:
    out = []
    for a in range(1 << g.n):
        blocked = 0
        for v in _bits(a):
            blocked |= g.rows[v]
        free = ((1 << g.n) - 1) & ~blocked
        # every subset of the vertices not adjacent to a
        sub = free
        while True:
            out.append((a, sub))
            if sub == 0:
                break
            sub = (sub - 1) & free
    return out


# bigraph homomorphism target -------------------------------------------------


def bigraph_homs(b: Bigraph, a: Bigraph, cap: int = EXPONENT_CAP) -> list[tuple[int, ...]]:
    """All side-respecting homomorphisms ``B -> A`` as image tuples."""
    ga, gb = a.graph, b.graph
    lmask = sum(1 << v for v in a.left_vertices)
    rmask = sum(1 << v for v in a.right_vertices)
    out: list[tuple[int, ...]] = []
    img = [0] * gb.n

    def rec(v: int):
        if v == gb.n:
            out.append(tuple(img))
            if len(out) > cap:
                raise GraphError(f"more than {cap} bigraph homomorphisms")
            return
        cand = lmask if b.left[v] else rmask
        for u in gb.neighbors(v):
            if u < v:
                cand &= ga.rows[img[u]]
        for c in _bits(cand):
            img[v] = c
            rec(v + 1)

    rec(0)
    return out


def bigraph_hom_target(a: Bigraph, b: Bigraph, cap: int = EXPONENT_CAP) -> LoopGraph:
    """Loop-graph on the bigraph homs ``B -> A``; ``phi ~ phi'`` iff
    ``phi(u) phi'(v)`` is an edge of A for every edge ``uv`` of B, in both orientations.
    """
    homs = bigraph_homs(b, a, cap)
    eb = [(u, v) for u, v in b.graph.edges()]
    ordered = eb + [(v, u) for u, v in eb]
    ga = a.graph
    rows = [0] * len(homs)
    for i, f in enumerate(homs):
        for j in range(i, len(homs)):
            fp = homs[j]
            if all(ga.adjacent(f[u], fp[v]) for u, v in ordered):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return LoopGraph(len(homs), tuple(rows))
