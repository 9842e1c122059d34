"""Graph types, named constructors and the graph operators.

Adjacency is stored as one Python ``int`` bitset per row: bit ``j`` of
``rows[i]`` is set iff ``i ~ j``.  A set diagonal bit is a loop.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 64
EXPONENT_CAP = 4096


class GraphError(ValueError):
    """Invalid graph data or out-of-range constructor parameters."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class LoopGraph:
    """Undirected graph on ``range(n)`` with loops permitted."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        if len(self.rows) != self.n:
            raise GraphError(f"expected {self.n} rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise GraphError(f"row {i} references a vertex >= n")
            for j in _bits(r):
                if not (self.rows[j] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency at ({i}, {j})")

    # construction helpers -------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]):
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> "LoopGraph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency matrix must be square")
        rows = tuple(sum(1 << j for j in np.flatnonzero(a[i])) for i in range(a.shape[0]))
        return cls(a.shape[0], rows)

    # queries ---------------------------------------------------------------
    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def has_loop(self, v: int) -> bool:
        return bool((self.rows[v] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        """Number of neighbours other than ``v`` itself."""
        return popcount(self.rows[v] & ~(1 << v))

    @property
    def loops(self) -> list[int]:
        return [v for v in range(self.n) if self.has_loop(v)]

    @property
    def has_loops(self) -> bool:
        return any(self.has_loop(v) for v in range(self.n))

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u <= v`` in lexicographic order; loops included."""
        return [(u, v) for u in range(self.n) for v in _bits(self.rows[u] >> u << u)]

    @property
    def m(self) -> int:
        return len(self.edges())

    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def induced(self, vertices: Sequence[int]) -> "LoopGraph":
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            rows.append(sum(1 << pos[w] for w in _bits(self.rows[v]) if w in pos))
        return _typed(rows)

    def relabel(self, perm: Sequence[int]) -> "LoopGraph":
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        rows = [0] * self.n
        for v in range(self.n):
            rows[perm[v]] = sum(1 << perm[w] for w in _bits(self.rows[v]))
        return type(self)(self.n, tuple(rows))

    def as_simple(self) -> "Graph":
        if self.has_loops:
            raise GraphError("graph has loops")
        return Graph(self.n, self.rows)

    def as_loopgraph(self) -> "LoopGraph":
        return LoopGraph(self.n, self.rows)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True, repr=False)
class Graph(LoopGraph):
    """Simple undirected graph: a loop-graph with an empty diagonal."""

    def __post_init__(self):
        super().__post_init__()
        for v in range(self.n):
            if (self.rows[v] >> v) & 1:
                raise GraphError(f"simple graph has a loop at {v}")


def _typed(rows: list[int]) -> LoopGraph:
    g = LoopGraph(len(rows), tuple(rows))
    return g if g.has_loops else Graph(g.n, g.rows)


@dataclass(frozen=True)
class Bigraph:
    """Bipartite graph with a fixed left/right side per vertex (True = left)."""

    graph: Graph
    left: tuple[bool, ...]

    def __post_init__(self):
        if len(self.left) != self.graph.n:
            raise GraphError("side labels do not match vertex count")
        for u, v in self.graph.edges():
            if self.left[u] == self.left[v]:
                raise GraphError(f"edge ({u}, {v}) does not cross the bipartition")

    @property
    def left_vertices(self) -> list[int]:
        return [v for v in range(self.graph.n) if self.left[v]]

    @property
    def right_vertices(self) -> list[int]:
        return [v for v in range(self.graph.n) if not self.left[v]]

    @classmethod
    def from_graph(cls, g: Graph, left: Sequence[int] | None = None) -> "Bigraph":
        """Use the given left vertex set, or the 2-colouring found by :func:`analyze`."""
        if left is None:
            coloring = analyze(g).bipartition
            if coloring is None:
                raise GraphError("graph is not bipartite")
            return cls(g, tuple(c == 0 for c in coloring))
        ls = set(left)
        return cls(g, tuple(v in ls for v in range(g.n)))


@dataclass(frozen=True)
class GraphFacts:
    n: int
    m: int
    degrees: tuple[int, ...]
    regular_degree: int | None
    bipartition: tuple[int, ...] | None
    girth: int | None
    triangle_free: bool
    components: int
    odd_cycle: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def bipartite(self) -> bool:
        return self.bipartition is not None

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)


def components(g: LoopGraph) -> list[list[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp_mask = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp_mask
            comp_mask |= nxt
        seen |= comp_mask
        out.append(list(_bits(comp_mask)))
    return out


def _two_coloring(g: LoopGraph):
    """Return (coloring, None) or (None, odd closed walk)."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in _bits(g.rows[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return None, _odd_walk(parent, u, w)
    return tuple(color), None


def _odd_walk(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    # u, w are same-coloured and adjacent; join them through their BFS-tree ancestry
    def path(x):
        p = [x]
        while parent[p[-1]] >= 0:
            p.append(parent[p[-1]])
        return p

    pu, pw = path(u), path(w)
    common = set(pu) & set(pw)
    pu = pu[: next(i for i, x in enumerate(pu) if x in common) + 1]
    pw = pw[: next(i for i, x in enumerate(pw) if x in common) + 1]
    return tuple(pu + pw[::-1][1:]) if u != w else (u,)


def odd_closed_walk_is_valid(g: LoopGraph, walk: Sequence[int]) -> bool:
    """True iff ``walk`` (implicitly closed) has odd length and follows edges of ``g``."""
    if len(walk) % 2 == 0 or not walk:
        return False
    return all(g.adjacent(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk)))


def girth(g: LoopGraph) -> int | None:
    """Length of a shortest cycle of a simple graph; ``None`` for forests."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        par = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in _bits(g.rows[u]):
                if w == u:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    queue.append(w)
                elif par[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def analyze(g: LoopGraph) -> GraphFacts:
    degrees = tuple(g.degree(v) for v in range(g.n))
    regular = degrees[0] if degrees and len(set(degrees)) == 1 else None
    coloring, walk = _two_coloring(g)
    triangle_free = not any(
        g.rows[u] & g.rows[w] & ~(1 << u) & ~(1 << w)
        for u, w in g.edges()
        if u != w
    )
    return GraphFacts(
        n=g.n,
        m=sum(1 for u, v in g.edges() if u != v),
        degrees=degrees,
        regular_degree=regular,
        bipartition=coloring,
        girth=None if g.has_loops else girth(g),
        triangle_free=triangle_free,
        components=len(components(g)),
        odd_cycle=walk,
    )


# named graphs ----------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError("part sizes must be nonnegative")
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("P_n needs n >= 1")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("C_n needs n >= 3")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def heawood() -> Graph:
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, ring + chords)


def lex_graph(n: int, m: int) -> Graph:
    """``L_{n,m}``: the first ``m`` edges of ``K_n`` in lexicographic order."""
    if n < 0 or not 0 <= m <= n * (n - 1) // 2:
        raise GraphError(f"L_{{n,m}} needs 0 <= m <= n(n-1)/2, got n={n}, m={m}")
    return Graph.from_edges(n, itertools.islice(itertools.combinations(range(n), 2), m))


def octahedron() -> Graph:
    return complement(Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)]))


def H_ind() -> LoopGraph:
    """Looped vertex 0 joined to plain vertex 1."""
    return LoopGraph.from_edges(2, [(0, 0), (0, 1)])


def H_WR() -> LoopGraph:
    """Fully looped path on three vertices."""
    return LoopGraph.from_edges(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])


def two_loops() -> LoopGraph:
    return LoopGraph.from_edges(2, [(0, 0), (1, 1)])


def looped_vertex() -> LoopGraph:
    return LoopGraph.from_edges(1, [(0, 0)])


def path_with_loops(k: int, loop_positions: Iterable[int]) -> LoopGraph:
    """``P_k`` plus loops at the given 1-based positions."""
    positions = set(loop_positions)
    if any(not 1 <= p <= k for p in positions):
        raise GraphError(f"loop positions must lie in 1..{k}")
    edges = [(i, i + 1) for i in range(k - 1)] + [(p - 1, p - 1) for p in positions]
    return LoopGraph.from_edges(k, edges)


def threshold_example() -> LoopGraph:
    """The five-vertex loop-threshold graph with staircase matrix (11110;11000;10000;10000;00000)."""
    return LoopGraph.from_edges(5, [(0, 0), (1, 1), (0, 1), (0, 2), (0, 3)])


def disjoint_complete(k: int, d: int) -> Graph:
    """``k K_d``."""
    return disjoint_union([complete(d)] * k)


def standard_graph(name: str, *params: int) -> LoopGraph:
    """Named graph from the catalog, e.g. ``standard_graph("K", 3, 3)``."""
    key = name.strip()
    simple = {
        "petersen": petersen,
        "heawood": heawood,
        "octahedron": octahedron,
    }
    loop = {"H_ind": H_ind, "H_WR": H_WR, "two_loops": two_loops, "looped_vertex": looped_vertex}
    try:
        if key.lower() in simple:
            _arity(key, params, 0)
            return simple[key.lower()]()
        if key in loop:
            _arity(key, params, 0)
            return loop[key]()
        if key == "K":
            if len(params) == 1:
                return complete(_nonneg(params[0]))
            _arity(key, params, 2)
            return complete_bipartite(*params)
        if key == "P":
            _arity(key, params, 1)
            return path(params[0])
        if key == "C":
            _arity(key, params, 1)
            return cycle(params[0])
        if key == "E":
            _arity(key, params, 1)
            return empty(_nonneg(params[0]))
        if key == "L":
            _arity(key, params, 2)
            return lex_graph(*params)
        if key == "kK":
            _arity(key, params, 2)
            return disjoint_complete(*params)
        if key == "PL":
            if not params:
                raise GraphError("PL needs the path length")
            return path_with_loops(params[0], params[1:])
    except TypeError as exc:
        raise GraphError(str(exc)) from None
    raise GraphError(f"unknown graph name {name!r}")


def _arity(name, params, k):
    if len(params) != k:
        raise GraphError(f"{name} takes {k} parameter(s), got {len(params)}")


def _nonneg(x):
    if x < 0:
        raise GraphError("parameter must be nonnegative")
    return x


def parse_named(spec: str) -> LoopGraph:
    """Parse the mini-language ``"K:3,3"``, ``"C:5"``, ``"petersen"``, ``"PL:8,1"``."""
    name, _, rest = spec.partition(":")
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest else ()
    except ValueError:
        raise GraphError(f"bad parameters in graph spec {spec!r}") from None
    return standard_graph(name, *params)


# operators -------------------------------------------------------------------


def tensor_product(a: LoopGraph, b: LoopGraph) -> LoopGraph:
    """Categorical product; vertex ``(u, v)`` gets index ``u * b.n + v``."""
    nb = b.n
    rows = []
    for u in range(a.n):
        for v in range(nb):
            r = 0
            bv = b.rows[v]
            for u2 in _bits(a.rows[u]):
                r |= bv << (u2 * nb)
            rows.append(r)
    return _typed(rows)


def double_cover(g: LoopGraph) -> LoopGraph:
    """``G x K_2``; vertex ``v_i`` has index ``2 v + i``."""
    return tensor_product(g, complete(2))


def exponentiate(h: LoopGraph, g: LoopGraph, cap: int = EXPONENT_CAP) -> LoopGraph:
    """``H^G``: vertices are all maps ``V(G) -> V(H)`` in lexicographic order."""
    size = h.n ** g.n
    if size > cap:
        raise GraphError(f"|V(H)|^|V(G)| = {size} exceeds cap {cap}")
    maps = list(itertools.product(range(h.n), repeat=g.n))
    g_edges = [(u, v) for u, v in g.edges()]
    # f ~ f' iff f(u) f'(v) in E(H) for every ordered pair with uv in E(G)
    ordered = g_edges + [(v, u) for u, v in g_edges if u != v]
    rows = [0] * size
    for i, f in enumerate(maps):
        for j in range(i, size):
            fp = maps[j]
            if all(h.adjacent(f[u], fp[v]) for u, v in ordered):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return _typed(rows)


def add_loops(g: LoopGraph) -> LoopGraph:
    return LoopGraph(g.n, tuple(r | (1 << v) for v, r in enumerate(g.rows)))


def looped_subgraph(h: LoopGraph) -> LoopGraph:
    return h.induced(h.loops)


def extended_line_graph(h: LoopGraph) -> LoopGraph:
    """Loop-graph on ``E(H)``: equal, incident, or opposite on a 4-cycle of ``H``."""
    es = [e for e in h.edges() if e[0] != e[1]]
    rows = [0] * len(es)
    for i, (a, b) in enumerate(es):
        for j, (c, d) in enumerate(es):
            if i == j or {a, b} & {c, d}:
                hit = True
            else:
                hit = (h.adjacent(a, c) and h.adjacent(b, d)) or (h.adjacent(a, d) and h.adjacent(b, c))
            if hit:
                rows[i] |= 1 << j
    return LoopGraph(len(es), tuple(rows))


def complement(g: LoopGraph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((~r & full) & ~(1 << v) for v, r in enumerate(g.rows)))


def disjoint_union(parts: Sequence[LoopGraph]) -> LoopGraph:
    rows = []
    offset = 0
    for p in parts:
        rows.extend(r << offset for r in p.rows)
        offset += p.n
    return _typed(rows)


def copies(g: LoopGraph, k: int) -> LoopGraph:
    return disjoint_union([g] * k)
