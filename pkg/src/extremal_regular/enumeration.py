"""Non-isomorphic graphs in constrained families.

Regular graphs come from a vertex-by-vertex backtracking fill of the
adjacency rows.  Unprocessed vertices with identical neighbourhoods are
interchangeable, so for each class of such twins only the first few are
ever chosen.  Survivors are deduplicated by canonical form.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterator

from .canon import canonical_form, canonical_graph
from .formats import read_graph6, write_graph6
from .graphcore import Graph, GraphError, _bits, analyze, disjoint_union, popcount

DEFAULT_CAPS = {3: 14, 4: 11}
ALL_GRAPHS_CAP = 8


@dataclass(frozen=True)
class FamilySpec:
    """A family of simple graphs.

    ``d`` selects d-regular graphs; ``None`` means all graphs on the given orders.
    """

    n_min: int
    n_max: int
    d: int | None = None
    connected: bool = False
    bipartite: bool = False
    triangle_free: bool = False
    c4_free: bool = False
    min_girth: int | None = None

    def __post_init__(self):
        if self.n_min < 0 or self.n_max < self.n_min:
            raise GraphError(f"bad order range {self.n_min}..{self.n_max}")
        if self.min_girth is not None and self.min_girth < 3:
            raise GraphError("min_girth must be at least 3")
        if self.d is not None and self.d < 0:
            raise GraphError("degree must be nonnegative")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``"d=3,connected,nmax=12"``-style specs (``n=`` fixes one order)."""
        kw: dict = {}
        for tok in filter(None, (t.strip() for t in text.split(","))):
            key, eq, val = tok.partition("=")
            key = key.strip().replace("-", "_")
            try:
                if not eq:
                    if key not in ("connected", "bipartite", "triangle_free", "c4_free"):
                        raise GraphError(f"unknown family flag {key!r}")
                    kw[key] = True
                elif key == "d":
                    kw["d"] = int(val)
                elif key == "n":
                    kw["n_min"] = kw["n_max"] = int(val)
                elif key in ("nmin", "n_min"):
                    kw["n_min"] = int(val)
                elif key in ("nmax", "n_max"):
                    kw["n_max"] = int(val)
                elif key in ("girth", "min_girth"):
                    kw["min_girth"] = int(val)
                else:
                    raise GraphError(f"unknown family key {key!r}")
            except ValueError:
                raise GraphError(f"bad value in family token {tok!r}") from None
        if "n_max" not in kw:
            raise GraphError("family needs nmax= or n=")
        kw.setdefault("n_min", 0 if kw.get("d") is None else kw["d"] + 1)
        return cls(**kw)

    def orders(self) -> list[int]:
        if self.d is None:
            return list(range(self.n_min, self.n_max + 1))
        return [n for n in range(max(self.n_min, self.d + 1 if self.d else 0), self.n_max + 1) if n * self.d % 2 == 0]

    def accepts(self, g: Graph) -> bool:
        facts = analyze(g)
        if self.d is not None and g.n and facts.regular_degree != self.d:
            return False
        if self.connected and facts.components != 1:
            return False
        if self.bipartite and not facts.bipartite:
            return False
        if self.triangle_free and not facts.triangle_free:
            return False
        if self.min_girth is not None and facts.girth is not None and facts.girth < self.min_girth:
            return False
        if self.c4_free and has_c4(g):
            return False
        return True

    def key(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def has_c4(g: Graph) -> bool:
    for u, v in itertools.combinations(range(g.n), 2):
        if popcount(g.rows[u] & g.rows[v]) >= 2:
            return True
    return False


# regular graphs ----------------------------------------------------------------


def _within_distance(rows, src: int, dst: int, limit: int) -> bool:
    """True iff ``dst`` is reachable from ``src`` within ``limit`` steps."""
    reach = 1 << src
    frontier = reach
    for _ in range(limit):
        nxt = 0
        for v in _bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~reach
        reach |= nxt
        if (reach >> dst) & 1:
            return True
        if not frontier:
            break
    return bool((reach >> dst) & 1)


def _bipartite_ok(rows, n) -> bool:
    color = [-1] * n
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for w in _bits(rows[u]):
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def _labelled_regular(n: int, d: int, spec: FamilySpec) -> Iterator[tuple[int, ...]]:
    rows = [0] * n
    deg = [0] * n
    forbid_short = spec.min_girth or (4 if spec.triangle_free or spec.bipartite else 3)
    # shortest cycle created by a new edge uv has length dist(u, v) + 1
    max_blocked = forbid_short - 2

    def ok_edge(v, w):
        if max_blocked >= 1 and _within_distance(rows, v, w, max_blocked):
            return False
        if spec.c4_free:
            # a path v-x-y-w with x != w, y != v closes a 4-cycle
            for x in _bits(rows[v]):
                if rows[x] & rows[w] & ~(1 << v):
                    return False
        return True

    def rec(v: int):
        if v == n:
            yield tuple(rows)
            return
        need = d - deg[v]
        if need == 0:
            yield from rec(v + 1)
            return
        if spec.connected and v > 0 and deg[v] == 0:
            return
        classes: dict[int, list[int]] = {}
        for w in range(v + 1, n):
            if deg[w] < d:
                classes.setdefault(rows[w], []).append(w)
        groups = list(classes.values())
        if sum(len(gr) for gr in groups) < need:
            return
        yield from choose(v, groups, 0, need, [])

    def choose(v, groups, gi, need, picked):
        if need == 0:
            yield from place(v, picked, 0)
            return
        if gi == len(groups):
            return
        room = sum(len(gr) for gr in groups[gi:])
        if room < need:
            return
        gr = groups[gi]
        for k in range(min(len(gr), need), -1, -1):
            yield from choose(v, groups, gi + 1, need - k, picked + gr[:k])

    def place(v, picked, i):
        if i == len(picked):
            if spec.bipartite and not _bipartite_ok(rows, n):
                return
            yield from rec(v + 1)
            return
        w = picked[i]
        if not ok_edge(v, w):
            return
        rows[v] |= 1 << w
        rows[w] |= 1 << v
        deg[v] += 1
        deg[w] += 1
        yield from place(v, picked, i + 1)
        rows[v] &= ~(1 << w)
        rows[w] &= ~(1 << v)
        deg[v] -= 1
        deg[w] -= 1

    yield from rec(0)


def _connected_regular(n: int, d: int, spec: FamilySpec) -> list[Graph]:
    sub = FamilySpec(n, n, d, True, spec.bipartite, spec.triangle_free, spec.c4_free, spec.min_girth)
    seen: dict[bytes, Graph] = {}
    for rows in _labelled_regular(n, d, sub):
        g = Graph(n, rows)
        if not sub.accepts(g):
            continue
        key = canonical_form(g)
        if key not in seen:
            seen[key] = canonical_graph(g).as_simple()
    return [seen[k] for k in sorted(seen)]


def _check_regular(spec: FamilySpec, max_n: int | None):
    if spec.d is None:
        raise GraphError("regular_graphs needs a degree")
    cap = DEFAULT_CAPS.get(spec.d) if max_n is None else max_n
    if cap is not None and spec.n_max > cap:
        raise GraphError(f"n_max={spec.n_max} exceeds the cap {cap} for d={spec.d}")
    if not spec.orders():
        raise GraphError(f"no order in {spec.n_min}..{spec.n_max} admits a {spec.d}-regular graph")


def regular_graphs(spec: FamilySpec, cache_dir: str | Path | None = None, max_n: int | None = None) -> list[Graph]:
    """One canonical representative per isomorphism class, in a fixed order.

    Order: by vertex count, then disconnected families by component
    multiset, then canonical form.  ``max_n`` replaces the default caps.
    """
    _check_regular(spec, max_n)
    if cache_dir is not None:
        path = Path(cache_dir) / f"regular-{spec.key()}.g6"
        if path.exists():
            return list(read_graph6(path))
        out = regular_graphs(spec, None, max_n)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_graph6(path, out)
        return out
    d = spec.d
    out: list[Graph] = []
    if spec.connected:
        for n in spec.orders():
            if d >= n:
                continue
            out.extend(_connected_regular(n, d, spec))
        return out
    # disconnected members are multisets of connected ones
    conn: dict[int, list[Graph]] = {}
    for n in range(d + 1, spec.n_max + 1):
        if n * d % 2 == 0:
            conn[n] = _connected_regular(n, d, spec)
    for n in spec.orders():
        if d == 0:
            out.append(Graph(n, (0,) * n))
            continue
        for parts in _partitions(n, sorted(conn)):
            pools = [conn[p] for p in parts]
            for combo in _multiset_product(parts, pools):
                out.append(canonical_graph(disjoint_union(combo)).as_simple())
    return out


def _partitions(n: int, sizes: list[int], start: int = 0) -> Iterator[list[int]]:
    if n == 0:
        yield []
        return
    for i in range(start, len(sizes)):
        s = sizes[i]
        if s <= n:
            for rest in _partitions(n - s, sizes, i):
                yield [s] + rest


def _multiset_product(parts: list[int], pools: list[list[Graph]]) -> Iterator[list[Graph]]:
    # equal sizes take nondecreasing pool indices
    def rec(i, prev_idx, acc):
        if i == len(parts):
            yield list(acc)
            return
        lo = prev_idx if i > 0 and parts[i] == parts[i - 1] else 0
        for j in range(lo, len(pools[i])):
            acc.append(pools[i][j])
            yield from rec(i + 1, j, acc)
            acc.pop()

    yield from rec(0, 0, [])


# all graphs ---------------------------------------------------------------------


def all_graphs(n: int, cap: int = ALL_GRAPHS_CAP) -> list[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, by one-vertex extension."""
    if n > cap:
        raise GraphError(f"n={n} exceeds the all-graphs cap {cap}")
    if n < 0:
        raise GraphError("negative order")
    level = [Graph(0, ())]
    for k in range(n):
        seen: dict[bytes, Graph] = {}
        for g in level:
            for nbrs in range(1 << k):
                rows = list(g.rows) + [nbrs]
                for v in _bits(nbrs):
                    rows[v] |= 1 << k
                h = Graph(k + 1, tuple(rows))
                key = canonical_form(h)
                if key not in seen:
                    seen[key] = canonical_graph(h).as_simple()
        level = [seen[key] for key in sorted(seen)]
    return level


def family_graphs(spec: FamilySpec, cache_dir: str | Path | None = None, max_n: int | None = None) -> list[Graph]:
    """Graphs of a family spec, regular or not."""
    if spec.d is not None:
        return regular_graphs(spec, cache_dir, max_n)
    cap = ALL_GRAPHS_CAP if max_n is None else max_n
    if spec.n_max > cap:
        raise GraphError(f"n={spec.n_max} exceeds the all-graphs cap {cap}")
    out = []
    for n in spec.orders():
        out.extend(g for g in all_graphs(n, cap) if spec.accepts(g))
    return out

