"""Slow, obviously-correct reference implementations used only by the tests."""
from __future__ import annotations

import itertools

import networkx as nx

from extremal_regular.graphcore import Graph, LoopGraph


def edges_of(g: LoopGraph):
    return [(u, v) for u in range(g.n) for v in range(u, g.n) if (g.rows[u] >> v) & 1]


def brute_hom(g: LoopGraph, h: LoopGraph) -> int:
    es = edges_of(g)
    return sum(
        all((h.rows[f[u]] >> f[v]) & 1 for u, v in es) for f in itertools.product(range(h.n), repeat=g.n)
    )


def brute_independent_sets(g: LoopGraph) -> list[frozenset]:
    es = edges_of(g)
    out = []
    for r in range(g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            ss = set(s)
            if not any(u in ss and v in ss for u, v in es):
                out.append(frozenset(s))
    return out


def brute_ind_poly(g: LoopGraph) -> list[int]:
    coeffs = [0] * (g.n + 1)
    for s in brute_independent_sets(g):
        coeffs[len(s)] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def brute_matching_poly(g: LoopGraph) -> list[int]:
    es = [(u, v) for u, v in edges_of(g) if u != v]
    coeffs = [0] * (g.n // 2 + 1)
    for r in range(len(coeffs)):
        for m in itertools.combinations(es, r):
            used = [x for e in m for x in e]
            if len(set(used)) == len(used):
                coeffs[r] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def brute_potts_poly(g: LoopGraph, q: int) -> list[int]:
    es = [(u, v) for u, v in edges_of(g) if u != v]
    coeffs = [0] * (len(es) + 1)
    for sigma in itertools.product(range(q), repeat=g.n):
        coeffs[sum(sigma[u] == sigma[v] for u, v in es)] += 1
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def brute_canonical(g: LoopGraph) -> tuple:
    """Lexicographically largest relabelled adjacency matrix over all orderings."""
    best = None
    for perm in itertools.permutations(range(g.n)):
        key = tuple(tuple((g.rows[perm[i]] >> perm[j]) & 1 for j in range(g.n)) for i in range(g.n))
        if best is None or key > best:
            best = key
    return best


def to_nx(g: LoopGraph) -> nx.Graph:
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(edges_of(g))
    return x


def from_nx(x: nx.Graph) -> Graph:
    nodes = sorted(x.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(idx[u], idx[v]) for u, v in x.edges()])


def atlas_graphs(n: int) -> list[Graph]:
    """networkx's atlas lists every graph on up to 7 nodes exactly once."""
    return [from_nx(x) for x in nx.graph_atlas_g() if x.number_of_nodes() == n]


def labelled_regular(n: int, d: int):
    """Every labelled d-regular graph on n vertices as an edge list."""
    deg = [0] * n
    chosen: list[tuple[int, int]] = []

    def rec(v):
        if v == n:
            yield list(chosen)
            return
        free = [w for w in range(v + 1, n) if deg[w] < d]
        for nbrs in itertools.combinations(free, d - deg[v]):
            for w in nbrs:
                deg[w] += 1
                chosen.append((v, w))
            deg[v] = d
            yield from rec(v + 1)
            deg[v] -= len(nbrs)
            for w in nbrs:
                deg[w] -= 1
                chosen.pop()

    yield from rec(0)


def iso_classes(graphs: list[nx.Graph]) -> list[nx.Graph]:
    buckets: dict[tuple, list[nx.Graph]] = {}
    for x in graphs:
        tri = nx.triangles(x)
        ball = {v: len(nx.single_source_shortest_path_length(x, v, cutoff=2)) for v in x}
        key = tuple(sorted((tri[v], ball[v], x.degree(v)) for v in x))
        bucket = buckets.setdefault(key, [])
        if not any(nx.is_isomorphic(x, y) for y in bucket):
            bucket.append(x)
    return [y for b in buckets.values() for y in b]


def brute_swap_first_set(n: int, bad: list[tuple[int, int]]):
    """First subset A (ascending as a bitmask integer) cutting every bad edge once."""
    for a in range(1 << n):
        if all(((a >> u) & 1) != ((a >> v) & 1) for u, v in bad):
            return a
    return None
