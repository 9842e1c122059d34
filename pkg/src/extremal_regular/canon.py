"""Canonical labelling of loop-graphs.

Partition refinement to an equitable ordered partition, then
individualisation/refinement search.  The canonical leaf is the maximum of
(refinement trace, relabelled adjacency rows) over the search tree.
Automorphisms discovered at leaves prune the tree twice over: subtrees
that are automorphic images of finished ones are skipped, and a leaf that
reproduces the first or best leaf jumps back to where the paths diverge.
"""
from __future__ import annotations

from collections import deque

from .graphcore import LoopGraph, _bits, popcount


def _refine(rows, cells, queue_cells):
    """Refine ``cells`` in place to an equitable partition.  Returns the trace."""
    trace = []
    queue = deque(queue_cells)
    queued = {id(c) for c in queue}
    while queue:
        w = queue.popleft()
        queued.discard(id(w))
        wmask = 0
        for v in w:
            wmask |= 1 << v
        new_cells = []
        for pos, c in enumerate(cells):
            if len(c) == 1:
                new_cells.append(c)
                continue
            groups = {}
            for v in c:
                groups.setdefault(popcount(rows[v] & wmask), []).append(v)
            if len(groups) == 1:
                new_cells.append(c)
                continue
            keys = sorted(groups)
            parts = [groups[k] for k in keys]
            trace.append((pos, tuple((k, len(groups[k])) for k in keys)))
            new_cells.extend(parts)
            if id(c) in queued:
                queued.discard(id(c))
                try:
                    queue.remove(c)
                except ValueError:
                    pass
            for p in parts:
                queue.append(p)
                queued.add(id(p))
        cells[:] = new_cells
    return tuple(trace)


class _Search:
    def __init__(self, g: LoopGraph):
        self.g = g
        self.rows = g.rows
        self.first = None  # (path, key, perm)
        self.best = None   # (path, key, perm, invs)
        self.autos: list[tuple[int, ...]] = []

    def cert(self, perm):
        pos = [0] * len(perm)
        for i, v in enumerate(perm):
            pos[v] = i
        out = []
        for v in perm:
            r = 0
            for w in _bits(self.rows[v]):
                r |= 1 << pos[w]
            out.append(r)
        return tuple(out)

    def orbit_find(self, prefix):
        gens = [a for a in self.autos if all(a[p] == p for p in prefix)]
        if not gens:
            return None
        parent = {v: v for v in range(self.g.n)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in gens:
            for v in range(self.g.n):
                ra, rb = find(v), find(a[v])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        return find

    def run(self, cells, prefix, invs):
        """Returns the depth to jump back to, or None to continue normally."""
        depth = len(prefix)
        if self.best is not None:
            best_invs = self.best[3]
            if tuple(invs) < tuple(best_invs[: len(invs)]):
                return None
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            return self.leaf(cells, prefix, invs)
        target_pos = cells.index(target)
        explored = []
        for v in sorted(target):
            find = self.orbit_find(prefix)
            if find is not None and any(find(u) == find(v) for u in explored):
                continue
            child = [list(c) for c in cells]
            rest = [u for u in target if u != v]
            child[target_pos : target_pos + 1] = [[v], rest]
            trace = (target_pos, _refine(self.rows, child, [child[target_pos]]))
            jump = self.run(child, prefix + [v], invs + [trace])
            if jump is not None and jump < depth:
                return jump
            explored.append(v)
        return None

    def leaf(self, cells, prefix, invs):
        perm = tuple(c[0] for c in cells)
        key = (tuple(invs), self.cert(perm))
        if self.first is None:
            self.first = (list(prefix), key, perm)
            self.best = (list(prefix), key, perm, list(invs))
            return None
        for ref_path, ref_key, ref_perm in (self.first[:3], self.best[:3]):
            if key == ref_key:
                gamma = [0] * len(perm)
                for a, b in zip(ref_perm, perm):
                    gamma[a] = b
                self.autos.append(tuple(gamma))
                common = 0
                while common < min(len(ref_path), len(prefix)) and ref_path[common] == prefix[common]:
                    common += 1
                return common
        if key > self.best[1]:
            self.best = (list(prefix), key, perm, list(invs))
        return None


def canonical_labeling(g: LoopGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return ``(order, cert)``: ``order[i]`` is the vertex placed at position ``i``."""
    n = g.n
    if n == 0:
        return (), ()
    keyed = {}
    for v in range(n):
        keyed.setdefault((g.has_loop(v), g.degree(v)), []).append(v)
    cells = [keyed[k] for k in sorted(keyed)]
    _refine(g.rows, cells, list(cells))
    s = _Search(g)
    s.run(cells, [], [])
    perm = s.best[2]
    return perm, s.cert(perm)


def canonical_form(g: LoopGraph) -> bytes:
    """Byte string equal for two loop-graphs iff they are isomorphic."""
    _, cert = canonical_labeling(g)
    body = ",".join(format(r, "x") for r in cert)
    return f"{g.n}:{body}".encode()


def canonical_graph(g: LoopGraph) -> LoopGraph:
    order, _ = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return g.relabel(perm)


def is_isomorphic(a: LoopGraph, b: LoopGraph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    return canonical_form(a) == canonical_form(b)
