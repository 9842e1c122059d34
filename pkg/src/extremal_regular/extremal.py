"""Exact normalized comparisons and a catalog of checkable extremal bounds.

Every bound compares ``x^(1/r)`` against ``y^(1/s)`` for nonnegative
rationals, which is decided by comparing ``x^s`` with ``y^r``.  No floating
point is involved anywhere.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Callable, Mapping, Sequence

import numpy as np

from .canon import canonical_form
from .counting import (
    falling,
    hom_count,
    independence_polynomial,
    kdd_occupancy,
    matching_polynomial,
    occupancy_fraction,
    perfect_matchings,
)
from .graphcore import (
    Bigraph,
    GraphError,
    H_WR,
    LoopGraph,
    _two_coloring,
    analyze,
    complete,
    complete_bipartite,
    components,
    double_cover,
    exponentiate,
    extended_line_graph,
    lex_graph,
    looped_subgraph,
    parse_named,
)
from .structure import bigraph_hom_target, is_bipartite_swapping_target, is_loop_threshold


class HypothesisError(GraphError):
    """The graph or parameters do not satisfy the bound's hypothesis."""


Number = int | Fraction


def _as_number(x) -> Number:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def compare_normalized(a, va: int, b, vb: int) -> int:
    """Sign of ``a^(1/va) - b^(1/vb)`` for nonnegative rationals ``a``, ``b``."""
    if va < 1 or vb < 1:
        raise ValueError("roots must be positive integers")
    a, b = Fraction(a), Fraction(b)
    if a < 0 or b < 0:
        raise ValueError("bases must be nonnegative")
    # clear denominators: (p/q)^vb vs (r/s)^va  <=>  p^vb s^va vs r^va q^vb
    left = a.numerator**vb * b.denominator**va
    right = b.numerator**va * a.denominator**vb
    return (left > right) - (left < right)


def format_number(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_number(text: str) -> Number:
    return _as_number(Fraction(text))


@dataclass(frozen=True)
class BoundReport:
    """``lhs = (base, root)`` stands for ``base^(1/root)``; likewise ``rhs``."""

    bound_id: str
    graph: str
    lhs: tuple[Number, int]
    rhs: tuple[Number, int]
    sense: str  # "<=" or ">="
    verdict: str
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def recompute(self) -> str:
        return verdict_for(self.lhs, self.rhs, self.sense)

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "graph": self.graph,
            "lhs": {"base": format_number(self.lhs[0]), "root": self.lhs[1]},
            "rhs": {"base": format_number(self.rhs[0]), "root": self.rhs[1]},
            "sense": self.sense,
            "verdict": self.verdict,
            "params": dict(self.params),
            "details": dict(self.details),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "BoundReport":
        return cls(
            data["bound_id"],
            data["graph"],
            (parse_number(data["lhs"]["base"]), int(data["lhs"]["root"])),
            (parse_number(data["rhs"]["base"]), int(data["rhs"]["root"])),
            data["sense"],
            data["verdict"],
            dict(data.get("params", {})),
            dict(data.get("details", {})),
        )


def verdict_for(lhs, rhs, sense: str) -> str:
    c = compare_normalized(lhs[0], lhs[1], rhs[0], rhs[1])
    if c == 0:
        return "tight"
    if sense == "<=":
        return "holds" if c < 0 else "violated"
    if sense == ">=":
        return "holds" if c > 0 else "violated"
    raise ValueError(f"unknown sense {sense!r}")


# hypothesis helpers --------------------------------------------------------------


def _regular(g: LoopGraph, min_d: int = 1) -> int:
    if g.has_loops:
        raise HypothesisError("G must be a simple graph")
    if g.n == 0:
        raise HypothesisError("G must have at least one vertex")
    d = analyze(g).regular_degree
    if d is None:
        raise HypothesisError("G is not regular")
    if d < min_d:
        raise HypothesisError(f"G is {d}-regular; the bound needs degree at least {min_d}")
    return d


def _bipartite(g: LoopGraph) -> None:
    if not analyze(g).bipartite:
        raise HypothesisError("G is not bipartite")


def _simple(g: LoopGraph) -> None:
    if g.has_loops:
        raise HypothesisError("G must be a simple graph")


def _target(h) -> LoopGraph:
    if h is None:
        raise HypothesisError("this bound needs a target H")
    if isinstance(h, str):
        return parse_named(h)
    if not isinstance(h, LoopGraph):
        raise HypothesisError("H must be a loop-graph")
    return h


def _describe(x) -> str | int | None:
    if x is None:
        return None
    if isinstance(x, str):
        return x
    if isinstance(x, Bigraph):
        return canonical_form(x.graph).decode() + "|" + "".join("L" if s else "R" for s in x.left)
    if isinstance(x, LoopGraph):
        return canonical_form(x).decode()
    if isinstance(x, (Fraction, int)):
        return format_number(x)
    return str(x)


def _ind(g: LoopGraph) -> int:
    return independence_polynomial(g)(1)


# the catalog ---------------------------------------------------------------------
# each checker returns (lhs, rhs, sense, details)


def _kahn_max_ind(g, p):
    d = _regular(g)
    _bipartite(g)
    return (_ind(g), g.n), (2 ** (d + 1) - 1, 2 * d), "<=", {"d": d}


def _zhao_max_ind(g, p):
    d = _regular(g)
    return (_ind(g), g.n), (2 ** (d + 1) - 1, 2 * d), "<=", {"d": d}


def _gt_max_hom(g, p):
    h = _target(p.get("H"))
    d = _regular(g)
    _bipartite(g)
    return (hom_count(g, h), g.n), (hom_count(complete_bipartite(d, d), h), 2 * d), "<=", {"d": d}


def _threshold_max_hom(g, p):
    h = _target(p.get("H"))
    if is_loop_threshold(h) is None:
        raise HypothesisError("H is not a loop-threshold graph")
    d = _regular(g)
    return (hom_count(g, h), g.n), (hom_count(complete_bipartite(d, d), h), 2 * d), "<=", {"d": d}


def _bst_double_cover(g, p):
    h = _target(p.get("H"))
    if not is_bipartite_swapping_target(h).is_target:
        raise HypothesisError("H is not a bipartite swapping target")
    _simple(g)
    return (hom_count(g, h), 1), (hom_count(double_cover(g), h), 2), "<=", {}


def _kplus_one(g, h):
    d = _regular(g)
    details = {"d": d, "target_order": h.n}
    return (hom_count(g, h), g.n), (hom_count(complete(d + 1), h), d + 1), "<=", details


def _wr_max(g, p):
    return _kplus_one(g, H_WR())


def _sernau_loop_power(g, p):
    a = _target(p.get("A"))
    b = _target(p.get("B"))
    if b.has_loops or not analyze(b).bipartite:
        raise HypothesisError("B must be a bipartite graph")
    h = looped_subgraph(exponentiate(a, b))
    return _kplus_one(g, h)


def _bigraph_target_max(g, p):
    a, b = p.get("A"), p.get("B")
    if not isinstance(a, Bigraph) or not isinstance(b, Bigraph):
        raise HypothesisError("A and B must be bigraphs")
    return _kplus_one(g, bigraph_hom_target(a, b))


def _extended_line_max(g, p):
    h = _target(p.get("H"))
    if h.has_loops or not analyze(h).bipartite:
        raise HypothesisError("H must be a bipartite graph")
    return _kplus_one(g, extended_line_graph(h))


def _lam(p) -> Fraction:
    if p.get("lam") is None:
        raise HypothesisError("this bound needs a fugacity lam")
    lam = Fraction(p["lam"])
    if lam < 0:
        raise HypothesisError("fugacity must be nonnegative")
    return lam


def _indep_poly_max(g, p):
    lam = _lam(p)
    d = _regular(g)
    kdd = independence_polynomial(complete_bipartite(d, d))
    return (independence_polynomial(g)(lam), g.n), (kdd(lam), 2 * d), "<=", {"d": d}


def _occupancy_max(g, p):
    lam = _lam(p)
    d = _regular(g)
    return (_as_number(occupancy_fraction(g, lam)), 1), (_as_number(kdd_occupancy(d, lam)), 1), "<=", {"d": d}


def _ind_min(g, p):
    d = _regular(g, min_d=0)
    return (_ind(g), g.n), (d + 2, d + 1), ">=", {"d": d}


def _t(p, low: int = 0) -> int:
    if p.get("t") is None:
        raise HypothesisError("this bound needs a set size t")
    t = int(p["t"])
    if t < low:
        raise HypothesisError(f"t must be at least {low}")
    return t


def _ind_min_by_size(g, p):
    t = _t(p)
    d = _regular(g, min_d=0)
    poly = independence_polynomial(g)
    if g.n % (d + 1) == 0:
        a = g.n // (d + 1)
        details = {"d": d, "copies": 1}
        lhs = poly[t]
    else:
        # (d+1) disjoint copies of G have n(d+1) vertices, n cliques' worth
        a = g.n
        details = {"d": d, "copies": d + 1}
        lhs = (poly ** (d + 1))[t]
    rhs = comb(a, t) * (d + 1) ** t
    return (lhs, 1), (rhs, 1), ">=", details


def _q(p) -> int:
    if p.get("q") is None:
        raise HypothesisError("this bound needs a number of colours q")
    q = int(p["q"])
    if q < 2:
        raise HypothesisError("q must be at least 2")
    return q


def _color_min(g, p):
    q = _q(p)
    d = _regular(g, min_d=0)
    return (hom_count(g, complete(q)), g.n), (falling(q, d + 1), d + 1), ">=", {"d": d}


def _color_min_bip(g, p):
    q = _q(p)
    d = _regular(g)
    _bipartite(g)
    # q (1 - 1/q)^(d/2) = (q^2 ((q-1)/q)^d)^(1/2)
    rhs = _as_number(Fraction(q * q * (q - 1) ** d, q**d))
    return (hom_count(g, complete(q)), g.n), (rhs, 2), ">=", {"d": d}


def biregular_degrees(g: LoopGraph) -> tuple[int, int]:
    """``(a, b)`` with ``a <= b`` if G is (a, b)-biregular without isolated vertices."""
    _simple(g)
    coloring, _ = _two_coloring(g)
    if coloring is None:
        raise HypothesisError("G is not bipartite")
    pair = None
    for comp in components(g):
        sides = [{g.degree(v) for v in comp if coloring[v] == c} for c in (0, 1)]
        if any(len(s) != 1 for s in sides):
            raise HypothesisError("G is not biregular")
        here = tuple(sorted(next(iter(s)) for s in sides))
        if here[0] == 0:
            raise HypothesisError("G has an isolated vertex")
        if pair is not None and pair != here:
            raise HypothesisError("components have different side degrees")
        pair = here
    if pair is None:
        raise HypothesisError("G must have at least one vertex")
    return pair


def _biregular_max(g, p):
    h = _target(p.get("H"))
    a, b = biregular_degrees(g)
    ref = complete_bipartite(b, a)
    return (hom_count(g, h), g.n), (hom_count(ref, h), a + b), "<=", {"a": a, "b": b}


def _kruskal_katona(g, p):
    _simple(g)
    t = _t(p, low=1)
    lhs = independence_polynomial(g)[t]
    rhs = independence_polynomial(lex_graph(g.n, g.m))[t]
    return (lhs, 1), (rhs, 1), "<=", {"n": g.n, "m": g.m}


def min_degree_formula(n: int, delta: int) -> int:
    """``a(2^(n-delta) - 1) + 2^b`` where ``n = a(n-delta) + b``, ``0 <= b < n-delta``."""
    if not 0 <= delta < n:
        raise HypothesisError("need 0 <= delta < n")
    a, b = divmod(n, n - delta)
    return a * (2 ** (n - delta) - 1) + 2**b


def _min_degree_max(g, p):
    _simple(g)
    if p.get("delta") is None:
        raise HypothesisError("this bound needs a minimum degree delta")
    delta = int(p["delta"])
    n = g.n
    if not 0 <= delta < n:
        raise HypothesisError("need 0 <= delta < n")
    if analyze(g).min_degree < delta:
        raise HypothesisError(f"G has a vertex of degree below {delta}")
    poly = independence_polynomial(g)
    if p.get("t") is None:
        return (poly(1), 1), (min_degree_formula(n, delta), 1), "<=", {"form": "total"}
    t = _t(p, low=3)
    if 2 * delta > n:
        raise HypothesisError("the size-t form needs delta <= n/2")
    rhs = comb(delta, t) + comb(n - delta, t)
    return (poly[t], 1), (rhs, 1), "<=", {"form": "size"}


def _pm_max(g, p):
    d = _regular(g)
    return (perfect_matchings(g), g.n), (factorial(d), 2 * d), "<=", {"d": d}


def _matching_poly_max(g, p):
    lam = _lam(p)
    d = _regular(g)
    kdd = matching_polynomial(complete_bipartite(d, d))
    return (matching_polynomial(g)(lam), g.n), (kdd(lam), 2 * d), "<=", {"d": d}


def _pm_min_bip(g, p):
    d = _regular(g)
    _bipartite(g)
    half = g.n // 2
    rhs = _as_number(Fraction(d - 1) ** (d - 1) / Fraction(d) ** (d - 2))
    return (perfect_matchings(g), half), (rhs, 1), ">=", {"d": d}


BOUNDS: dict[str, Callable] = {
    "kahn_max_ind": _kahn_max_ind,
    "zhao_max_ind": _zhao_max_ind,
    "gt_max_hom": _gt_max_hom,
    "threshold_max_hom": _threshold_max_hom,
    "bst_double_cover": _bst_double_cover,
    "wr_max": _wr_max,
    "sernau_loop_power": _sernau_loop_power,
    "bigraph_target_max": _bigraph_target_max,
    "extended_line_max": _extended_line_max,
    "indep_poly_max": _indep_poly_max,
    "occupancy_max": _occupancy_max,
    "ind_min": _ind_min,
    "ind_min_by_size": _ind_min_by_size,
    "color_min": _color_min,
    "color_min_bip": _color_min_bip,
    "biregular_max": _biregular_max,
    "kruskal_katona": _kruskal_katona,
    "min_degree_max": _min_degree_max,
    "pm_max": _pm_max,
    "matching_poly_max": _matching_poly_max,
    "pm_min_bip": _pm_min_bip,
}


def check_bound(g: LoopGraph, bound_id: str, **params) -> BoundReport:
    """Evaluate one catalogued bound on ``g`` exactly.

    Raises ``HypothesisError`` when ``g`` (or a parameter) is outside the
    bound's hypothesis and ``KeyError`` for an unknown bound id.
    """
    try:
        fn = BOUNDS[bound_id]
    except KeyError:
        raise KeyError(f"unknown bound id {bound_id!r}") from None
    lhs, rhs, sense, details = fn(g, params)
    lhs = (_as_number(lhs[0]), lhs[1])
    rhs = (_as_number(rhs[0]), rhs[1])
    shown = {k: _describe(v) for k, v in sorted(params.items()) if v is not None}
    return BoundReport(
        bound_id,
        canonical_form(g).decode(),
        lhs,
        rhs,
        sense,
        verdict_for(lhs, rhs, sense),
        shown,
        details,
    )


def _check_one(args):
    g, bound_id, params, skip = args
    try:
        return check_bound(g, bound_id, **params)
    except HypothesisError:
        if skip:
            return None
        raise


def check_many(
    graphs: Sequence[LoopGraph], bound_id: str, workers: int = 1, skip_outside: bool = False, **params
) -> list[BoundReport | None]:
    """Reports in input order; identical for any worker count.

    With ``skip_outside`` a graph outside the hypothesis yields ``None``
    instead of raising.
    """
    jobs = [(g, bound_id, params, skip_outside) for g in graphs]
    if workers <= 1 or len(jobs) < 2:
        return [_check_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


# generalized Hölder ----------------------------------------------------------------


def _table(t, shape: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    if isinstance(t, Mapping):
        out = {}
        for key, val in t.items():
            key = tuple(key) if isinstance(key, (tuple, list)) else (key,)
            if len(key) != len(shape) or any(not 0 <= k < s for k, s in zip(key, shape)):
                raise GraphError(f"table key {key} does not fit shape {shape}")
            out[key] = Fraction(val)
        return out
    arr = np.asarray(t, dtype=object)
    if arr.shape != shape:
        raise GraphError(f"table has shape {arr.shape}, expected {shape}")
    return {idx: Fraction(arr[idx]) for idx in np.ndindex(*shape)}


def generalized_holder_check(
    n: int,
    cover: Sequence[Sequence[int]],
    spaces: Sequence[Sequence],
    tables: Sequence,
) -> tuple[Fraction, Fraction, bool]:
    """Return ``(lhs, rhs, holds)`` with ``rhs`` the product of ``||f_j||_d^d``.

    ``spaces[i]`` lists the point weights of the i-th finite space,
    ``cover[j]`` the coordinates read by ``tables[j]`` (in that order).
    The inequality checked is ``lhs^d <= rhs``.
    """
    if len(spaces) != n:
        raise GraphError(f"expected {n} spaces, got {len(spaces)}")
    if len(cover) != len(tables):
        raise GraphError("one table per cover set is required")
    hits = [0] * n
    for a in cover:
        if len(set(a)) != len(a) or any(not 0 <= i < n for i in a):
            raise GraphError(f"bad cover set {tuple(a)}")
        for i in a:
            hits[i] += 1
    if n == 0 or len(set(hits)) != 1 or hits[0] == 0:
        raise GraphError(f"every coordinate must be covered the same positive number of times, got {hits}")
    d = hits[0]
    weights = [[Fraction(w) for w in ws] for ws in spaces]
    if any(w < 0 for ws in weights for w in ws):
        raise GraphError("weights must be nonnegative")
    fs = [_table(t, tuple(len(weights[i]) for i in a)) for a, t in zip(cover, tables)]
    if any(v < 0 for f in fs for v in f.values()):
        raise GraphError("tables must be nonnegative")

    lhs = Fraction(0)
    for x in itertools.product(*(range(len(ws)) for ws in weights)):
        w = prod((weights[i][x[i]] for i in range(n)), start=Fraction(1))
        if w == 0:
            continue
        term = w
        for a, f in zip(cover, fs):
            term *= f.get(tuple(x[i] for i in a), 0)
            if term == 0:
                break
        lhs += term

    rhs = Fraction(1)
    for a, f in zip(cover, fs):
        norm = Fraction(0)
        for key, val in f.items():
            norm += val**d * prod((weights[i][k] for i, k in zip(a, key)), start=Fraction(1))
        rhs *= norm
    return lhs, rhs, lhs**d <= rhs


def common_neighbourhood_table(h: LoopGraph, d: int) -> np.ndarray:
    """``f(z_1..z_d)`` = size of the common neighbourhood of ``z_1..z_d`` in H."""
    shape = (h.n,) * d
    out = np.zeros(shape, dtype=object)
    full = (1 << h.n) - 1
    for idx in np.ndindex(*shape):
        mask = full
        for z in idx:
            mask &= h.rows[z]
        out[idx] = bin(mask).count("1")
    return out
