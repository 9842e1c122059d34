"""Conjecture scans and extremal-landscape profiles over enumerated families.

A scan evaluates every graph of a family against a conjectured inequality
with exact arithmetic.  It records every violation with its comparison
pair, plus the family's extremal witnesses.  Per-graph work may run in a
process pool; aggregation happens afterwards in family order, so reports
do not depend on the worker count.
"""
from __future__ import annotations

import functools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Callable, Mapping, Sequence

from .canon import canonical_form, is_isomorphic
from .counting import hom_count, independence_polynomial, matching_polynomial, potts_internal_energy
from .enumeration import FamilySpec, family_graphs
from .extremal import (
    HypothesisError,
    _as_number,
    compare_normalized,
    format_number,
    parse_number,
    verdict_for,
)
from .graphcore import (
    Graph,
    GraphError,
    LoopGraph,
    analyze,
    complete,
    complete_bipartite,
    components,
    double_cover,
    heawood,
    parse_named,
    petersen,
)

POTTS_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


@dataclass(frozen=True)
class Comparison:
    """``lhs[0]^(1/lhs[1])`` against ``rhs[0]^(1/rhs[1])`` in direction ``sense``."""

    label: str
    lhs: tuple
    rhs: tuple
    sense: str

    @property
    def verdict(self) -> str:
        return verdict_for(self.lhs, self.rhs, self.sense)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "lhs": {"base": format_number(self.lhs[0]), "root": self.lhs[1]},
            "rhs": {"base": format_number(self.rhs[0]), "root": self.rhs[1]},
            "sense": self.sense,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Comparison":
        return cls(
            data["label"],
            (parse_number(data["lhs"]["base"]), int(data["lhs"]["root"])),
            (parse_number(data["rhs"]["base"]), int(data["rhs"]["root"])),
            data["sense"],
        )


@dataclass(frozen=True)
class Witness:
    label: str
    kind: str  # "argmax" or "argmin"
    graph: str
    n: int
    base: object
    root: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "kind": self.kind,
            "graph": self.graph,
            "n": self.n,
            "base": format_number(self.base),
            "root": self.root,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Witness":
        return cls(data["label"], data["kind"], data["graph"], int(data["n"]), parse_number(data["base"]), int(data["root"]))


@dataclass(frozen=True)
class ValueRow:
    graph: str
    n: int
    label: str
    base: object
    root: int
    verdict: str

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "n": self.n,
            "label": self.label,
            "base": format_number(self.base),
            "root": self.root,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ValueRow":
        return cls(data["graph"], int(data["n"]), data["label"], parse_number(data["base"]), int(data["root"]), data["verdict"])


@dataclass(frozen=True)
class Violation:
    graph: str
    comparison: Comparison

    def to_dict(self) -> dict:
        return {"graph": self.graph, "comparison": self.comparison.to_dict()}

    @classmethod
    def from_dict(cls, data: Mapping) -> "Violation":
        return cls(data["graph"], Comparison.from_dict(data["comparison"]))


@dataclass(frozen=True)
class ScanReport:
    conjecture_id: str
    family: dict
    params: dict
    graphs_checked: int
    graphs_skipped: int
    violations: tuple[Violation, ...]
    witnesses: tuple[Witness, ...]
    values: tuple[ValueRow, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def held(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "conjecture_id": self.conjecture_id,
            "family": dict(self.family),
            "params": dict(self.params),
            "graphs_checked": self.graphs_checked,
            "graphs_skipped": self.graphs_skipped,
            "violations": [v.to_dict() for v in self.violations],
            "witnesses": [w.to_dict() for w in self.witnesses],
            "values": [r.to_dict() for r in self.values],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ScanReport":
        return cls(
            data["conjecture_id"],
            dict(data["family"]),
            dict(data["params"]),
            int(data["graphs_checked"]),
            int(data["graphs_skipped"]),
            tuple(Violation.from_dict(v) for v in data["violations"]),
            tuple(Witness.from_dict(w) for w in data["witnesses"]),
            tuple(ValueRow.from_dict(r) for r in data.get("values", [])),
            tuple(data.get("notes", [])),
        )


# conjecture evaluators --------------------------------------------------------------
# An evaluator maps (graph, params) to a list of comparisons, or None to skip
# a graph outside the conjecture's hypothesis.

Evaluator = Callable[[Graph, dict], "list[Comparison] | None"]


def _regular_degree(g: Graph) -> int | None:
    d = analyze(g).regular_degree if g.n else None
    return d if d else None


def _coloring_max(g, p):
    d = _regular_degree(g)
    if d is None:
        return None
    kq = complete(p["q"])
    return [Comparison("", (hom_count(g, kq), g.n), (hom_count(complete_bipartite(d, d), kq), 2 * d), "<=")]


def _color_double_cover(g, p):
    kq = complete(p["q"])
    return [Comparison("", (hom_count(g, kq), 1), (hom_count(double_cover(g), kq), 2), "<=")]


def _potts_energy(g, p):
    d = _regular_degree(g)
    if d is None:
        return None
    q, kdd = p["q"], complete_bipartite(d, d)
    out = []
    for x in p.get("x_grid", POTTS_GRID):
        x = Fraction(x)
        mine = _as_number(potts_internal_energy(g, q, x))
        ref = _as_number(potts_internal_energy(kdd, q, x))
        out.append(Comparison(f"x={format_number(x)}", (mine, 1), (ref, 1), ">="))
    return out


def _fixed_size(g, p, poly_fn):
    d = _regular_degree(g)
    if d is None or g.n % (2 * d):
        return None
    a = g.n // (2 * d)
    mine = poly_fn(g)
    ref = poly_fn(complete_bipartite(d, d)) ** a
    top = max(mine.degree, ref.degree)
    return [Comparison(f"t={t}", (mine[t], 1), (ref[t], 1), "<=") for t in range(top + 1)]


def _ind_fixed_size(g, p):
    return _fixed_size(g, p, independence_polynomial)


def _mat_fixed_size(g, p):
    return _fixed_size(g, p, matching_polynomial)


def _edge_product(g, value: Callable[[int, int], int]):
    """``prod_uv value(d_u, d_v)^(1/(d_u d_v))`` as an exact ``(base, root)`` pair."""
    degs = [g.degree(v) for v in range(g.n)]
    edges = [(u, v) for u, v in g.edges() if u != v]
    root = lcm(*(degs[u] * degs[v] for u, v in edges)) if edges else 1
    cache: dict[tuple[int, int], int] = {}
    base = 1
    for u, v in edges:
        key = tuple(sorted((degs[u], degs[v])))
        if key not in cache:
            cache[key] = value(*key)
        base *= cache[key] ** (root // (key[0] * key[1]))
    return base, root


def _kahn_irregular(g, p):
    if g.n == 0 or analyze(g).min_degree == 0:
        return None
    ref = _edge_product(g, lambda a, b: 2**a + 2**b - 1)
    return [Comparison("", (independence_polynomial(g)(1), 1), ref, "<=")]


def _galvin_irregular(g, p):
    facts = analyze(g)
    if g.n == 0 or facts.min_degree == 0 or not facts.bipartite:
        return None
    h = p["H"]
    ref = _edge_product(g, lambda a, b: hom_count(complete_bipartite(a, b), h))
    return [Comparison("", (hom_count(g, h), 1), ref, "<=")]


def _triangle_free_max(g, p):
    d = _regular_degree(g)
    if d is None or not analyze(g).triangle_free:
        return None
    h = p["H"]
    return [Comparison("", (hom_count(g, h), g.n), (hom_count(complete_bipartite(d, d), h), 2 * d), "<=")]


def _girth_extrema(g, p):
    if _regular_degree(g) != 3:
        return None
    ref = p["reference"]
    sense = ">=" if p["extremum"] == "min" else "<="
    return [Comparison("", (independence_polynomial(g)(1), g.n), (independence_polynomial(ref)(1), ref.n), sense)]


CONJECTURES: dict[str, Evaluator] = {
    "coloring_max": _coloring_max,
    "color_double_cover": _color_double_cover,
    "potts_energy": _potts_energy,
    "ind_fixed_size": _ind_fixed_size,
    "mat_fixed_size": _mat_fixed_size,
    "kahn_irregular": _kahn_irregular,
    "galvin_irregular": _galvin_irregular,
    "triangle_free_max": _triangle_free_max,
    "girth_extrema": _girth_extrema,
}


def register_conjecture(conjecture_id: str, evaluator: Evaluator) -> None:
    """Add a scanner.  Evaluators must be importable module-level functions for pools."""
    CONJECTURES[conjecture_id] = evaluator


def _normalize_params(conjecture_id: str, family: FamilySpec, params: dict) -> tuple[dict, list[str]]:
    p = dict(params)
    notes: list[str] = []
    if conjecture_id in ("coloring_max", "color_double_cover", "potts_energy"):
        if p.get("q") is None:
            raise HypothesisError(f"{conjecture_id} needs q")
        p["q"] = int(p["q"])
        if p["q"] < 3:
            raise HypothesisError("q must be at least 3")
    if conjecture_id == "potts_energy":
        p["x_grid"] = tuple(Fraction(x) for x in p.get("x_grid") or POTTS_GRID)
        if any(not 0 < x < 1 for x in p["x_grid"]):
            raise HypothesisError("grid points x = exp(-beta) must lie in (0, 1)")
        notes.append("a finite grid of temperatures can find violations but cannot confirm the inequality for all beta")
    if conjecture_id in ("galvin_irregular", "triangle_free_max"):
        h = p.get("H")
        if h is None:
            raise HypothesisError(f"{conjecture_id} needs a target H")
        p["H"] = parse_named(h) if isinstance(h, str) else h
    if conjecture_id == "girth_extrema":
        if family.triangle_free and not family.c4_free:
            p.setdefault("extremum", "min")
            p.setdefault("reference", petersen())
        elif family.c4_free:
            p.setdefault("extremum", "max")
            p.setdefault("reference", heawood())
        elif "reference" not in p:
            raise HypothesisError("girth_extrema needs a triangle-free or C4-free family")
        if isinstance(p["reference"], str):
            p["reference"] = parse_named(p["reference"])
        notes.append("extremality is asserted relative to the scanned family only")
    return p, notes


def _shown_params(p: dict) -> dict:
    out = {}
    for k, v in sorted(p.items()):
        if isinstance(v, LoopGraph):
            out[k] = canonical_form(v).decode()
        elif isinstance(v, (tuple, list)):
            out[k] = [format_number(x) for x in v]
        elif isinstance(v, Fraction):
            out[k] = format_number(v)
        else:
            out[k] = v
    return out


def _evaluate(args):
    conjecture_id, g, p = args
    return CONJECTURES[conjecture_id](g, p)


def _run_pool(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) < 2:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def _extremes(entries: list[tuple]) -> tuple[tuple, tuple]:
    """argmax and argmin over ``(base, root, form, n)``; ties go to the smaller form."""

    def cmp(a, b):
        c = compare_normalized(a[0], a[1], b[0], b[1])
        if c:
            return c
        return (a[3] > b[3]) - (a[3] < b[3]) or (a[2] > b[2]) - (a[2] < b[2])

    ordered = sorted(entries, key=functools.cmp_to_key(cmp))
    # among ties at the top, prefer the smallest order then form
    top = ordered[-1]
    best = [e for e in ordered if compare_normalized(e[0], e[1], top[0], top[1]) == 0]
    return min(best, key=lambda e: (e[3], e[2])), ordered[0]


def scan_conjecture(
    conjecture_id: str,
    family: FamilySpec,
    params: dict | None = None,
    graphs: Sequence[Graph] | None = None,
    workers: int = 1,
    cache_dir=None,
    max_n: int | None = None,
    keep_values: bool = False,
) -> ScanReport:
    """Check every graph of ``family`` (or the given ``graphs``) exactly."""
    if conjecture_id not in CONJECTURES:
        raise KeyError(f"unknown conjecture id {conjecture_id!r}")
    p, notes = _normalize_params(conjecture_id, family, params or {})
    if graphs is None:
        graphs = family_graphs(family, cache_dir, max_n)
    results = _run_pool(_evaluate, [(conjecture_id, g, p) for g in graphs], workers)
    return _aggregate(conjecture_id, family, p, graphs, results, notes, keep_values)


def _aggregate(conjecture_id, family, p, graphs, results, notes, keep_values) -> ScanReport:
    checked = skipped = 0
    violations: list[Violation] = []
    per_label: dict[str, list[tuple]] = {}
    values: list[ValueRow] = []
    for g, comps in zip(graphs, results):
        if comps is None:
            skipped += 1
            continue
        checked += 1
        form = canonical_form(g).decode()
        for c in comps:
            v = c.verdict
            if v == "violated":
                violations.append(Violation(form, c))
            per_label.setdefault(c.label, []).append((c.lhs[0], c.lhs[1], form, g.n))
            if keep_values:
                values.append(ValueRow(form, g.n, c.label, c.lhs[0], c.lhs[1], v))
    witnesses = []
    for label in sorted(per_label):
        hi, lo = _extremes(per_label[label])
        witnesses.append(Witness(label, "argmax", hi[2], hi[3], hi[0], hi[1]))
        witnesses.append(Witness(label, "argmin", lo[2], lo[3], lo[0], lo[1]))
    return ScanReport(
        conjecture_id,
        asdict(family),
        _shown_params(p),
        checked,
        skipped,
        tuple(violations),
        tuple(witnesses),
        tuple(values),
        tuple(notes),
    )


# maximizer profiles ----------------------------------------------------------------


def hom_into_copies(g: LoopGraph, h: LoopGraph, k: int) -> int:
    """``hom(G, kH)``: each component of G picks one of the k copies."""
    return prod((k * hom_count(g.induced(c), h) for c in components(g)), start=1)


@dataclass(frozen=True)
class ProfileEntry:
    k: int | None
    argmax: str
    argmax_n: int
    value: tuple
    is_kdd: bool
    is_kd1: bool
    kdd_value: tuple
    kd1_value: tuple
    beats_kdd: int
    beats_kd1: int

    def to_dict(self) -> dict:
        pair = lambda v: {"base": format_number(v[0]), "root": v[1]}
        return {
            "k": self.k,
            "argmax": self.argmax,
            "argmax_n": self.argmax_n,
            "value": pair(self.value),
            "is_kdd": self.is_kdd,
            "is_kd1": self.is_kd1,
            "kdd_value": pair(self.kdd_value),
            "kd1_value": pair(self.kd1_value),
            "beats_kdd": self.beats_kdd,
            "beats_kd1": self.beats_kd1,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "ProfileEntry":
        pair = lambda v: (parse_number(v["base"]), int(v["root"]))
        return cls(
            data["k"],
            data["argmax"],
            int(data["argmax_n"]),
            pair(data["value"]),
            bool(data["is_kdd"]),
            bool(data["is_kd1"]),
            pair(data["kdd_value"]),
            pair(data["kd1_value"]),
            int(data["beats_kdd"]),
            int(data["beats_kd1"]),
        )


@dataclass(frozen=True)
class Profile:
    d: int
    family: dict
    target: str
    graphs: tuple[str, ...]
    entries: tuple[ProfileEntry, ...]
    values: tuple[ValueRow, ...]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "family": dict(self.family),
            "target": self.target,
            "graphs": list(self.graphs),
            "entries": [e.to_dict() for e in self.entries],
            "values": [r.to_dict() for r in self.values],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "Profile":
        return cls(
            int(data["d"]),
            dict(data["family"]),
            data["target"],
            tuple(data["graphs"]),
            tuple(ProfileEntry.from_dict(e) for e in data["entries"]),
            tuple(ValueRow.from_dict(r) for r in data["values"]),
        )


def _profile_values(args):
    g, h, ks = args
    if ks is None:
        return [hom_count(g, h)]
    comp_homs = [hom_count(g.induced(c), h) for c in components(g)]
    return [prod((k * x for x in comp_homs), start=1) for k in ks]


def maximizer_profile(
    d: int,
    family: FamilySpec,
    h: LoopGraph | str,
    k_grid: Sequence[int] | None = None,
    graphs: Sequence[Graph] | None = None,
    workers: int = 1,
    cache_dir=None,
    max_n: int | None = None,
) -> Profile:
    """Rank ``hom(G, H)^(1/v(G))`` over the family plus ``K_{d,d}`` and ``K_{d+1}``.

    With ``k_grid`` the target becomes ``k`` disjoint copies of H for each k.
    """
    if d < 1:
        raise GraphError("d must be positive")
    if family.d is not None and family.d != d:
        raise GraphError(f"family degree {family.d} does not match d={d}")
    h = parse_named(h) if isinstance(h, str) else h
    if graphs is None:
        fam = family if family.d is not None else FamilySpec(**{**asdict(family), "d": d})
        graphs = family_graphs(fam, cache_dir, max_n)
    kdd, kd1 = complete_bipartite(d, d), complete(d + 1)
    pool = list(graphs)
    for ref in (kdd, kd1):
        if not any(is_isomorphic(ref, g) for g in pool):
            pool.append(ref)
    for g in pool:
        if analyze(g).regular_degree != d:
            raise GraphError("profile graphs must be d-regular")
    ks = None if not k_grid else [int(k) for k in k_grid]
    if ks is not None and any(k < 1 for k in ks):
        raise GraphError("k-grid entries must be positive")
    table = _run_pool(_profile_values, [(g, h, ks) for g in pool], workers)
    forms = [canonical_form(g).decode() for g in pool]
    kdd_form, kd1_form = canonical_form(kdd).decode(), canonical_form(kd1).decode()
    entries, rows = [], []
    for j, k in enumerate(ks if ks is not None else [None]):
        cand = [(table[i][j], pool[i].n, forms[i], pool[i].n) for i in range(len(pool))]
        best, _ = _extremes(cand)
        kdd_val = next((c[0], c[1]) for c in cand if c[2] == kdd_form)
        kd1_val = next((c[0], c[1]) for c in cand if c[2] == kd1_form)
        entries.append(
            ProfileEntry(
                k,
                best[2],
                best[3],
                (best[0], best[1]),
                best[2] == kdd_form,
                best[2] == kd1_form,
                kdd_val,
                kd1_val,
                compare_normalized(best[0], best[1], *kdd_val),
                compare_normalized(best[0], best[1], *kd1_val),
            )
        )
        label = "" if k is None else f"k={k}"
        for c in cand:
            rows.append(ValueRow(c[2], c[3], label, c[0], c[1], ""))
    target = canonical_form(h).decode()
    return Profile(d, asdict(family), target, tuple(forms), tuple(entries), tuple(rows))
