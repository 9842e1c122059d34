"""Command-line entry point.

Exit codes: 0 success (and every checked bound held), 1 a violation was
found by ``verify`` or ``scan``, 2 usage, parse, hypothesis or cap errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .canon import canonical_form
from .counting import (
    hom_count,
    independence_polynomial,
    matching_polynomial,
    occupancy_fraction,
    potts_polynomial,
)
from .enumeration import FamilySpec, family_graphs
from .extremal import BOUNDS, HypothesisError, check_many, format_number
from .formats import read_graph6, read_lg, to_graph6, write_graph6
from .graphcore import Bigraph, GraphError, LoopGraph, parse_named
from .hunt import CONJECTURES, maximizer_profile, scan_conjecture
from . import reports

DEFAULT_CACHE = ".extremal-cache"
CONFIG_KEYS = {"format": str, "workers": int, "cache_dir": str, "max_n": int, "no_cache": bool}
GLOBAL_DEFAULTS = {"format": "human", "workers": 1, "cache_dir": DEFAULT_CACHE, "max_n": None, "no_cache": False}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _globals(p: argparse.ArgumentParser) -> None:
    # defaults are None so config values can fill what the flags left unset
    p.add_argument("--format", choices=("human", "json", "csv"), default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--cache-dir", dest="cache_dir", default=None)
    p.add_argument("--no-cache", dest="no_cache", action="store_const", const=True, default=None)
    p.add_argument("--max-n", dest="max_n", type=int, default=None, help="replace the enumeration size caps")
    p.add_argument("--config", default=None, help="key=value file; flags win on conflict")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extremal-regular", description="Exact extremal counting on regular graphs.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    c = sub.add_parser("count", help="hom(G, H) as an exact decimal")
    c.add_argument("graphs", nargs="*", help="G H, or just H together with --file")
    c.add_argument("--file", help="graph6 or .lg file supplying G")
    c.add_argument("--target-file", help=".lg file supplying H")

    p = sub.add_parser("poly", help="independence, matching or Potts polynomial")
    p.add_argument("graph", nargs="?")
    p.add_argument("--file")
    p.add_argument("--kind", choices=("ind", "match", "potts"), default="ind")
    p.add_argument("--q", type=int, help="colours for --kind potts")

    o = sub.add_parser("occupancy", help="hard-core occupancy fraction")
    o.add_argument("graph", nargs="?")
    o.add_argument("--file")
    o.add_argument("--lambda", dest="lam", default="1")

    v = sub.add_parser("verify", help="check a catalogued bound")
    v.add_argument("--bound", required=True, choices=sorted(BOUNDS))
    v.add_argument("--family")
    v.add_argument("--graph")
    v.add_argument("--file")
    v.add_argument("--H", dest="H")
    v.add_argument("--A", dest="A")
    v.add_argument("--B", dest="B")
    v.add_argument("--lambda", dest="lam")
    v.add_argument("--q", type=int)
    v.add_argument("--t", type=int)
    v.add_argument("--delta", type=int)

    e = sub.add_parser("enumerate", help="list a graph family as graph6")
    e.add_argument("--family", required=True)
    e.add_argument("--out")

    s = sub.add_parser("scan", help="scan a family for conjecture violations")
    s.add_argument("--conjecture", required=True, choices=sorted(CONJECTURES))
    s.add_argument("--family", required=True)
    s.add_argument("--q", type=int)
    s.add_argument("--H", dest="H")
    s.add_argument("--x-grid", dest="x_grid")
    s.add_argument("--values", action="store_true", help="record the full value table")

    r = sub.add_parser("profile", help="rank hom(G,H)^(1/v(G)) over a regular family")
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--target", required=True)
    r.add_argument("--target-file")
    r.add_argument("--family")
    r.add_argument("--k-grid", dest="k_grid")

    for sp in (c, p, o, v, e, s, r):
        _globals(sp)
    return parser


def read_config(path: str) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, val = line.partition("=")
        key = key.strip().replace("-", "_")
        if not eq or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        val = val.strip()
        if CONFIG_KEYS[key] is bool:
            out[key] = val.lower() in ("1", "true", "yes", "on")
        else:
            try:
                out[key] = CONFIG_KEYS[key](val)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def _settle(args) -> None:
    conf = read_config(args.config) if args.config else {}
    for key, default in GLOBAL_DEFAULTS.items():
        if getattr(args, key) is None:
            setattr(args, key, conf.get(key, default))
    if args.format not in ("human", "json", "csv"):
        raise UsageError(f"unknown format {args.format!r}")
    if args.workers < 1:
        raise UsageError("--workers must be positive")


def _cache(args):
    return None if args.no_cache else args.cache_dir


def load_graphs(source: str) -> list[tuple[str, LoopGraph]]:
    """Graphs from a graph6 file, an ``.lg`` file, or a named spec."""
    path = Path(source)
    if path.suffix == ".lg":
        return [(source, read_lg(path))]
    if path.suffix in (".g6", ".graph6") or path.is_file():
        return [(f"{source}:{i + 1}", g) for i, g in enumerate(read_graph6(path))]
    return [(source, parse_named(source))]


def _single(source: str) -> LoopGraph:
    graphs = load_graphs(source)
    if len(graphs) != 1:
        raise UsageError(f"{source} must hold exactly one graph, found {len(graphs)}")
    return graphs[0][1]


def _graph_sources(args) -> list[tuple[str, LoopGraph]]:
    if args.file and args.graph:
        raise UsageError("give a graph or --file, not both")
    if args.file:
        return load_graphs(args.file)
    if args.graph:
        return load_graphs(args.graph)
    raise UsageError("a graph is required")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_count(args) -> int:
    pos = list(args.graphs)
    if args.target_file:
        target = ("H", read_lg(args.target_file))
    else:
        if not pos:
            raise UsageError("count needs a target H")
        name = pos.pop()
        target = (name, _single(name))
    if args.file:
        if pos:
            raise UsageError("give G either positionally or with --file")
        sources = load_graphs(args.file)
    else:
        if len(pos) != 1:
            raise UsageError("count needs exactly one G")
        sources = load_graphs(pos[0])
    rows = [(label, hom_count(g, target[1])) for label, g in sources]
    if args.format == "json":
        _emit(reports.dumps([{"graph": label, "target": target[0], "count": str(c)} for label, c in rows]))
    elif args.format == "csv":
        _emit(reports._csv(("graph", "target", "count"), ((label, target[0], str(c)) for label, c in rows)))
    elif len(rows) == 1:
        _emit(str(rows[0][1]))
    else:
        _emit("\n".join(f"{label}\t{c}" for label, c in rows))
    return 0


def cmd_poly(args) -> int:
    out = []
    for label, g in _graph_sources(args):
        if args.kind == "ind":
            poly = independence_polynomial(g)
        elif args.kind == "match":
            poly = matching_polynomial(g)
        else:
            if args.q is None:
                raise UsageError("--kind potts needs --q")
            poly = potts_polynomial(g, args.q)
        out.append((label, poly))
    if args.format == "json":
        _emit(reports.dumps([{"graph": label, "kind": args.kind, "coefficients": [str(c) for c in p.coeffs]} for label, p in out]))
    elif args.format == "csv":
        _emit(reports._csv(("graph", "power", "coefficient"), ((label, k, str(c)) for label, p in out for k, c in enumerate(p.coeffs))))
    else:
        _emit("\n".join((f"{label}\t" if len(out) > 1 else "") + " ".join(map(str, p.coeffs)) for label, p in out))
    return 0


def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad {what} {text!r}") from None


def cmd_occupancy(args) -> int:
    lam = _fraction(args.lam, "fugacity")
    out = [(label, occupancy_fraction(g, lam)) for label, g in _graph_sources(args)]
    if args.format == "json":
        _emit(reports.dumps([{"graph": label, "lambda": format_number(lam), "occupancy": format_number(a)} for label, a in out]))
    elif args.format == "csv":
        _emit(reports._csv(("graph", "lambda", "occupancy"), ((label, format_number(lam), format_number(a)) for label, a in out)))
    else:
        _emit("\n".join(f"{format_number(a)}  ({reports.approx_root(a, 1)} approx)" for _, a in out))
    return 0


def _bound_params(args) -> dict:
    params = {}
    if args.H:
        params["H"] = _single(args.H)
    for key in ("A", "B"):
        val = getattr(args, key)
        if val:
            g = _single(val)
            if args.bound == "bigraph_target_max":
                if g.has_loops:
                    raise UsageError(f"--{key} must be a bipartite graph")
                g = Bigraph.from_graph(g.as_simple())
            params[key] = g
    if args.lam is not None:
        params["lam"] = _fraction(args.lam, "fugacity")
    for key in ("q", "t", "delta"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    return params


def _family(text: str) -> FamilySpec:
    return FamilySpec.parse(text)


def cmd_verify(args) -> int:
    chosen = [x for x in (args.family, args.graph, args.file) if x]
    if len(chosen) != 1:
        raise UsageError("verify needs exactly one of --family, --graph, --file")
    params = _bound_params(args)
    if args.family:
        graphs = family_graphs(_family(args.family), _cache(args), args.max_n)
        skip = True
    else:
        graphs = [g for _, g in load_graphs(args.graph or args.file)]
        skip = False
    results = check_many(graphs, args.bound, args.workers, skip_outside=skip, **params)
    done = [r for r in results if r is not None]
    skipped = [canonical_form(g).decode() for g, r in zip(graphs, results) if r is None]
    violated = sum(r.verdict == "violated" for r in done)
    if args.format == "json":
        _emit(
            reports.dumps(
                {
                    "bound_id": args.bound,
                    "checked": len(done),
                    "skipped": skipped,
                    "violations": violated,
                    "reports": [r.to_dict() for r in done],
                }
            )
        )
    elif args.format == "csv":
        _emit(reports.bound_reports_csv(done))
    else:
        for r in done:
            _emit(
                f"{r.verdict:9} {r.graph}  lhs {format_number(r.lhs[0])}^(1/{r.lhs[1]}) "
                f"{r.sense} rhs {format_number(r.rhs[0])}^(1/{r.rhs[1]})  "
                f"[{reports.approx_root(*r.lhs)} vs {reports.approx_root(*r.rhs)}, approx]"
            )
        _emit(f"{args.bound}: checked {len(done)}, skipped {len(skipped)}, violated {violated}")
    return 1 if violated else 0


def cmd_enumerate(args) -> int:
    graphs = family_graphs(_family(args.family), _cache(args), args.max_n)
    if args.out:
        write_graph6(args.out, graphs)
    lines = [to_graph6(g) for g in graphs]
    if args.format == "json":
        _emit(reports.dumps({"family": args.family, "count": len(lines), "graph6": lines}))
    elif args.format == "csv":
        _emit(reports._csv(("graph6", "n", "m"), ((s, g.n, g.m) for s, g in zip(lines, graphs))))
    elif args.out:
        _emit(f"wrote {len(lines)} graphs to {args.out}")
    else:
        _emit("\n".join(lines) if lines else "")
    return 0


def cmd_scan(args) -> int:
    params = {}
    if args.q is not None:
        params["q"] = args.q
    if args.H:
        params["H"] = _single(args.H)
    if args.x_grid:
        params["x_grid"] = [_fraction(x, "grid point") for x in args.x_grid.split(",")]
    report = scan_conjecture(
        args.conjecture,
        _family(args.family),
        params,
        workers=args.workers,
        cache_dir=_cache(args),
        max_n=args.max_n,
        keep_values=args.values,
    )
    if args.format == "json":
        _emit(reports.scan_json(report))
    elif args.format == "csv":
        _emit(reports.scan_csv(report))
    else:
        _emit(
            f"{report.conjecture_id}: checked {report.graphs_checked}, skipped {report.graphs_skipped}, "
            f"violations {len(report.violations)}"
        )
        for v in report.violations:
            c = v.comparison
            _emit(f"violation {v.graph} {c.label} lhs {format_number(c.lhs[0])}^(1/{c.lhs[1]}) rhs {format_number(c.rhs[0])}^(1/{c.rhs[1]})")
        for w in report.witnesses:
            _emit(f"{w.kind} {w.label} {w.graph} n={w.n} {reports.approx_root(w.base, w.root)} (approx)")
        for note in report.notes:
            _emit(f"note: {note}")
    return 1 if report.violations else 0


def cmd_profile(args) -> int:
    h = read_lg(args.target_file) if args.target_file else _single(args.target)
    family = _family(args.family) if args.family else FamilySpec(args.d + 1, 2 * args.d, args.d)
    k_grid = None
    if args.k_grid:
        try:
            k_grid = [int(k) for k in args.k_grid.split(",")]
        except ValueError:
            raise UsageError(f"bad --k-grid {args.k_grid!r}") from None
    prof = maximizer_profile(args.d, family, h, k_grid, workers=args.workers, cache_dir=_cache(args), max_n=args.max_n)
    if args.format == "json":
        _emit(reports.profile_json(prof))
    elif args.format == "csv":
        _emit(reports.profile_csv(prof))
    else:
        for e in prof.entries:
            which = "K_{d,d}" if e.is_kdd else "K_{d+1}" if e.is_kd1 else "neither"
            tag = "" if e.k is None else f"k={e.k} "
            _emit(
                f"{tag}argmax {e.argmax} (n={e.argmax_n}, {which}) value {format_number(e.value[0])}^(1/{e.value[1]}) "
                f"{reports.approx_root(*e.value)} approx; vs K_dd {e.beats_kdd:+d}, vs K_d+1 {e.beats_kd1:+d}"
            )
    return 0


COMMANDS = {
    "count": cmd_count,
    "poly": cmd_poly,
    "occupancy": cmd_occupancy,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "scan": cmd_scan,
    "profile": cmd_profile,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required: " + ", ".join(COMMANDS))
        _settle(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except HypothesisError as exc:
        print(f"hypothesis error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
