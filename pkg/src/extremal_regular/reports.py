"""JSON and CSV emission for bound reports, scans and profiles.

Integers are written as decimal strings and rationals as ``"num/den"``, so
JSON output never loses precision.  Key order is fixed, which makes output
byte-identical across runs.
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .counting import CountPolynomial
from .extremal import BoundReport, format_number
from .hunt import Profile, ScanReport


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def approx_root(base, root: int, digits: int = 6) -> str:
    """Rounded ``base^(1/root)``, prefixed with ``~`` to mark it approximate."""
    base = Fraction(base)
    if base == 0:
        return "~0"
    logv = (math.log(base.numerator) - math.log(base.denominator)) / root
    return f"~{math.exp(logv):.{digits}g}"


def bound_reports_json(reports: Sequence[BoundReport]) -> str:
    return dumps([r.to_dict() for r in reports])


def bound_reports_from_json(text: str) -> list[BoundReport]:
    return [BoundReport.from_dict(d) for d in json.loads(text)]


def scan_json(report: ScanReport) -> str:
    return dumps(report.to_dict())


def scan_from_json(text: str) -> ScanReport:
    return ScanReport.from_dict(json.loads(text))


def profile_json(profile: Profile) -> str:
    return dumps(profile.to_dict())


def profile_from_json(text: str) -> Profile:
    return Profile.from_dict(json.loads(text))


def polynomial_json(poly: CountPolynomial) -> str:
    return poly.to_json() + "\n"


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


BOUND_COLUMNS = ("graph", "bound_id", "lhs_base", "lhs_root", "rhs_base", "rhs_root", "sense", "verdict")


def bound_reports_csv(reports: Sequence[BoundReport]) -> str:
    return _csv(
        BOUND_COLUMNS,
        (
            (r.graph, r.bound_id, format_number(r.lhs[0]), r.lhs[1], format_number(r.rhs[0]), r.rhs[1], r.sense, r.verdict)
            for r in reports
        ),
    )


VALUE_COLUMNS = ("graph", "n", "label", "base", "root", "verdict")


def values_csv(rows) -> str:
    return _csv(VALUE_COLUMNS, ((r.graph, r.n, r.label, format_number(r.base), r.root, r.verdict) for r in rows))


def scan_csv(report: ScanReport) -> str:
    """Value table when recorded, else one row per violation."""
    if report.values:
        return values_csv(report.values)
    return _csv(
        ("graph", "label", "lhs_base", "lhs_root", "rhs_base", "rhs_root", "sense", "verdict"),
        (
            (
                v.graph,
                v.comparison.label,
                format_number(v.comparison.lhs[0]),
                v.comparison.lhs[1],
                format_number(v.comparison.rhs[0]),
                v.comparison.rhs[1],
                v.comparison.sense,
                v.comparison.verdict,
            )
            for v in report.violations
        ),
    )


def profile_csv(profile: Profile) -> str:
    return values_csv(profile.values)
