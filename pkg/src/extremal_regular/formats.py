"""graph6 and ``.lg`` readers/writers."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .graphcore import Graph, GraphError, LoopGraph

HEADER = ">>graph6<<"


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _encode_n(n: int) -> str:
    if n < 0:
        raise GraphError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("order too large for graph6")


def to_graph6(g: LoopGraph, header: bool = False) -> str:
    if g.has_loops:
        raise GraphError("graph6 cannot encode loops")
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append((g.rows[i] >> j) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + sum(b << (5 - k) for k, b in enumerate(bits[p : p + 6]))) for p in range(0, len(bits), 6)
    )
    return (HEADER if header else "") + _encode_n(g.n) + body


def from_graph6(text: str, line: int | None = None) -> Graph:
    s = text.strip()
    offset = 0
    if s.startswith(HEADER):
        s = s[len(HEADER) :]
        offset = len(HEADER)
    if not s:
        raise ParseError("empty graph6 string", line, 1)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 character {ch!r}", line, offset + k + 1)
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise ParseError("truncated order field", line, offset + 1)
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise ParseError("truncated order field", line, offset + 1)
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    have = len(vals) - pos
    if have != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {have}", line, offset + pos + 1)
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if (byte >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbits % 6 and vals[-1] & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("nonzero padding bits", line, offset + len(vals))
    return Graph(n, tuple(rows))


def read_graph6(path: str | Path) -> Iterator[Graph]:
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            if raw.strip():
                yield from_graph6(raw, line=lineno)


def write_graph6(path: str | Path, graphs: Iterable[LoopGraph], header: bool = False) -> int:
    count = 0
    with open(path, "w") as fh:
        for g in graphs:
            fh.write(to_graph6(g, header=header and count == 0) + "\n")
            count += 1
    return count


def to_lg(g: LoopGraph) -> str:
    lines = [str(g.n)]
    for v in range(g.n):
        lines.append("".join("1" if (g.rows[v] >> j) & 1 else "0" for j in range(g.n)))
    return "\n".join(lines) + "\n"


def from_lg(text: str) -> LoopGraph:
    """Parse ``.lg``: the order on line 1, then one 0/1 row per vertex."""
    lines = [ln.rstrip("\r") for ln in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty .lg input", 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"vertex count expected, got {lines[0]!r}", 1, 1) from None
    if n < 0:
        raise ParseError("negative vertex count", 1, 1)
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}", len(lines))
    rows = []
    for i, ln in enumerate(lines[1:]):
        if len(ln) != n:
            raise ParseError(f"row has length {len(ln)}, expected {n}", i + 2, 1)
        r = 0
        for j, ch in enumerate(ln):
            if ch == "1":
                r |= 1 << j
            elif ch != "0":
                raise ParseError(f"invalid character {ch!r}", i + 2, j + 1)
        rows.append(r)
    for i in range(n):
        for j in range(i + 1, n):
            if ((rows[i] >> j) & 1) != ((rows[j] >> i) & 1):
                raise ParseError(f"asymmetric entry ({i}, {j})", i + 2, j + 1)
    return LoopGraph(n, tuple(rows))


def read_lg(path: str | Path) -> LoopGraph:
    return from_lg(Path(path).read_text())


def write_lg(path: str | Path, g: LoopGraph) -> None:
    Path(path).write_text(to_lg(g))
