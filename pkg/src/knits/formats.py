"""Graph serialization: graph6 and a plain edge-list text format.

graph6 follows the format used by nauty/geng: one graph per line, optional
``>>graph6<<`` header, 6-bit chunks of the upper adjacency triangle in
column order.  Only the sizes this package supports (n <= 64) are handled,
which needs both the one-byte and the four-byte vertex-count encodings.

The edge-list format is ``n m`` on the first line followed by m lines
``u v`` with 0-based endpoints.
"""

from __future__ import annotations

import io
from typing import Iterable, Iterator, TextIO

from .graphs import MAX_VERTICES, Graph

GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    """Malformed graph input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    # 63 <= n <= 258047: '~' then 18 bits in three 6-bit chars
    return "~" + "".join(chr(63 + (n >> shift & 63)) for shift in (12, 6, 0))


def graph_to_graph6(g: Graph, header: bool = False) -> str:
    pieces = [GRAPH6_HEADER] if header else []
    pieces.append(_encode_size(g.n))
    acc = 0
    nbits = 0
    body = []
    for col in range(1, g.n):
        column = g.adj[col]
        for row in range(col):
            acc = acc << 1 | (column >> row & 1)
            nbits += 1
            if nbits == 6:
                body.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        acc <<= 6 - nbits
        body.append(chr(63 + acc))
    pieces.append("".join(body))
    return "".join(pieces)


def parse_graph6(line: str, lineno: int | None = None) -> Graph:
    text = line.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER) :]
    if not text:
        raise FormatError("empty graph6 record", lineno)
    if text[0] in ":;&":
        raise FormatError(f"unsupported format marker {text[0]!r} (only graph6 is accepted)", lineno)
    for ch in text:
        if not 63 <= ord(ch) <= 126:
            raise FormatError(f"invalid graph6 character {ch!r}", lineno)
    if text[0] == "~":
        if len(text) < 4 or text[1] == "~":
            raise FormatError("unsupported vertex count encoding", lineno)
        n = 0
        for ch in text[1:4]:
            n = n << 6 | (ord(ch) - 63)
        body = text[4:]
    else:
        n = ord(text[0]) - 63
        body = text[1:]
    if n < 1 or n > MAX_VERTICES:
        raise FormatError(f"vertex count {n} outside supported range 1..{MAX_VERTICES}", lineno)
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise FormatError(f"graph6 record has {len(body)} data characters, expected {(need + 5) // 6}", lineno)
    edges = []
    idx = 0
    for ch in body:
        val = ord(ch) - 63
        for shift in range(5, -1, -1):
            if idx >= need:
                if val >> shift & 1:
                    raise FormatError("nonzero padding bits", lineno)
                continue
            if val >> shift & 1:
                col, row = _triangle_position(idx)
                edges.append((row, col))
            idx += 1
    return Graph(n, edges)


def _triangle_position(idx: int) -> tuple[int, int]:
    """Map a flat upper-triangle index (column order) to (col, row)."""
    col = 1
    while idx >= col:
        idx -= col
        col += 1
    return col, idx


def graph_to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> Graph:
    rows = [row.strip() for row in text.splitlines()]
    rows = [(i + 1, row) for i, row in enumerate(rows) if row and not row.startswith("#")]
    if not rows:
        raise FormatError("empty edge list")
    lineno, head = rows[0]
    parts = head.split()
    if len(parts) != 2:
        raise FormatError("expected header 'n m'", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise FormatError("expected integer header 'n m'", lineno) from None
    if len(rows) - 1 != m:
        raise FormatError(f"expected {m} edge lines, found {len(rows) - 1}", lineno)
    edges = []
    for lineno, row in rows[1:]:
        parts = row.split()
        if len(parts) != 2:
            raise FormatError("expected edge 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("expected integer endpoints", lineno) from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"invalid edge ({u}, {v}) for n={n}", lineno)
        edges.append((u, v))
    return Graph(n, edges)


def iter_graph6_lines(stream: TextIO) -> Iterator[Graph]:
    for lineno, line in enumerate(stream, start=1):
        if line.strip():
            yield parse_graph6(line, lineno)


def read_graphs(stream: TextIO, fmt: str = "graph6") -> list[Graph]:
    """Read one or many graphs from a text stream.

    graph6 input holds one graph per line; edge-list input holds a single
    graph per stream.
    """
    if fmt == "graph6":
        return list(iter_graph6_lines(stream))
    if fmt == "edgelist":
        return [parse_edgelist(stream.read())]
    raise FormatError(f"unknown format {fmt!r}")


def write_graphs(graphs: Iterable[Graph], fmt: str = "graph6") -> str:
    if fmt == "graph6":
        return "".join(graph_to_graph6(g) + "\n" for g in graphs)
    if fmt == "edgelist":
        return "".join(graph_to_edgelist(g) for g in graphs)
    raise FormatError(f"unknown format {fmt!r}")


def loads_graphs(text: str, fmt: str = "graph6") -> list[Graph]:
    return read_graphs(io.StringIO(text), fmt)
