"""Serialization: planar_code, a line-oriented text format, and DOT export.

planar_code stores, per graph, one byte ``n`` followed by the neighbour list
of every vertex ``1..n`` terminated by a zero byte.  Vertex ids are 1-based
on the wire and 0-based in memory; a rotation list is written in the order
it is stored, which this package treats as clockwise.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .core import FlipSequence, Triangulation, TriangulationError, edge_key, validate

PLANAR_CODE_HEADER = b">>planar_code<<"


class FormatError(ValueError):
    """Malformed or unsupported serialized input."""


# --------------------------------------------------------------------------
# planar_code

def encode_planar_code(tri: Triangulation) -> bytes:
    """One graph in planar_code, without header."""
    n = tri.n
    if n > 255:
        raise FormatError(f"planar_code needs n <= 255, got {n}")
    out = bytearray([n])
    for v in range(n):
        out.extend(w + 1 for w in tri.rot[v])
        out.append(0)
    return bytes(out)


def write_planar_code(tris: Iterable[Triangulation], header: bool = True) -> bytes:
    body = b"".join(encode_planar_code(t) for t in tris)
    return (PLANAR_CODE_HEADER + body) if header else body


def iter_planar_code(data: bytes) -> Iterator[Triangulation]:
    """Decode every graph in a planar_code stream (header optional)."""
    pos = len(PLANAR_CODE_HEADER) if data.startswith(PLANAR_CODE_HEADER) else 0
    size = len(data)
    while pos < size:
        n = data[pos]
        pos += 1
        if n == 0:
            raise FormatError(f"zero vertex count at byte {pos - 1}")
        rot: list[list[int]] = []
        for v in range(n):
            nbrs = []
            while True:
                if pos >= size:
                    raise FormatError(f"truncated stream inside vertex {v + 1}")
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise FormatError(f"neighbour {b} of vertex {v + 1} out of range 1..{n}")
                nbrs.append(b - 1)
            rot.append(nbrs)
        try:
            yield validate(rot)
        except TriangulationError as exc:
            raise FormatError(f"not a triangulation: {exc}") from exc


def decode_planar_code(data: bytes) -> Triangulation:
    """Decode a stream holding exactly one graph."""
    graphs = list(iter_planar_code(data))
    if len(graphs) != 1:
        raise FormatError(f"expected one graph, found {len(graphs)}")
    return graphs[0]


# --------------------------------------------------------------------------
# text format

_LINE = re.compile(r"^\s*(\d+)\s*:\s*([\d\s,]*)$")


def to_text(tri: Triangulation) -> str:
    """One line ``v: w1 w2 ...`` per vertex, neighbours in rotation order."""
    return "".join(f"{v}: {' '.join(map(str, r))}\n" for v, r in enumerate(tri.rot))


def iter_text(text: str) -> Iterator[Triangulation]:
    """Parse graphs in the text format; blank lines separate graphs and
    ``#`` starts a comment.
    """
    block: dict[int, list[int]] = {}

    def finish():
        try:
            return validate(block)
        except TriangulationError as exc:
            raise FormatError(f"not a triangulation: {exc}") from exc

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if not line.strip():
            if block:
                yield finish()
                block = {}
            continue
        m = _LINE.match(line)
        if not m:
            raise FormatError(f"line {lineno}: expected 'v: neighbours'")
        v = int(m.group(1))
        if v in block:
            raise FormatError(f"line {lineno}: vertex {v} listed twice")
        block[v] = [int(x) for x in m.group(2).replace(",", " ").split()]
    if block:
        yield finish()


def from_text(text: str) -> Triangulation:
    graphs = list(iter_text(text))
    if len(graphs) != 1:
        raise FormatError(f"expected one graph, found {len(graphs)}")
    return graphs[0]


def looks_like_text(data: bytes) -> bool:
    if data.startswith(PLANAR_CODE_HEADER):
        return False
    try:
        s = data.decode("ascii")
    except UnicodeDecodeError:
        return False
    for line in s.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return bool(_LINE.match(line))
    return False


def read_triangulations(data: bytes) -> list[Triangulation]:
    """Decode either format, detected from the content."""
    if looks_like_text(data):
        return list(iter_text(data.decode("ascii")))
    return list(iter_planar_code(data))


# --------------------------------------------------------------------------
# DOT

def _dot_graph(name: str, tri: Triangulation, removed=None, added=None, indent: str = "") -> list[str]:
    lines = [f"{indent}graph {name} {{"]
    for v in range(tri.n):
        lines.append(f'{indent}  {v} [label="{v}"];')
    for u, v in tri.edges():
        attrs = ' [color=green, penwidth=2, flip="added"]' if (u, v) == added else ""
        lines.append(f"{indent}  {u} -- {v}{attrs};")
    if removed is not None:
        u, v = removed
        lines.append(f'{indent}  {u} -- {v} [color=red, style=dashed, flip="removed"];')
    lines.append(f"{indent}}}")
    return lines


def export_dot(obj, start: Triangulation | None = None) -> str:
    """DOT text for a triangulation, or for a flip sequence replayed from
    ``start`` (one graph per state; step ``i`` marks the removed edge red and
    dashed and the added edge green).
    """
    if isinstance(obj, Triangulation):
        return "\n".join(_dot_graph("T", obj)) + "\n"
    if not isinstance(obj, FlipSequence):
        raise TypeError("expected a Triangulation or a FlipSequence")
    if start is None:
        raise ValueError("a FlipSequence needs the start triangulation")
    t = start.copy()
    out = _dot_graph("step0", t)
    for i, rec in enumerate(obj, 1):
        t.flip(*rec.removed)
        out += _dot_graph(f"step{i}", t, removed=edge_key(*rec.removed), added=edge_key(*rec.added))
    return "\n".join(out) + "\n"
