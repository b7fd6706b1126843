"""Combinatorial triangulations stored as rotation systems.

A triangulation on ``n`` vertices is a list ``rot`` where ``rot[v]`` is the
cyclic order of the neighbours of ``v``.  The order is called clockwise
throughout the package; the only thing that matters is that all rotations
use the same orientation, so that tracing faces yields triangles.

Face tracing rule: the dart ``(u, v)`` is followed by ``(v, w)`` where ``w``
is the successor of ``u`` in ``rot[v]``.  Consequently, for an edge ``xy``
the two faces containing it are ``x y pred_x(y)`` and ``x y succ_x(y)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

Edge = tuple[int, int]


class TriangulationError(ValueError):
    """Raised when rotation data does not describe a triangulation."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotSimple(TriangulationError):
    pass


class WrongEdgeCount(TriangulationError):
    pass


class NonTriangularFace(TriangulationError):
    pass


class Disconnected(TriangulationError):
    pass


class NotFlippable(ValueError):
    pass


class EdgeNotFound(ValueError):
    pass


class ReplayError(ValueError):
    """A flip sequence does not apply to the given triangulation."""


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class FlipRecord:
    removed: Edge
    added: Edge

    def reversed(self) -> "FlipRecord":
        return FlipRecord(self.added, self.removed)

    def relabeled(self, mapping: Mapping[int, int] | Sequence[int]) -> "FlipRecord":
        (x, y), (a, b) = self.removed, self.added
        return FlipRecord(edge_key(mapping[x], mapping[y]), edge_key(mapping[a], mapping[b]))

    def __str__(self) -> str:
        return f"remove {self.removed[0]} {self.removed[1]}, add {self.added[0]} {self.added[1]}"


@dataclass
class FlipSequence:
    """An ordered list of flips, optionally with a relabeling certificate.

    ``relabeling`` (when present) maps every vertex of the triangulation
    reached after replaying the sequence onto the labels of the intended
    target, i.e. ``apply(source).relabel(relabeling)`` has the same edge set
    as the target.
    """

    records: list[FlipRecord] = field(default_factory=list)
    relabeling: dict[int, int] | None = None

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[FlipRecord]:
        return iter(self.records)

    def __getitem__(self, i):
        return self.records[i]

    def append(self, record: FlipRecord) -> None:
        self.records.append(record)

    def extend(self, records: Iterable[FlipRecord]) -> None:
        self.records.extend(records)

    def reversed(self) -> "FlipSequence":
        return FlipSequence([r.reversed() for r in reversed(self.records)])

    def relabeled(self, mapping) -> "FlipSequence":
        return FlipSequence([r.relabeled(mapping) for r in self.records])

    def apply(self, tri: "Triangulation", *, validate_each: bool = False) -> "Triangulation":
        """Replay on a copy of ``tri`` and return the result.

        Raises ReplayError if some flip is illegal or creates a different
        edge than recorded.
        """
        out = tri.copy()
        for i, rec in enumerate(self.records):
            try:
                got = out.flip(*rec.removed)
            except (NotFlippable, EdgeNotFound) as exc:
                raise ReplayError(f"step {i}: {exc}") from exc
            if got.added != rec.added:
                raise ReplayError(f"step {i}: flip of {rec.removed} created {got.added}, expected {rec.added}")
            if validate_each:
                validate(out.rot)
        return out


class Triangulation:
    """Mutable rotation system of a simple maximal planar graph.

    Use :func:`validate` (or :meth:`from_rotation`) to build one from
    untrusted data; the constructor trusts its input.
    """

    __slots__ = ("rot", "adj")

    def __init__(self, rot: Sequence[Sequence[int]]):
        self.rot: list[list[int]] = [list(r) for r in rot]
        self.adj: list[set[int]] = [set(r) for r in self.rot]

    @classmethod
    def from_rotation(cls, rot) -> "Triangulation":
        return validate(rot)

    @property
    def n(self) -> int:
        return len(self.rot)

    def copy(self) -> "Triangulation":
        new = Triangulation.__new__(Triangulation)
        new.rot = [r[:] for r in self.rot]
        new.adj = [s.copy() for s in self.adj]
        return new

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.rot]

    def degree_profile(self) -> list[int]:
        return sorted(len(r) for r in self.rot)

    def max_degree(self) -> int:
        return max(len(r) for r in self.rot)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self.rot[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def edge_set(self) -> set[Edge]:
        return {(u, v) for u in range(self.n) for v in self.adj[u] if u < v}

    def num_edges(self) -> int:
        return sum(len(r) for r in self.rot) // 2

    def succ(self, v: int, u: int) -> int:
        r = self.rot[v]
        i = r.index(u) + 1
        return r[i] if i < len(r) else r[0]

    def pred(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[r.index(u) - 1]

    def apexes(self, x: int, y: int) -> tuple[int, int]:
        """Third vertices of the two faces on edge ``xy``: (pred_x(y), succ_x(y))."""
        r = self.rot[x]
        i = r.index(y)
        return r[i - 1], r[(i + 1) % len(r)]

    def is_face(self, u: int, v: int, w: int) -> bool:
        if v not in self.adj[u] or w not in self.adj[u] or w not in self.adj[v]:
            return False
        return w in self.apexes(u, v)

    def faces(self) -> list[tuple[int, int, int]]:
        """Oriented faces, each listed once starting at its smallest vertex."""
        out = []
        for u, r in enumerate(self.rot):
            k = len(r)
            for i in range(k):
                v, w = r[i], r[(i + 1) % k]
                # face (v, u, w) under the tracing rule; report once from min vertex
                if u < v and u < w:
                    out.append((u, w, v))
        out.sort()
        return out

    def is_flippable(self, x: int, y: int) -> bool:
        if y not in self.adj[x]:
            raise EdgeNotFound(f"{x}-{y} is not an edge")
        a, b = self.apexes(x, y)
        return a != b and b not in self.adj[a]

    def flip(self, x: int, y: int) -> FlipRecord:
        """Flip edge ``xy`` in place; return the record (removed, added)."""
        if y not in self.adj[x]:
            raise EdgeNotFound(f"{x}-{y} is not an edge")
        rx = self.rot[x]
        i = rx.index(y)
        a, b = rx[i - 1], rx[(i + 1) % len(rx)]
        if a == b or b in self.adj[a]:
            raise NotFlippable(f"edge {x}-{y}: {a}-{b} already present")
        del rx[i]
        ry = self.rot[y]
        del ry[ry.index(x)]
        self.adj[x].discard(y)
        self.adj[y].discard(x)
        # x, y are consecutive in rot[a] and rot[b]; b (resp. a) goes between them
        self._insert_between(a, x, y, b)
        self._insert_between(b, x, y, a)
        self.adj[a].add(b)
        self.adj[b].add(a)
        return FlipRecord(edge_key(x, y), edge_key(a, b))

    def _insert_between(self, v: int, p: int, q: int, new: int) -> None:
        r = self.rot[v]
        i, j = r.index(p), r.index(q)
        k = len(r)
        if (i + 1) % k == j:
            r.insert(i + 1, new)
        elif (j + 1) % k == i:
            r.insert(j + 1, new)
        else:  # pragma: no cover - impossible for a valid triangulation
            raise AssertionError(f"{p},{q} not consecutive around {v}")

    def mirror(self) -> "Triangulation":
        return Triangulation([r[::-1] for r in self.rot])

    def relabel(self, mapping: Mapping[int, int] | Sequence[int]) -> "Triangulation":
        """Return the triangulation with vertex ``v`` renamed ``mapping[v]``."""
        rot: list[list[int]] = [[] for _ in range(self.n)]
        for v, r in enumerate(self.rot):
            rot[mapping[v]] = [mapping[w] for w in r]
        return Triangulation(rot)

    def rotation_key(self) -> tuple[tuple[int, ...], ...]:
        """Rotations normalised to start at the smallest neighbour."""
        out = []
        for r in self.rot:
            i = r.index(min(r))
            out.append(tuple(r[i:] + r[:i]))
        return tuple(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.rotation_key() == other.rotation_key()

    __hash__ = None  # mutable

    def __repr__(self) -> str:
        return f"Triangulation(n={self.n}, rot={self.rot!r})"


def validate(raw) -> Triangulation:
    """Check raw rotation data and return a :class:`Triangulation`.

    ``raw`` is a sequence of neighbour lists indexed by vertex, or a mapping
    ``{v: [neighbours]}`` with keys ``0..n-1``.
    """
    if isinstance(raw, Triangulation):
        raw = raw.rot
    if isinstance(raw, Mapping):
        n = len(raw)
        if set(raw) != set(range(n)):
            raise NotSimple("vertex ids must be 0..n-1", sorted(raw))
        rot = [list(raw[v]) for v in range(n)]
    else:
        rot = [list(r) for r in raw]
        n = len(rot)
    if n < 4:
        raise WrongEdgeCount(f"a triangulation needs at least 4 vertices, got {n}", n)
    adj = []
    for v, r in enumerate(rot):
        s = set(r)
        if len(s) != len(r):
            raise NotSimple(f"vertex {v} lists a neighbour twice", v)
        if v in s:
            raise NotSimple(f"self-loop at {v}", v)
        for w in r:
            if not (isinstance(w, int) and 0 <= w < n):
                raise NotSimple(f"neighbour {w!r} of {v} out of range", (v, w))
        adj.append(s)
    for v in range(n):
        for w in adj[v]:
            if v not in adj[w]:
                raise NotSimple(f"edge {v}-{w} not symmetric", (v, w))
    m = sum(len(r) for r in rot) // 2
    if m != 3 * n - 6:
        raise WrongEdgeCount(f"{m} edges, expected {3 * n - 6}", m)
    seen = [0] * n
    seen[0] = 1
    stack = [0]
    while stack:
        v = stack.pop()
        for w in rot[v]:
            if not seen[w]:
                seen[w] = 1
                stack.append(w)
    if not all(seen):
        raise Disconnected("graph is disconnected", seen.index(0))
    low = [v for v in range(n) if len(rot[v]) < 3]
    if low:
        raise NotSimple(f"vertex {low[0]} has degree < 3", low[0])
    pos = [{w: i for i, w in enumerate(r)} for r in rot]
    visited: set[tuple[int, int]] = set()
    faces = 0
    for u in range(n):
        for v in rot[u]:
            if (u, v) in visited:
                continue
            face = []
            a, b = u, v
            while (a, b) not in visited:
                visited.add((a, b))
                face.append(a)
                r = rot[b]
                c = r[(pos[b][a] + 1) % len(r)]
                a, b = b, c
                if len(face) > 3:
                    break
            if len(face) != 3 or (a, b) != (u, v):
                raise NonTriangularFace(f"face through dart {u}->{v} is not a triangle", tuple(face))
            faces += 1
    if faces != 2 * n - 4:
        raise NonTriangularFace(f"{faces} faces, expected {2 * n - 4}", faces)
    return Triangulation(rot)


def from_faces(n: int, faces: Iterable[Sequence[int]]) -> Triangulation:
    """Build a rotation system from consistently oriented triangular faces."""
    succ: list[dict[int, int]] = [{} for _ in range(n)]
    for x, y, z in faces:
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            # face (p, q, r): successor of p around q is r
            if p in succ[q]:
                raise NonTriangularFace(f"dart {p}->{q} used twice", (p, q, r))
            succ[q][p] = r
    rot = []
    for v in range(n):
        s = succ[v]
        if not s:
            raise Disconnected(f"vertex {v} lies on no face", v)
        start = min(s)
        r = [start]
        w = s[start]
        while w != start:
            r.append(w)
            w = s[w]
            if len(r) > len(s):
                raise NonTriangularFace(f"rotation at {v} is not a single cycle", v)
        if len(r) != len(s):
            raise NonTriangularFace(f"rotation at {v} is not a single cycle", v)
        rot.append(r)
    return validate(rot)


def canonical_triangulation(n: int) -> Triangulation:
    """The triangulation with dominant vertices 0 and 1 and path 2..n-1."""
    if n < 4:
        raise ValueError("n must be at least 4")
    faces = [(0, 1, 2), (0, n - 1, 1)]
    for i in range(2, n - 1):
        faces.append((0, i, i + 1))
        faces.append((1, i + 1, i))
    return from_faces(n, faces)


def octahedron() -> Triangulation:
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
             (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4)]
    return from_faces(6, faces)


def icosahedron() -> Triangulation:
    # apex 0, upper ring 1..5, lower ring 6..10, apex 11
    faces = []
    for i in range(5):
        u, u2 = 1 + i, 1 + (i + 1) % 5
        l, l2 = 6 + i, 6 + (i + 1) % 5
        faces.append((0, u, u2))
        faces.append((u, l, u2))
        faces.append((u2, l, l2))
        faces.append((11, l2, l))
    return from_faces(12, faces)


def stack_vertex(tri: Triangulation, face: Sequence[int]) -> Triangulation:
    """Insert a new vertex ``n`` into ``face`` and join it to the corners."""
    x, y, z = face
    if not tri.is_face(x, y, z):
        raise ValueError(f"{tuple(face)} is not a face")
    n = tri.n
    oriented = []
    for f in tri.faces():
        if set(f) == {x, y, z}:
            a, b, c = f
            oriented += [(a, b, n), (b, c, n), (c, a, n)]
        else:
            oriented.append(f)
    return from_faces(n + 1, oriented)


def is_canonical(tri: Triangulation) -> bool:
    """True iff the triangulation has two dominant vertices."""
    n = tri.n
    return sum(1 for r in tri.rot if len(r) == n - 1) >= 2


def count_flippable_edges(tri: Triangulation) -> int:
    return sum(1 for u, v in tri.edges() if tri.is_flippable(u, v))


def flippable_edges(tri: Triangulation) -> list[Edge]:
    return [(u, v) for u, v in tri.edges() if tri.is_flippable(u, v)]


def flip(tri: Triangulation, x: int, y: int) -> tuple[Triangulation, FlipRecord]:
    """Functional flip: return a flipped copy and the record."""
    out = tri.copy()
    rec = out.flip(x, y)
    return out, rec


def random_walk(n: int, steps: int | None = None, seed: int | None = 0,
                start: Triangulation | None = None) -> Triangulation:
    """Apply ``steps`` uniformly random legal flips starting from ``start``
    (default: the canonical triangulation).  Uniform over flippable edges at
    each step, not uniform over triangulations.
    """
    rng = random.Random(seed)
    tri = (start or canonical_triangulation(n)).copy()
    if steps is None:
        steps = 10 * tri.n
    edges = tri.edges()
    if tri.n == 4:
        return tri
    done = 0
    while done < steps:
        k = rng.randrange(len(edges))
        x, y = edges[k]
        if tri.is_flippable(x, y):
            rec = tri.flip(x, y)
            edges[k] = rec.added
            done += 1
    return tri


# --------------------------------------------------------------------------
# separating triangles

@dataclass(frozen=True)
class SeparatingTriangle:
    vertices: tuple[int, int, int]
    interior: frozenset[int]
    depth: int = 0

    @property
    def interior_size(self) -> int:
        return len(self.interior)

    @property
    def edges(self) -> tuple[Edge, Edge, Edge]:
        x, y, z = self.vertices
        return ((x, y), (x, z), (y, z))

    def contains(self, other: "SeparatingTriangle") -> bool:
        """Proper containment; shared corners are allowed."""
        if other.vertices == self.vertices:
            return False
        region = self.interior
        vs = self.vertices
        return all(v in region or v in vs for v in other.vertices)


def default_outer_face(tri: Triangulation) -> tuple[int, int, int]:
    """Lexicographically smallest face, as a sorted triple."""
    best = None
    for u in range(tri.n):
        r = tri.rot[u]
        k = len(r)
        for i in range(k):
            v, w = r[i], r[(i + 1) % k]
            f = tuple(sorted((u, v, w)))
            if best is None or f < best:
                best = f
    return best


def triangles(tri: Triangulation) -> list[tuple[int, int, int]]:
    """All 3-cycles as sorted triples."""
    out = []
    adj = tri.adj
    for u in range(tri.n):
        for v in adj[u]:
            if v <= u:
                continue
            for w in adj[u] & adj[v]:
                if w > v:
                    out.append((u, v, w))
    out.sort()
    return out


def separating_triples(tri: Triangulation) -> list[tuple[int, int, int]]:
    """3-cycles that are not faces, as sorted triples."""
    out = []
    for u, v, w in triangles(tri):
        if w not in tri.apexes(u, v):
            out.append((u, v, w))
    return out


def _side(tri: Triangulation, tri_vs, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    adj = tri.adj
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen and w not in tri_vs:
                seen.add(w)
                stack.append(w)
    return seen


def separating_triangles(tri: Triangulation, outer=None) -> list[SeparatingTriangle]:
    """All separating triangles with their interior and containment depth.

    The interior of a triangle is the side not containing the ``outer``
    face (default: :func:`default_outer_face`).
    """
    triples = separating_triples(tri)
    if not triples:
        return []
    if outer is None:
        outer = default_outer_face(tri)
    outer = tuple(outer)
    n = tri.n
    bare = []
    for t in triples:
        ref = next(v for v in outer if v not in t)
        out_side = _side(tri, t, ref)
        interior = frozenset(v for v in range(n) if v not in out_side and v not in t)
        bare.append(SeparatingTriangle(t, interior))
    result = []
    for d in bare:
        depth = sum(1 for a in bare if a.contains(d))
        result.append(SeparatingTriangle(d.vertices, d.interior, depth))
    return result


def is_four_connected(tri: Triangulation) -> bool:
    """No separating triangle (K4 counts as 4-connected for flip purposes)."""
    return not separating_triples(tri)


# --------------------------------------------------------------------------
# canonical codes

def _dart_code(rot, u, v, forward, best, n):
    """BFS encoding from dart (u, v); None if it exceeds ``best``."""
    number = [0] * n
    ref = [0] * n
    number[u] = 1
    ref[u] = v
    order = [u]
    code = [n, len(rot[u]), len(rot[v])]
    nxt = 2
    less = best is None
    pos = 3
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        r = rot[x]
        k = len(r)
        i = r.index(ref[x])
        step = 1 if forward else -1
        for _ in range(k):
            y = r[i]
            i = (i + step) % k
            ny = number[y]
            if not ny:
                ny = number[y] = nxt
                nxt += 1
                ref[y] = x
                order.append(y)
            if not less:
                b = best[pos]
                if ny > b:
                    return None
                if ny < b:
                    less = True
            code.append(ny)
            pos += 1
        if not less:
            if best[pos] != 0:
                # 0 < anything nonzero
                less = True
        code.append(0)
        pos += 1
    if not less:
        return None  # equal to best
    return code, number


def canonical_form(tri: Triangulation) -> tuple[tuple[int, ...], list[int]]:
    """Return (code, numbering) where numbering[v] is the 1-based canonical
    label of ``v``.  The code is the lexicographic minimum over all darts
    and both orientations; only darts with the minimum (deg u, deg v) pair
    can attain it because the code starts with that pair.
    """
    rot = tri.rot
    n = len(rot)
    deg = [len(r) for r in rot]
    key = min((deg[u], deg[v]) for u in range(n) for v in rot[u])
    best = None
    best_num = None
    for u in range(n):
        if deg[u] != key[0]:
            continue
        for v in rot[u]:
            if deg[v] != key[1]:
                continue
            for forward in (True, False):
                res = _dart_code(rot, u, v, forward, best, n)
                if res is not None:
                    best, best_num = res
    return tuple(best), best_num


def encode_code(values: Sequence[int]) -> bytes:
    n = values[0]
    if n < 256:
        return bytes(values)
    out = bytearray([0])
    for x in values:
        out += x.to_bytes(2, "big")
    return bytes(out)


def decode_code(code: bytes) -> list[int]:
    if code and code[0] == 0:
        body = code[1:]
        return [int.from_bytes(body[i:i + 2], "big") for i in range(0, len(body), 2)]
    return list(code)


def canonical_code(tri: Triangulation) -> bytes:
    return encode_code(canonical_form(tri)[0])


def from_canonical_code(code: bytes) -> Triangulation:
    """Rebuild a representative triangulation (vertices in canonical order)."""
    vals = decode_code(code)
    n = vals[0]
    rot: list[list[int]] = []
    cur: list[int] = []
    for x in vals[3:]:
        if x == 0:
            rot.append(cur)
            cur = []
        else:
            cur.append(x - 1)
    if len(rot) != n or cur:
        raise ValueError("malformed canonical code")
    return validate(rot)


def isomorphism(t1: Triangulation, t2: Triangulation) -> dict[int, int] | None:
    """A vertex bijection t1 -> t2 preserving faces (reflections allowed)."""
    if t1.n != t2.n:
        return None
    c1, num1 = canonical_form(t1)
    c2, num2 = canonical_form(t2)
    if c1 != c2:
        return None
    inv2 = [0] * (t2.n + 1)
    for v, k in enumerate(num2):
        inv2[k] = v
    return {v: inv2[num1[v]] for v in range(t1.n)}


def is_isomorphic(t1: Triangulation, t2: Triangulation) -> bool:
    return t1.n == t2.n and canonical_code(t1) == canonical_code(t2)
