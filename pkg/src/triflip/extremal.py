"""Lower-bound formulas and the triangulation families that realise them."""

from __future__ import annotations

from .core import Triangulation, canonical_triangulation, from_faces, octahedron


def komuro_canonical_lower_bound(tri: Triangulation) -> int:
    """Flips needed to reach the canonical triangulation: 2n - 2*maxdeg - 3."""
    return max(0, 2 * tri.n - 2 * tri.max_degree() - 3)


def degree_distance(t1: Triangulation, t2: Triangulation) -> int:
    """L1 distance between the sorted degree sequences."""
    if t1.n != t2.n:
        raise ValueError("vertex counts differ")
    return sum(abs(p - q) for p, q in zip(t1.degree_profile(), t2.degree_profile()))


def degree_distance_lower_bound(t1: Triangulation, t2: Triangulation) -> int:
    """ceil(D / 4): each flip changes four degrees by one."""
    return -(-degree_distance(t1, t2) // 4)


# --------------------------------------------------------------------------
# generators

class _FaceBuilder:
    def __init__(self, n0: int):
        self.n = n0
        self.faces: list[tuple[int, int, int]] = []

    def new(self) -> int:
        self.n += 1
        return self.n - 1


def _fill(fb: _FaceBuilder, p: int, q: int, r: int, level: int, out: list) -> None:
    """Triangulate the inside of oriented triangle (p, q, r)."""
    if level == 0:
        x = fb.new()
        fb.faces += [(p, q, x), (q, r, x), (r, p, x)]
        return
    s, t, u = fb.new(), fb.new(), fb.new()  # s faces p, t faces q, u faces r
    fb.faces += [(q, r, s), (r, p, t), (p, q, u), (s, t, u)]
    for corner in ((p, u, t), (q, s, u), (r, t, s)):
        out.append(tuple(sorted(corner)))
        _fill(fb, *corner, level - 1, out)


def bose_lower_bound_instance(levels: int) -> tuple[Triangulation, list[tuple[int, int, int]]]:
    """The recursive inverted-triangle construction and its construction
    triangles (all separating, pairwise edge-disjoint).

    ``levels`` rounds of inverted triangles are nested in the corner
    triangles; the innermost corners get a single vertex, and one more vertex
    is put in the exterior face, giving n = (5 * 3**levels + 5) / 2.
    """
    if levels < 1:
        raise ValueError("levels must be at least 1")
    fb = _FaceBuilder(3)
    construction = [(0, 1, 2)]
    _fill(fb, 0, 1, 2, levels, construction)
    y = fb.new()
    fb.faces += [(0, 2, y), (2, 1, y), (1, 0, y)]
    return from_faces(fb.n, fb.faces), construction


def gen_bose_lower_bound(levels: int) -> Triangulation:
    return bose_lower_bound_instance(levels)[0]


def gen_stacked(base: Triangulation | int = 5) -> Triangulation:
    """Put a new vertex in every face of ``base`` (default: canonical on k).

    The original vertices keep their ids 0..k-1; the new ones are k..3k-5.
    """
    if isinstance(base, int):
        if base < 5:
            raise ValueError("k must be at least 5")
        base = canonical_triangulation(base)
    k = base.n
    if k < 5:
        raise ValueError("k must be at least 5")
    faces = []
    nxt = k
    for x, y, z in base.faces():
        w = nxt
        nxt += 1
        faces += [(x, y, w), (y, z, w), (z, x, w)]
    return from_faces(nxt, faces)


def stacked_black_vertices(k: int) -> list[int]:
    return list(range(k, 3 * k - 4))


def gen_max_degree_6(levels: int = 1) -> Triangulation:
    """Midpoint subdivision of the octahedron, repeated ``levels`` times.

    Octahedron vertices keep degree 4 and every midpoint has degree 6.
    """
    if levels < 0:
        raise ValueError("levels must be non-negative")
    tri = octahedron()
    for _ in range(levels):
        n = tri.n
        mid: dict[tuple[int, int], int] = {}

        def m(a, b):
            key = (a, b) if a < b else (b, a)
            if key not in mid:
                mid[key] = n + len(mid)
            return mid[key]

        faces = []
        for x, y, z in tri.faces():
            a, b, c = m(x, y), m(y, z), m(z, x)
            faces += [(x, a, c), (a, y, b), (c, b, z), (a, b, c)]
        tri = from_faces(n + len(mid), faces)
    return tri


def count_black_components_obstruction(tri: Triangulation, blacks) -> int:
    """Flips forced before a Hamiltonian cycle can exist: a cycle must put a
    white vertex between any two black ones, so it needs #white >= #black.
    """
    blacks = set(blacks)
    for v in blacks:
        if tri.adj[v] & blacks:
            raise ValueError(f"black vertices are not independent (at {v})")
    return max(0, len(blacks) - (tri.n - len(blacks)))
