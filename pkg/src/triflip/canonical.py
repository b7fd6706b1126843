"""Flip sequences to the canonical triangulation (two dominant vertices).

Three procedures: degree raising (``wagner_*``), degree lowering of the
outer apex (``negami_*``) and a potential-driven scheme (``komuro_*``),
plus the pairwise transform that routes through the canonical
triangulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    FlipSequence,
    Triangulation,
    edge_key,
    is_canonical,
    isomorphism,
)


class BoundExceeded(RuntimeError):
    """An algorithm used more flips than its proven bound allows."""


class PreconditionError(ValueError):
    pass


def wagner_bound(n: int) -> int:
    return n * n - 7 * n + 12


def komuro_bound(n: int, deg_a: int, deg_b: int) -> int:
    return 4 * n - 4 - (3 * deg_a + deg_b)


def komuro_transform_bound(n: int) -> int | None:
    if n >= 13:
        return 8 * n - 54
    if n >= 7:
        return 8 * n - 48
    return None


# --------------------------------------------------------------------------
# degree raising

def _wagner_witness(tri: Triangulation, a: int, avoid: int | None):
    """Smallest face (u, w, v) with u, w adjacent to ``a`` and v not."""
    na = tri.adj[a]
    best = None
    for u in na:
        if u == avoid:
            continue
        for w in tri.rot[u]:
            if w <= u or w not in na or w == avoid:
                continue
            for v in tri.apexes(u, w):
                if v != a and v not in na and v != avoid:
                    cand = (u, w, v)
                    if best is None or cand < best:
                        best = cand
    return best


def wagner_canonicalize(tri: Triangulation, a: int, b: int, *, check_bound: bool = True) -> FlipSequence:
    """Make ``a`` then ``b`` dominant by repeatedly flipping an edge ``uw``
    of a face ``uwv`` where ``u, w`` are neighbours of the target vertex and
    ``v`` is not.  ``ab`` must be an edge (so ``a, b`` lie on a common face).

    While raising ``b``, faces through ``a`` are skipped so that ``a`` stays
    dominant.
    """
    if b not in tri.adj[a]:
        raise PreconditionError(f"{a} and {b} do not share a face")
    t = tri.copy()
    n = t.n
    seq = FlipSequence()
    limit = wagner_bound(n)
    for target, avoid in ((a, None), (b, a)):
        while t.degree(target) < n - 1:
            wit = _wagner_witness(t, target, avoid)
            if wit is None:  # pragma: no cover - excluded by the case analysis
                raise AssertionError(f"no witness face for {target}")
            u, w, v = wit
            deg_v = t.degree(v)
            deg_t = t.degree(target)
            rec = t.flip(u, w)
            seq.append(rec)
            if rec.added == edge_key(target, v):
                assert t.degree(target) == deg_t + 1
            else:
                assert t.degree(v) == deg_v + 1
            if check_bound and len(seq) > limit:
                raise BoundExceeded(f"wagner used more than {limit} flips")
    return seq


# --------------------------------------------------------------------------
# degree lowering

def _inner_arc(t: Triangulation, x: int, a: int, b: int, prev: int | None) -> list[int]:
    """Neighbours of ``x`` strictly between ``a`` and ``b`` on the side
    away from ``prev`` (for the first apex: the non-empty side), ordered
    starting next to ``a``.
    """
    r = t.rot[x]
    k = len(r)
    ia, ib = r.index(a), r.index(b)
    fwd = [r[(ia + j) % k] for j in range(1, (ib - ia) % k)]
    bwd = [r[(ia - j) % k] for j in range(1, (ia - ib) % k)]
    if prev is None:
        return fwd if len(fwd) >= len(bwd) else bwd
    return bwd if prev in fwd else fwd


def negami_canonicalize(tri: Triangulation, outer_face) -> FlipSequence:
    """Lower the degree of the outer apex ``c`` to 3, then walk inward.

    With ``outer_face = (a, b, c)`` and ``a, v1, v2, ...`` the neighbours of
    the current apex ``x`` inside the triangle ``a x b``: if ``a`` and ``v2``
    are non-adjacent flip ``x v1`` (creating ``a v2``), otherwise flip
    ``x v2`` (``a v2 x`` separates ``v1`` from ``v3``).  Once ``x`` has a
    single inner neighbour, that neighbour becomes the apex.  Every vertex
    other than ``a, b`` is inside ``a x b`` at all times, so the frames form
    a chain.
    """
    a, b, c = outer_face
    if not tri.is_face(a, b, c):
        raise PreconditionError(f"{tuple(outer_face)} is not a face")
    t = tri.copy()
    seq = FlipSequence()
    x, prev = c, None
    while True:
        arc = _inner_arc(t, x, a, b, prev)
        while len(arc) >= 2:
            v1, v2 = arc[0], arc[1]
            before = t.degree(x)
            if v2 not in t.adj[a]:
                rec = t.flip(x, v1)
                assert rec.added == edge_key(a, v2)
            else:
                v3 = arc[2] if len(arc) > 2 else b
                rec = t.flip(x, v2)
                assert rec.added == edge_key(v1, v3)
            assert t.degree(x) == before - 1
            seq.append(rec)
            arc = _inner_arc(t, x, a, b, prev)
        if not arc:
            break
        prev, x = x, arc[0]
    assert t.degree(a) == t.n - 1 and t.degree(b) == t.n - 1
    return seq


# --------------------------------------------------------------------------
# potential

@dataclass
class PotentialState:
    a: int
    b: int
    d: int

    @classmethod
    def of(cls, t: Triangulation, a: int, b: int) -> "PotentialState":
        return cls(a, b, 3 * t.degree(a) + t.degree(b))


def _after(r: list[int], first: int, second: int, k: int) -> list[int]:
    """The ``k`` neighbours following ``second`` in the direction first->second."""
    m = len(r)
    i, j = r.index(first), r.index(second)
    step = 1 if (i + 1) % m == j else -1
    assert (i + step) % m == j
    return [r[(j + step * s) % m] for s in range(1, k + 1)]


def _komuro_step(t: Triangulation, a: int, b: int) -> list:
    """One step of the potential argument; returns the emitted records."""
    n = t.n
    u = min(t.apexes(a, b))
    if t.degree(u) > 3:
        w1, w2 = _after(t.rot[u], a, b, 2)
        if w2 not in t.adj[b]:
            rec = t.flip(u, w1)
            assert rec.added == edge_key(b, w2)
        else:
            # u b w2 separates a from w1
            rec = t.flip(u, b)
            assert rec.added == edge_key(a, w1)
        return [rec]
    # deg(u) == 3: walk the chain of apexes over ab
    prev = u
    cur = next(w for w in t.rot[u] if w != a and w != b)
    while True:
        dc = t.degree(cur)
        if dc == 3:
            # only possible when the chain covers the whole graph
            raise AssertionError("chain ended although a, b are not dominant")
        if dc >= 5:
            h1, h2 = _after(t.rot[cur], prev, b, 2)
            if h2 not in t.adj[b]:
                rec = t.flip(cur, h1)
                assert rec.added == edge_key(b, h2)
                return [rec]
            # cur b h2 separates prev, a from h1: flip cur-b then cur-prev
            if not t.is_flippable(cur, b):
                raise AssertionError(f"two-flip escape: {cur}-{b} not flippable")
            r1 = t.flip(cur, b)
            assert r1.added == edge_key(prev, h1)
            if not t.is_flippable(cur, prev):
                raise AssertionError(f"two-flip escape: {cur}-{prev} not flippable")
            r2 = t.flip(cur, prev)
            assert r2.added == edge_key(a, h1)
            return [r1, r2]
        # degree 4: neighbours a, prev, b and the next chain vertex
        nxt = next(w for w in t.rot[cur] if w not in (a, b, prev))
        prev, cur = cur, nxt
        if cur == u:  # pragma: no cover
            raise AssertionError("chain cycled")
        assert n > 4


def komuro_canonicalize(tri: Triangulation, a: int, b: int) -> FlipSequence:
    """Make adjacent ``a`` and ``b`` dominant, raising the potential
    ``3 deg(a) + deg(b)`` by at least one per flip.
    """
    if b not in tri.adj[a]:
        raise PreconditionError(f"{a}-{b} is not an edge")
    t = tri.copy()
    n = t.n
    seq = FlipSequence()
    state = PotentialState.of(t, a, b)
    limit = komuro_bound(n, t.degree(a), t.degree(b))
    while not (t.degree(a) == n - 1 and t.degree(b) == n - 1):
        recs = _komuro_step(t, a, b)
        seq.extend(recs)
        new = PotentialState.of(t, a, b)
        if new.d - state.d < len(recs):
            raise AssertionError(f"potential rose by {new.d - state.d} over {len(recs)} flips")
        state = new
        if len(seq) > limit:
            raise BoundExceeded(f"komuro used more than {limit} flips")
    assert state.d == 4 * n - 4
    return seq


def best_potential_edge(tri: Triangulation) -> tuple[int, int]:
    """Directed edge (a, b) maximising 3 deg(a) + deg(b), smallest ids on ties."""
    deg = tri.degrees()
    best = None
    for a in range(tri.n):
        for b in tri.rot[a]:
            key = (-(3 * deg[a] + deg[b]), a, b)
            if best is None or key < best:
                best = key
    return best[1], best[2]


def _one_flip_to_canonical(tri: Triangulation):
    """An edge whose flip yields the canonical triangulation, or None."""
    n = tri.n
    deg = tri.degrees()
    full = [v for v in range(n) if deg[v] == n - 1]
    for x, y in tri.edges():
        p, q = tri.apexes(x, y)
        if q in tri.adj[p]:
            continue
        d = {x: deg[x] - 1, y: deg[y] - 1, p: deg[p] + 1, q: deg[q] + 1}
        cnt = sum(1 for v in full if v not in d) + sum(1 for v in d if d[v] == n - 1)
        if cnt >= 2:
            return x, y
    return None


def to_canonical(tri: Triangulation) -> FlipSequence:
    """Short route to the canonical triangulation used by the transform."""
    if is_canonical(tri):
        return FlipSequence()
    e = _one_flip_to_canonical(tri)
    if e is not None:
        t = tri.copy()
        return FlipSequence([t.flip(*e)])
    a, b = best_potential_edge(tri)
    return komuro_canonicalize(tri, a, b)


def join_via_canonical(t1: Triangulation, s1: FlipSequence,
                       t2: Triangulation, s2: FlipSequence) -> FlipSequence:
    """Concatenate ``s1`` with the reverse of ``s2``.

    ``s1`` and ``s2`` end at isomorphic triangulations; the reversed second
    half is relabelled onto the first, and the result carries a relabeling
    certificate onto ``t2``'s labels.
    """
    c1 = s1.apply(t1)
    c2 = s2.apply(t2)
    phi = isomorphism(c1, c2)
    if phi is None:
        raise AssertionError("sequences do not meet at isomorphic triangulations")
    inv = {w: v for v, w in phi.items()}
    back = s2.reversed().relabeled(inv)
    out = FlipSequence(list(s1.records) + list(back.records), relabeling=dict(phi))
    return out


def komuro_transform(t1: Triangulation, t2: Triangulation) -> FlipSequence:
    """Transform ``t1`` into a triangulation isomorphic to ``t2`` through the
    canonical triangulation.  Below seven vertices the exact shortest
    sequence from the flip graph is returned instead.
    """
    if t1.n != t2.n:
        raise PreconditionError("vertex counts differ")
    if t1.n < 7:
        from .flipgraph import shortest_flip_sequence

        return shortest_flip_sequence(t1, t2)
    return join_via_canonical(t1, to_canonical(t1), t2, to_canonical(t2))
