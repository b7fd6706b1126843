"""Hamiltonian cycles and the outerplanar-decomposition pipeline.

A Hamiltonian cycle splits a triangulation into two maximal outerplanar
graphs, one on each side of the cycle.  Making one vertex dominant on each
side (never touching a cycle edge) reaches the canonical triangulation in
at most 2n - 10 flips.  Combined with separating-triangle removal this gives
the pairwise transforms.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass

from .canonical import PreconditionError, join_via_canonical
from .core import FlipSequence, Triangulation, edge_key, is_canonical, is_four_connected, isomorphism
from .fourconnect import bose_bound, bose_make_4connected, mori_make_4connected


_RESTARTS = 8


class BudgetExceeded(RuntimeError):
    pass


class MissingHamiltonianCycle(AssertionError):
    """Exhaustive search found no Hamiltonian cycle in a 4-connected input."""


class IllegalFlip(AssertionError):
    pass


@dataclass(frozen=True)
class HamiltonianCycle:
    cycle: tuple[int, ...]

    def edges(self) -> set[tuple[int, int]]:
        c = self.cycle
        return {edge_key(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}

    def is_valid(self, tri: Triangulation) -> bool:
        c = self.cycle
        if sorted(c) != list(range(tri.n)):
            return False
        return all(tri.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


# --------------------------------------------------------------------------
# search

class _Cutoff(Exception):
    pass


def _search(tri: Triangulation, start: int, limit: int | None, rng: random.Random | None):
    """One depth-first search from ``start``; ``limit`` caps the node count.

    Returns (path or None, nodes used); raises _Cutoff at the cap.  With
    ``rng`` the ties in the candidate ordering are broken randomly.
    """
    n = tri.n
    adj = tri.adj
    on_path = [False] * n
    on_path[start] = True
    path = [start]
    nodes = 0

    def free_degree(v: int, end: int) -> int:
        return sum(1 for w in adj[v] if not on_path[w] or w == end or w == start)

    def feasible(end: int) -> bool:
        rem = [v for v in range(n) if not on_path[v]]
        # every unvisited vertex needs two usable neighbours
        for v in rem:
            if free_degree(v, end) < 2:
                return False
        seen = {rem[0]}
        stack = [rem[0]]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not on_path[w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(rem):
            return False
        return any(not on_path[w] for w in adj[start])

    def extend(end: int) -> bool:
        nonlocal nodes
        nodes += 1
        if limit is not None and nodes > limit:
            raise _Cutoff
        if len(path) == n:
            return start in adj[end]
        if not feasible(end):
            return False
        cands = [w for w in adj[end] if not on_path[w]]
        # a neighbour of `end` with a single other way out must come next
        keys = {w: sum(1 for x in adj[w] if not on_path[x]) for w in cands}
        forced = [w for w in cands if keys[w] + (start in adj[w]) < 2]
        if len(forced) > 1:
            return False
        if forced:
            cands = forced
        if rng is None:
            cands.sort(key=lambda w: (keys[w], w))
        else:
            tie = {w: rng.random() for w in cands}
            cands.sort(key=lambda w: (keys[w], tie[w]))
        for w in cands:
            on_path[w] = True
            path.append(w)
            if extend(w):
                return True
            path.pop()
            on_path[w] = False
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        found = extend(start)
    finally:
        sys.setrecursionlimit(old)
    return (tuple(path) if found else None), nodes


def find_hamiltonian_cycle(tri: Triangulation, budget: int | None = 2_000_000) -> HamiltonianCycle | None:
    """Backtracking search for a Hamiltonian cycle.

    A few short seeded restarts with growing node caps come first (the
    search time is heavy-tailed); then one uncapped deterministic search.
    Returns None when that search is exhausted.  Raises BudgetExceeded
    after ``budget`` search nodes in total, and MissingHamiltonianCycle if a
    4-connected input turns out to have no cycle.
    """
    n = tri.n
    start = min(range(n), key=lambda v: (tri.degree(v), v))
    used = 0
    rng = random.Random(n)
    cap = 50 * n
    path = None
    exhausted = False
    for attempt in range(_RESTARTS + 1):
        last = attempt == _RESTARTS
        limit = None if last else cap
        if budget is not None:
            left = budget - used
            if left <= 0:
                raise BudgetExceeded(f"more than {budget} search nodes")
            limit = left if limit is None else min(limit, left)
        try:
            path, k = _search(tri, start, limit, None if last else rng)
        except _Cutoff:
            used += limit
            cap *= 2
            continue
        used += k
        exhausted = path is None
        break
    if path is None and not exhausted:
        raise BudgetExceeded(f"more than {budget} search nodes")
    if path is not None:
        return HamiltonianCycle(path)
    if is_four_connected(tri) and n >= 4:
        raise MissingHamiltonianCycle("4-connected triangulation without Hamiltonian cycle")
    return None


def is_hamiltonian(tri: Triangulation, budget: int | None = 2_000_000) -> bool:
    try:
        return find_hamiltonian_cycle(tri, budget) is not None
    except MissingHamiltonianCycle:
        return False


# --------------------------------------------------------------------------
# decomposition

@dataclass
class OuterplanarSide:
    cycle: tuple[int, ...]
    side: int
    chords: set[tuple[int, int]]

    def graph_edges(self) -> set[tuple[int, int]]:
        c = self.cycle
        return self.chords | {edge_key(c[i], c[(i + 1) % len(c)]) for i in range(len(c))}

    def degree(self, v: int) -> int:
        return 2 + sum(1 for e in self.chords if v in e)


def _split(r, cycle, i, k):
    """Neighbours of ``cycle[i]`` strictly between its cycle neighbours:
    (from next to prev, from prev to next) in rotation order."""
    nxt, prv = cycle[(i + 1) % k], cycle[i - 1]
    m = len(r)
    a, b = r.index(nxt), r.index(prv)
    side1 = [r[(a + j) % m] for j in range(1, (b - a) % m)]
    side2 = [r[(b + j) % m] for j in range(1, (a - b) % m)]
    return side1, side2


def decompose(tri: Triangulation, cycle) -> tuple[OuterplanarSide, OuterplanarSide]:
    """Split the non-cycle edges of ``tri`` by the side of ``cycle`` they lie on."""
    c = tuple(cycle.cycle if isinstance(cycle, HamiltonianCycle) else cycle)
    if not HamiltonianCycle(c).is_valid(tri):
        raise PreconditionError("not a Hamiltonian cycle")
    k = len(c)
    sides: list[set] = [set(), set()]
    seen: dict[tuple[int, int], int] = {}
    for i, v in enumerate(c):
        s1, s2 = _split(tri.rot[v], c, i, k)
        for tag, arc in ((0, s1), (1, s2)):
            for w in arc:
                e = edge_key(v, w)
                if e in seen and seen[e] != tag:
                    raise AssertionError(f"chord {e} seen on both sides")
                seen[e] = tag
                sides[tag].add(e)
    g1 = OuterplanarSide(c, 1, sides[0])
    g2 = OuterplanarSide(c, 2, sides[1])
    n = tri.n
    if len(g1.chords) + len(g2.chords) != 2 * n - 6 or len(g1.chords) != n - 3 or len(g2.chords) != n - 3:
        raise AssertionError("decomposition is not two maximal outerplanar graphs")
    return g1, g2


# --------------------------------------------------------------------------
# dominant vertex inside one side

def _side_arc(t: Triangulation, boundary: tuple[int, ...], side_tag: int, v: int) -> list[int]:
    """Neighbours of ``v`` on the given side of ``boundary``, in rotation
    order and including the two boundary neighbours at the ends."""
    k = len(boundary)
    i = boundary.index(v)
    nxt, prv = boundary[(i + 1) % k], boundary[i - 1]
    r = t.rot[v]
    m = len(r)
    a, b = r.index(nxt), r.index(prv)
    if side_tag == 1:
        return [r[(a + j) % m] for j in range((b - a) % m + 1)]
    return [r[(b + j) % m] for j in range((a - b) % m + 1)]


def _make_dominant(t: Triangulation, boundary: tuple[int, ...], side_tag: int, chords: set, v: int,
                   seq: FlipSequence, protected: set) -> None:
    """Make ``v`` dominant on one side using only chord flips; ``chords`` is updated in place."""
    target = len(boundary) - 1
    while True:
        arc = _side_arc(t, boundary, side_tag, v)
        if len(arc) == target:
            return
        cands = []
        for x, y in zip(arc, arc[1:]):
            e = edge_key(x, y)
            if e in chords:
                cands.append(e)
        if not cands:  # pragma: no cover
            raise AssertionError(f"{v} not dominant but no chord to flip")
        x, y = min(cands)
        p, q = t.apexes(x, y)
        z = q if p == v else p
        if z in t.adj[v]:
            raise IllegalFlip(f"flipping {x}-{y} would duplicate edge {v}-{z}")
        if (x, y) in protected:
            raise AssertionError(f"attempt to flip protected edge {(x, y)}")
        rec = t.flip(x, y)
        assert rec.added == edge_key(v, z)
        chords.discard((x, y))
        chords.add(rec.added)
        seq.append(rec)


def outerplanar_make_dominant(tri: Triangulation, side: OuterplanarSide, v: int) -> FlipSequence:
    """Make ``v`` adjacent to every vertex of the side's outerplanar graph
    using exactly ``n - 1 - deg_side(v)`` flips of that side's chords."""
    t = tri.copy()
    seq = FlipSequence()
    c = tuple(side.cycle)
    if v not in c:
        raise PreconditionError(f"{v} is not on the cycle")
    _make_dominant(t, c, side.side, set(side.chords), v, seq, set())
    return seq


# --------------------------------------------------------------------------
# Hamiltonian triangulation -> canonical

def mori_canonicalize_hamiltonian(tri: Triangulation, cycle) -> FlipSequence:
    """Canonicalise a Hamiltonian triangulation without touching cycle edges.

    Phase 1 makes a vertex ``a`` that has no chords on one side dominant on
    the other side; phase 2 drops ``a`` from the first side and makes a
    vertex of maximum degree there dominant.
    """
    n = tri.n
    if n < 6:
        raise PreconditionError("needs at least 6 vertices")
    c = tuple(cycle.cycle if isinstance(cycle, HamiltonianCycle) else cycle)
    g1, g2 = decompose(tri, c)
    cyc_edges = HamiltonianCycle(c).edges()
    # choose (G1, G2, a): a chord-free on G2, maximal degree in G1
    best = None
    for first, second in ((g1, g2), (g2, g1)):
        for a in sorted(c):
            if second.degree(a) == 2:
                key = (-first.degree(a), first.side, a)
                if best is None or key < best[0]:
                    best = (key, first, second, a)
    if best is None:  # pragma: no cover
        raise AssertionError("no vertex of degree 2 on either side")
    _, first, second, a = best
    t = tri.copy()
    seq = FlipSequence()
    chords1 = set(first.chords)
    _make_dominant(t, c, first.side, chords1, a, seq, cyc_edges)
    for rec in seq:
        assert a in rec.added
    n1 = len(seq)
    # phase 2 on G2 minus a
    i = c.index(a)
    c2 = c[i + 1:] + c[:i]
    chords2 = set(second.chords)
    p, s = c[i - 1], c[(i + 1) % n]
    chords2.discard(edge_key(p, s))
    sub_edges = chords2 | {edge_key(c2[j], c2[j + 1]) for j in range(len(c2) - 1)} | {edge_key(p, s)}
    deg2 = {v: sum(1 for e in sub_edges if v in e) for v in c2}
    u = min(c2, key=lambda v: (-deg2[v], v))
    # side tag: c2 keeps the orientation of c, so the same side tag applies
    _make_dominant(t, c2, second.side, chords2, u, seq, cyc_edges)
    for rec in seq.records[n1:]:
        assert u in rec.added
    for rec in seq:
        assert rec.removed not in cyc_edges
    assert t.degree(a) == n - 1 and t.degree(u) == n - 1
    if len(seq) > 2 * n - 10:
        raise AssertionError(f"{len(seq)} flips exceed 2n - 10")
    return seq


def _pipeline(tri: Triangulation, make4) -> tuple[FlipSequence, int]:
    if is_canonical(tri):
        return FlipSequence(), 0
    s1 = make4(tri)
    t = s1.apply(tri)
    cyc = find_hamiltonian_cycle(t, budget=None)
    if cyc is None:  # pragma: no cover - MissingHamiltonianCycle raised first
        raise MissingHamiltonianCycle("no Hamiltonian cycle")
    s2 = mori_canonicalize_hamiltonian(t, cyc)
    return FlipSequence(list(s1.records) + list(s2.records)), len(s1)


def mori_to_canonical(tri: Triangulation) -> FlipSequence:
    return _pipeline(tri, mori_make_4connected)[0]


def bose_to_canonical(tri: Triangulation) -> FlipSequence:
    return _pipeline(tri, lambda t: bose_make_4connected(t)[0])[0]


def mori_transform_bound(n: int) -> int:
    return 6 * n - 30


def bose_mori_transform_bound(n: int) -> int:
    return 2 * (bose_bound(n) + 2 * n - 10)


def reference_pair_bound(n: int) -> float:
    """The sharper 5.2n - 24.4 pair bound, reported for comparison only."""
    return 5.2 * n - 24.4


def _transform(t1: Triangulation, t2: Triangulation, route) -> FlipSequence:
    if t1.n != t2.n:
        raise PreconditionError("vertex counts differ")
    if t1.n < 6:
        from .flipgraph import shortest_flip_sequence

        return shortest_flip_sequence(t1, t2)
    phi = isomorphism(t1, t2)
    if phi is not None:
        return FlipSequence(relabeling=phi)
    return join_via_canonical(t1, route(t1), t2, route(t2))


def mori_transform(t1: Triangulation, t2: Triangulation) -> FlipSequence:
    """4-connect, canonicalise along a Hamiltonian cycle, then reverse the
    same pipeline for ``t2``.  At most 6n - 30 flips."""
    return _transform(t1, t2, mori_to_canonical)


def bose_mori_transform(t1: Triangulation, t2: Triangulation) -> FlipSequence:
    """As :func:`mori_transform` but 4-connecting with the charging scheme."""
    return _transform(t1, t2, bose_to_canonical)
