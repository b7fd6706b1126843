"""Removing separating triangles by flips.

Two procedures: the simple one that flips an edge of any separating
triangle (at most n - 4 flips), and the coin-charging one that always flips
an edge of a deepest separating triangle (at most floor((3n - 6) / 5)
flips).  The second keeps an explicit ledger of coins and audits its two
invariants after every flip.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Edge,
    FlipRecord,
    FlipSequence,
    SeparatingTriangle,
    Triangulation,
    default_outer_face,
    edge_key,
    separating_triangles,
    separating_triples,
)


class LedgerViolation(AssertionError):
    """The charging argument failed: missing coin or broken invariant."""


def mori_bound(n: int) -> int:
    return max(0, n - 4)


def bose_bound(n: int) -> int:
    return (3 * n - 6) // 5


def bose_lower_bound(n: int) -> int:
    return -((10 - 3 * n) // 5)  # ceil((3n - 10) / 5)


# --------------------------------------------------------------------------
# free edges

def sep_edge_counts(seps) -> dict[Edge, int]:
    counts: dict[Edge, int] = {}
    for s in seps:
        vs = s.vertices if isinstance(s, SeparatingTriangle) else s
        x, y, z = vs
        for e in ((x, y), (x, z), (y, z)):
            counts[e] = counts.get(e, 0) + 1
    return counts


def free_edges(tri: Triangulation) -> set[Edge]:
    """Edges lying on no separating triangle."""
    used = sep_edge_counts(separating_triples(tri))
    return {e for e in tri.edges() if e not in used}


def _inside_edges_at(tri: Triangulation, v: int, d: SeparatingTriangle) -> list[Edge]:
    return sorted(edge_key(v, u) for u in tri.adj[v] if u in d.interior)


def find_free_edge_inside(tri: Triangulation, v: int, d, outer=None) -> Edge:
    """Smallest free edge at ``v`` whose other end lies strictly inside ``d``."""
    seps = separating_triangles(tri, outer)
    key = tuple(sorted(d.vertices if isinstance(d, SeparatingTriangle) else d))
    match = [s for s in seps if s.vertices == key]
    if not match:
        raise ValueError(f"{key} is not a separating triangle")
    if v not in key:
        raise ValueError(f"{v} is not a corner of {key}")
    used = sep_edge_counts(seps)
    for e in _inside_edges_at(tri, v, match[0]):
        if e not in used:
            return e
    raise AssertionError(f"no free edge at {v} inside {key}")  # a corner always has one


# --------------------------------------------------------------------------
# simple removal

def _mori_choice(seps: list[tuple[int, int, int]]) -> Edge:
    counts = sep_edge_counts(seps)
    d = seps[0]
    x, y, z = d
    es = [(x, y), (x, z), (y, z)]
    shared = [e for e in es if counts[e] > 1]
    return shared[0] if shared else es[0]


def mori_make_4connected(tri: Triangulation) -> FlipSequence:
    """Flip an edge of the smallest separating triangle until none remain.

    A shared edge of that triangle is preferred so no flip creates a new
    separating triangle; the number of flips is at most the initial number
    of separating triangles, itself at most n - 4.
    """
    n = tri.n
    if n == 5:
        raise ValueError("no 4-connected triangulation has 5 vertices")
    t = tri.copy()
    seq = FlipSequence()
    seps = separating_triples(t)
    while seps:
        x, y = _mori_choice(seps)
        rec = t.flip(x, y)  # always legal: the new edge crosses the triangle
        seq.append(rec)
        after = separating_triples(t)
        if len(after) >= len(seps) or not set(after) <= set(seps):
            raise AssertionError("flip created a separating triangle")
        seps = after
    if len(seq) > mori_bound(n):
        raise AssertionError(f"{len(seq)} flips exceed n - 4")
    return seq


# --------------------------------------------------------------------------
# charging scheme

@dataclass(frozen=True)
class Charge:
    edge: Edge
    type: int  # 1 flipped edge, 2 unshared triangle edge, 3/4 free edges


@dataclass(frozen=True)
class CaseTag:
    case: int
    triangle: tuple[int, int, int]
    flip_edge: Edge
    charges: tuple[Charge, ...]
    containing: tuple[int, int, int] | None = None
    partner: tuple[int, int, int] | None = None

    def __str__(self) -> str:
        ch = " ".join(f"{c.edge[0]}-{c.edge[1]}:T{c.type}" for c in self.charges)
        return (f"case={self.case} triangle={self.triangle} "
                f"flip={self.flip_edge[0]}-{self.flip_edge[1]} charged=[{ch}]")


@dataclass
class ChargingLedger:
    coins: dict[Edge, int] = field(default_factory=dict)
    charge_log: list[CaseTag] = field(default_factory=list)
    spent: set[Edge] = field(default_factory=set)
    # outer face used for containment: initially, then after each flip
    outer_log: list[tuple[int, int, int]] = field(default_factory=list)

    @classmethod
    def initial(cls, tri: Triangulation) -> "ChargingLedger":
        return cls(coins={e: 1 for e in tri.edges()})

    def spend(self, tag: CaseTag) -> None:
        if len(tag.charges) != 5 or len({c.edge for c in tag.charges}) != 5:
            raise LedgerViolation(f"need five distinct charges: {tag}")
        for c in tag.charges:
            if self.coins.get(c.edge, 0) != 1:
                raise LedgerViolation(f"edge {c.edge} has no coin ({tag})")
        for c in tag.charges:
            self.coins[c.edge] = 0
            self.spent.add(c.edge)
        self.charge_log.append(tag)

    def record_flip(self, rec: FlipRecord) -> None:
        self.coins.pop(rec.removed, None)
        self.coins[rec.added] = 0

    def dump(self) -> str:
        return "\n".join(str(tag) for tag in self.charge_log)


def audit(tri: Triangulation, seps: list[SeparatingTriangle], ledger: ChargingLedger) -> None:
    """Check both invariants; raise LedgerViolation naming the witness."""
    used = sep_edge_counts(seps)
    coins = ledger.coins
    for e in used:
        if coins.get(e, 0) != 1:
            raise LedgerViolation(f"invariant A: separating-triangle edge {e} has no coin")
    for s in seps:
        for v in s.vertices:
            if not any(coins.get(e, 0) == 1 and e not in used for e in _inside_edges_at(tri, v, s)):
                raise LedgerViolation(f"invariant B: corner {v} of {s.vertices} has no coined free edge inside")


def deepest(seps: list[SeparatingTriangle]) -> SeparatingTriangle:
    return min(seps, key=lambda s: (-s.depth, s.vertices))


def _on_triangle(e: Edge, s: SeparatingTriangle) -> bool:
    return e[0] in s.vertices and e[1] in s.vertices


def classify_case(tri: Triangulation, d: SeparatingTriangle | tuple, seps=None, ledger=None,
                  outer=None) -> CaseTag:
    """Pick the edge of a deepest separating triangle to flip and the five
    coins paying for it.

    ``ledger`` (optional) restricts the free-edge choices to edges that
    still carry a coin; without it every edge is assumed coined.
    """
    if seps is None:
        seps = separating_triangles(tri, outer)
    if not isinstance(d, SeparatingTriangle):
        key = tuple(sorted(d))
        found = [s for s in seps if s.vertices == key]
        if not found:
            raise ValueError(f"{key} is not a separating triangle")
        d = found[0]
    if any(s.depth > d.depth for s in seps):
        raise ValueError(f"{d.vertices} is not a deepest separating triangle")
    coins = ledger.coins if ledger is not None else None
    used = sep_edge_counts(seps)
    others = [s for s in seps if s.vertices != d.vertices]
    x, y, z = d.vertices
    d_edges = [(x, y), (x, z), (y, z)]
    cont = {e: [s for s in others if _on_triangle(e, s) and s.contains(d)] for e in d_edges}
    noncont = {e: [s for s in others if _on_triangle(e, s) and not s.contains(d)] for e in d_edges}
    cont_edges = [e for e in d_edges if cont[e]]
    if len(cont_edges) > 1:
        raise AssertionError(f"{d.vertices} shares several edges with containing triangles")
    containers = [s for s in others if s.contains(d)]

    def coined(e):
        return coins is None or coins.get(e, 0) == 1

    def free_inside(v, s):
        for e in _inside_edges_at(tri, v, s):
            if e not in used and coined(e):
                return e
        raise LedgerViolation(f"no coined free edge at {v} inside {s.vertices}")

    def survivors_at(v, flip_e):
        return [s for s in containers if v in s.vertices and not _on_triangle(flip_e, s)]

    def third(e):
        return next(v for v in d.vertices if v not in e)

    if not cont_edges:
        nc_edges = [e for e in d_edges if noncont[e]]
        if not nc_edges:
            # Case 1: flip one edge, charge all three and two free edges
            e = d_edges[0]
            charges = [Charge(e, 1)] + [Charge(f, 2) for f in d_edges if f != e]
            spots = [v for v in d.vertices if not survivors_at(v, e)][:2]
            charges += [Charge(free_inside(v, d), 3) for v in spots]
            return CaseTag(1, d.vertices, e, tuple(charges))
        # Case 2: flip a shared edge; quadrilateral with the partner B
        e = nc_edges[0]
        b_tri = min(noncont[e], key=lambda s: (-s.depth, s.vertices))
        charges = [Charge(e, 1), Charge(free_inside(e[0], d), 4), Charge(free_inside(e[1], d), 4)]
        w = next(v for v in b_tri.vertices if v not in e)
        z0 = third(e)
        slots = [(z0, d), (w, b_tri), (e[0], b_tri), (e[1], b_tri)]
        picked = 0
        for v, region in slots:
            if picked == 2:
                break
            if survivors_at(v, e):
                continue
            charges.append(Charge(free_inside(v, region), 3))
            picked += 1
        return CaseTag(2, d.vertices, e, tuple(charges), partner=b_tri.vertices)
    ce = cont_edges[0]
    a_tri = min(cont[ce], key=lambda s: (-s.depth, s.vertices))
    rest = [e for e in d_edges if e != ce]
    shared_rest = [e for e in rest if noncont[e]]
    v_free = third(ce)
    if not shared_rest:
        # Case 3: flip the edge shared with A, charge D's edges
        charges = [Charge(ce, 1)] + [Charge(f, 2) for f in rest]
        charges.append(Charge(free_inside(v_free, d), 3))
        for v in ce:
            if not survivors_at(v, ce):
                charges.append(Charge(free_inside(v, d), 3))
                break
        return CaseTag(3, d.vertices, ce, tuple(charges), containing=a_tri.vertices)
    if len(shared_rest) == 1:
        # Case 4: flip the edge shared with B
        f = shared_rest[0]
        unshared = next(e for e in rest if e != f)
        b_tri = min(noncont[f], key=lambda s: (-s.depth, s.vertices))
        charges = [Charge(f, 1), Charge(unshared, 2),
                   Charge(free_inside(f[0], d), 4), Charge(free_inside(f[1], d), 4),
                   Charge(free_inside(v_free, b_tri), 3)]
        return CaseTag(4, d.vertices, f, tuple(charges), containing=a_tri.vertices,
                       partner=b_tri.vertices)
    # Case 5: both other edges shared; the smallest partner stays, flip the other
    partners = [(min(noncont[e], key=lambda s: (-s.depth, s.vertices)), e) for e in rest]
    partners.sort(key=lambda p: p[0].vertices)
    (_kept, _kept_e), (b_tri, f) = partners
    last = next(v for v in d.vertices if v not in f)
    charges = [Charge(f, 1),
               Charge(free_inside(f[0], d), 4), Charge(free_inside(f[1], d), 4),
               Charge(free_inside(v_free, b_tri), 3),
               Charge(free_inside(last, d), 3)]
    return CaseTag(5, d.vertices, f, tuple(charges), containing=a_tri.vertices,
                   partner=b_tri.vertices)


def _next_outer(outer, rec: FlipRecord):
    x, y = rec.removed
    if x in outer and y in outer:
        a, b = rec.added
        return tuple(sorted((a, b, x)))
    return outer


def bose_make_4connected(tri: Triangulation, outer=None) -> tuple[FlipSequence, ChargingLedger]:
    """Repeatedly flip an edge of a deepest separating triangle, paying five
    coins per flip, and audit the ledger after every flip.
    """
    n = tri.n
    t = tri.copy()
    seq = FlipSequence()
    ledger = ChargingLedger.initial(t)
    if outer is None:
        outer = default_outer_face(t)
    outer = tuple(sorted(outer))
    ledger.outer_log.append(outer)
    seps = separating_triangles(t, outer)
    if seps and n < 6:
        raise ValueError("needs at least 6 vertices")
    audit(t, seps, ledger)
    while seps:
        d = deepest(seps)
        tag = classify_case(t, d, seps, ledger)
        ledger.spend(tag)
        rec = t.flip(*tag.flip_edge)
        ledger.record_flip(rec)
        seq.append(rec)
        outer = _next_outer(outer, rec)
        ledger.outer_log.append(outer)
        after = separating_triangles(t, outer)
        before = {s.vertices for s in seps}
        if not {s.vertices for s in after} < before:
            raise AssertionError("flip created a separating triangle")
        seps = after
        audit(t, seps, ledger)
    if len(seq) > bose_bound(n):
        raise LedgerViolation(f"{len(seq)} flips exceed floor((3n-6)/5)")
    return seq, ledger
