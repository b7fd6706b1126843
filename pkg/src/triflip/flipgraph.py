"""Exhaustive flip graphs for small vertex counts.

Nodes are canonical codes; the graph is grown by breadth-first search over
single flips from the canonical triangulation, which reaches every
triangulation because the flip graph is connected.
"""

from __future__ import annotations

import os
import struct
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .core import (
    FlipRecord,
    FlipSequence,
    Triangulation,
    canonical_code,
    canonical_triangulation,
    count_flippable_edges,
    from_canonical_code,
    isomorphism,
)

N_MAX = 11
MAGIC = b"FGC1"


class CacheError(ValueError):
    pass


@dataclass
class FlipGraph:
    n: int
    codes: list[bytes]
    nodes: list[Triangulation]
    edges: list[tuple[int, int]]
    index: dict[bytes, int] = field(default_factory=dict)
    _adj: list[list[int]] | None = None
    _dist: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {c: i for i, c in enumerate(self.codes)}

    def __len__(self) -> int:
        return len(self.codes)

    @property
    def adjacency(self) -> list[list[int]]:
        if self._adj is None:
            adj: list[set[int]] = [set() for _ in self.codes]
            for i, j in self.edges:
                adj[i].add(j)
                adj[j].add(i)
            self._adj = [sorted(s) for s in adj]
        return self._adj

    def node_of(self, tri: Triangulation) -> int:
        if tri.n != self.n:
            raise ValueError(f"expected {self.n} vertices, got {tri.n}")
        return self.index[canonical_code(tri)]

    def distances_from(self, i: int) -> list[int]:
        if i not in self._dist:
            adj = self.adjacency
            dist = [-1] * len(adj)
            dist[i] = 0
            q = deque([i])
            while q:
                v = q.popleft()
                for w in adj[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        q.append(w)
            self._dist[i] = dist
        return self._dist[i]

    def distance_matrix(self) -> list[list[int]]:
        return [self.distances_from(i) for i in range(len(self))]

    def distance(self, t1: Triangulation, t2: Triangulation) -> int:
        return self.distances_from(self.node_of(t1))[self.node_of(t2)]

    def diameter(self) -> int:
        return max(max(self.distances_from(i)) for i in range(len(self)))

    def is_connected(self) -> bool:
        return min(self.distances_from(0)) >= 0


def _check_n(n: int, n_max: int = N_MAX) -> None:
    if not 4 <= n <= n_max:
        raise ValueError(f"n must be in 4..{n_max}")


def build(n: int, n_max: int = N_MAX) -> FlipGraph:
    """Breadth-first search over flips from the canonical triangulation."""
    _check_n(n, n_max)
    start = canonical_triangulation(n)
    c0 = canonical_code(start)
    index = {c0: 0}
    reps = [from_canonical_code(c0)]
    codes = [c0]
    edges: set[tuple[int, int]] = set()
    q = deque([0])
    while q:
        i = q.popleft()
        rep = reps[i]
        for x, y in rep.edges():
            if not rep.is_flippable(x, y):
                continue
            t = rep.copy()
            t.flip(x, y)
            c = canonical_code(t)
            j = index.get(c)
            if j is None:
                j = index[c] = len(codes)
                codes.append(c)
                reps.append(from_canonical_code(c))
                q.append(j)
            if i != j:
                edges.add((min(i, j), max(i, j)))
    # sorted node order makes the result independent of traversal order
    order = sorted(range(len(codes)), key=lambda k: codes[k])
    pos = {old: new for new, old in enumerate(order)}
    codes = [codes[k] for k in order]
    reps = [reps[k] for k in order]
    edge_list = sorted((min(pos[i], pos[j]), max(pos[i], pos[j])) for i, j in edges)
    return FlipGraph(n, codes, reps, edge_list)


# --------------------------------------------------------------------------
# cache file

def write_cache(graph: FlipGraph, path) -> None:
    out = bytearray(MAGIC)
    out += struct.pack("<B", graph.n)
    out += struct.pack("<Q", len(graph.codes))
    for c in graph.codes:
        out += struct.pack("<I", len(c)) + c
    out += struct.pack("<Q", len(graph.edges))
    for i, j in graph.edges:
        out += struct.pack("<II", i, j)
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_bytes(bytes(out))
    os.replace(tmp, path)


def read_cache(path) -> FlipGraph:
    data = Path(path).read_bytes()
    try:
        if data[:4] != MAGIC:
            raise CacheError("bad magic")
        n = data[4]
        (count,) = struct.unpack_from("<Q", data, 5)
        off = 13
        codes = []
        for _ in range(count):
            (k,) = struct.unpack_from("<I", data, off)
            off += 4
            codes.append(bytes(data[off:off + k]))
            if len(codes[-1]) != k:
                raise CacheError("truncated code")
            off += k
        (m,) = struct.unpack_from("<Q", data, off)
        off += 8
        edges = []
        for _ in range(m):
            i, j = struct.unpack_from("<II", data, off)
            off += 8
            if not (i < count and j < count):
                raise CacheError("edge index out of range")
            edges.append((i, j))
    except struct.error as exc:
        raise CacheError(f"truncated cache file: {exc}") from exc
    if off != len(data):
        raise CacheError("trailing bytes in cache file")
    if codes != sorted(codes):
        raise CacheError("codes not sorted")
    reps = [from_canonical_code(c) for c in codes]
    if any(t.n != n for t in reps):
        raise CacheError("code does not match n")
    return FlipGraph(n, codes, reps, edges)


def default_cache_dir() -> Path | None:
    d = os.environ.get("TRIFLIP_CACHE")
    return Path(d) if d else None


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, cache_dir: str | None, n_max: int) -> FlipGraph:
    if cache_dir is not None:
        path = Path(cache_dir) / f"flipgraph_n{n}.fgc"
        if path.exists():
            try:
                g = read_cache(path)
                if g.n == n:
                    return g
            except CacheError:
                pass
        g = build(n, n_max)
        path.parent.mkdir(parents=True, exist_ok=True)
        write_cache(g, path)
        return g
    return build(n, n_max)


def enumerate_triangulations(n: int, cache_dir=None, n_max: int = N_MAX) -> FlipGraph:
    """All ``n``-vertex triangulations up to isomorphism, with flip edges.

    ``cache_dir`` (or the TRIFLIP_CACHE environment variable) enables the
    on-disk cache; results are memoised in-process either way.
    """
    _check_n(n, n_max)
    if cache_dir is None:
        cache_dir = default_cache_dir()
    return _enumerate_cached(n, None if cache_dir is None else str(cache_dir), n_max)


def distance(t1: Triangulation, t2: Triangulation, cache_dir=None) -> int:
    if t1.n != t2.n:
        raise ValueError("vertex counts differ")
    return enumerate_triangulations(t1.n, cache_dir).distance(t1, t2)


def diameter(n: int, cache_dir=None) -> int:
    return enumerate_triangulations(n, cache_dir).diameter()


def shortest_flip_sequence(t1: Triangulation, t2: Triangulation, max_nodes: int = 200_000) -> FlipSequence:
    """A shortest flip sequence from ``t1`` to a triangulation isomorphic to
    ``t2``, found by BFS over labelled states deduplicated by canonical code.
    Carries a relabeling certificate onto ``t2``.
    """
    if t1.n != t2.n:
        raise ValueError("vertex counts differ")
    goal = canonical_code(t2)
    c1 = canonical_code(t1)
    parent: dict[bytes, tuple[bytes, FlipRecord] | None] = {c1: None}
    state = {c1: t1.copy()}
    q = deque([c1])
    found = c1 == goal
    while q and not found:
        c = q.popleft()
        cur = state[c]
        for x, y in cur.edges():
            if not cur.is_flippable(x, y):
                continue
            t = cur.copy()
            rec = t.flip(x, y)
            k = canonical_code(t)
            if k in parent:
                continue
            parent[k] = (c, rec)
            state[k] = t
            if k == goal:
                found = True
                break
            q.append(k)
            if len(parent) > max_nodes:
                raise RuntimeError("flip graph too large for direct search")
    if not found:  # pragma: no cover - the flip graph is connected
        raise AssertionError("target not reachable")
    recs = []
    k = goal
    while parent[k] is not None:
        k, rec = parent[k]
        recs.append(rec)
    recs.reverse()
    phi = isomorphism(state[goal], t2)
    return FlipSequence(recs, relabeling=phi)


# --------------------------------------------------------------------------
# bound verification

@dataclass
class Report:
    n: int
    records: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    def add(self, **kv) -> None:
        self.records.append(kv)
        if kv.get("status") == "fail":
            self.violations.append(kv)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = []
        for r in self.records:
            lines.append(" ".join(f"{k}={_fmt(v)}" for k, v in r.items()))
        passed = sum(1 for r in self.records if r.get("status") == "pass")
        failed = len(self.violations)
        lines.append(f"record=SUMMARY n={self.n} checks={len(self.records)} pass={passed} fail={failed}")
        return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, bytes):
        return v.hex()
    if isinstance(v, float):
        return f"{v:.4f}"
    return str(v).replace(" ", "")


def _lengths_summary(report: Report, name: str, lengths: list[int], bound_name: str, bounds: list[int]):
    if not lengths:
        return
    worst = max(b - l for l, b in zip(lengths, bounds))
    report.add(record="algorithm", name=name, runs=len(lengths), max_len=max(lengths),
               mean_len=sum(lengths) / len(lengths), bound=bound_name, min_slack=min(b - l for l, b in zip(lengths, bounds)),
               max_slack=worst, status="pass")


def verify_bounds(n: int, pair_limit: int | None = None, seed: int = 0, cache_dir=None) -> Report:
    """Run every algorithm on every node (and on pairs) and compare the
    achieved lengths with their bounds and with exact distances.

    All pairs are checked for ``n <= 8``; above that ``pair_limit`` random
    pairs (default 200).
    """
    import random

    from .canonical import (
        komuro_bound,
        komuro_canonicalize,
        komuro_transform,
        komuro_transform_bound,
        negami_canonicalize,
        wagner_bound,
        wagner_canonicalize,
    )
    from .core import default_outer_face, is_canonical
    from .extremal import degree_distance_lower_bound, komuro_canonical_lower_bound
    from .fourconnect import bose_bound, bose_make_4connected, mori_bound, mori_make_4connected
    from .hamilton import (
        bose_mori_transform,
        bose_mori_transform_bound,
        mori_transform,
        mori_transform_bound,
    )

    g = enumerate_triangulations(n, cache_dir)
    rep = Report(n)
    delta = canonical_triangulation(n)
    i_delta = g.node_of(delta)
    dist_to_canon = g.distances_from(i_delta)

    def check(cond, **kv):
        kv["status"] = "pass" if cond else "fail"
        rep.add(**kv)
        return cond

    lens: dict[str, list[int]] = {}
    bnds: dict[str, list[int]] = {}

    def note(name, length, bound):
        lens.setdefault(name, []).append(length)
        bnds.setdefault(name, []).append(bound)

    for i, t in enumerate(g.nodes):
        code = g.codes[i]
        d0 = dist_to_canon[i]
        fl = count_flippable_edges(t)
        if n >= 5:
            check(fl >= n - 2, record="flippable", node=i, code=code, count=fl)
        check(len(g.adjacency[i]) <= fl, record="flipdegree", node=i, code=code)
        a, b, c = default_outer_face(t)
        for name, seq, bound in (
            ("wagner", wagner_canonicalize(t, a, b), wagner_bound(n)),
            ("negami", negami_canonicalize(t, (a, b, c) if t.is_face(a, b, c) else (a, c, b)), n * n),
            ("komuro", komuro_canonicalize(t, a, b), komuro_bound(n, t.degree(a), t.degree(b))),
        ):
            end = seq.apply(t)
            check(is_canonical(end) and len(seq) <= bound and len(seq) >= d0,
                  record="canonicalize", name=name, node=i, code=code, length=len(seq), bound=bound)
            note(name, len(seq), bound)
        lb = komuro_canonical_lower_bound(t)
        check(lb <= d0, record="lower_canonical", node=i, code=code, bound=lb, distance=d0)
        if n >= 6:
            s4 = mori_make_4connected(t)
            check(len(s4) <= mori_bound(n), record="mori4c", node=i, code=code, length=len(s4))
            note("mori_make_4connected", len(s4), mori_bound(n))
            sb, ledger = bose_make_4connected(t)
            check(len(sb) <= bose_bound(n) and len(ledger.charge_log) == len(sb),
                  record="bose4c", node=i, code=code, length=len(sb))
            note("bose_make_4connected", len(sb), bose_bound(n))

    nodes = list(range(len(g)))
    if n <= 8:
        pairs = [(i, j) for i in nodes for j in nodes]
    else:
        rng = random.Random(seed)
        k = pair_limit or 200
        pairs = [(rng.choice(nodes), rng.choice(nodes)) for _ in range(k)]
    sharp = 0
    for i, j in pairs:
        t1, t2 = g.nodes[i], g.nodes[j]
        d = g.distances_from(i)[j]
        lb = degree_distance_lower_bound(t1, t2)
        sharp = max(sharp, d - lb)
        check(lb <= d, record="lower_pair", i=i, j=j, bound=lb, distance=d)
        algos = []
        if n >= 7:
            algos.append(("komuro_transform", komuro_transform, komuro_transform_bound(n)))
        if n >= 6:
            algos.append(("mori_transform", mori_transform, mori_transform_bound(n)))
            algos.append(("bose_mori_transform", bose_mori_transform, bose_mori_transform_bound(n)))
        for name, fn, bound in algos:
            seq = fn(t1, t2)
            end = seq.apply(t1).relabel(seq.relabeling)
            ok = end.edge_set() == t2.edge_set() and d <= len(seq) <= bound
            check(ok, record="transform", name=name, i=i, j=j, length=len(seq), bound=bound, distance=d)
            note(name, len(seq), bound)
    for name in lens:
        _lengths_summary(rep, name, lens[name], "stated", bnds[name])
    rep.add(record="lower_bound_gap", max_distance_minus_degree_bound=sharp, status="pass")
    caps = [2 * wagner_bound(n)]
    if n >= 7:
        caps.append(8 * n - 48)
    if n >= 6:
        caps.append(mori_transform_bound(n))
    diam = g.diameter()
    check(diam <= min(caps), record="diameter", value=diam, bound=min(caps), nodes=len(g), edges=len(g.edges))
    return rep
