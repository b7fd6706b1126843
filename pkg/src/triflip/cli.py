"""Command-line driver.

Exit status: 0 on success, 1 for input or format errors, 2 when a
verification fails (an emitted sequence does not replay, a bound is
broken, or a verification report contains failures).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import canonical as cn
from . import extremal as ex
from . import flipgraph as fg
from . import fourconnect as fc
from . import hamilton as hm
from .core import (
    FlipSequence,
    ReplayError,
    Triangulation,
    TriangulationError,
    canonical_triangulation,
    count_flippable_edges,
    default_outer_face,
    is_four_connected,
    random_walk,
    separating_triangles,
)
from .io import FormatError, export_dot, read_triangulations, to_text, write_planar_code


class VerificationFailure(Exception):
    pass


# --------------------------------------------------------------------------
# helpers

def _read(path: str) -> Triangulation:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    graphs = read_triangulations(data)
    if len(graphs) != 1:
        raise FormatError(f"{path}: expected one triangulation, found {len(graphs)}")
    return graphs[0]


def _write(data: bytes, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(data)


def _print_sequence(seq: FlipSequence) -> None:
    for rec in seq:
        print(rec)


def _check_replay(seq: FlipSequence, src: Triangulation, dst: Triangulation | None = None) -> Triangulation:
    """Replay ``seq`` on ``src``; with ``dst`` also check the relabelled end."""
    try:
        end = seq.apply(src)
    except ReplayError as exc:
        raise VerificationFailure(f"sequence does not replay: {exc}") from exc
    if dst is not None:
        if seq.relabeling is None:
            raise VerificationFailure("transform produced no relabeling certificate")
        if end.relabel(seq.relabeling).edge_set() != dst.edge_set():
            raise VerificationFailure("sequence does not end at the target")
    return end


def _canonical_pair(tri: Triangulation, method: str) -> FlipSequence:
    a, b, c = default_outer_face(tri)
    if method == "wagner":
        return cn.wagner_canonicalize(tri, a, b)
    face = (a, b, c) if tri.is_face(a, b, c) else (a, c, b)
    return cn.negami_canonicalize(tri, face)


def _transform(method: str, t1: Triangulation, t2: Triangulation) -> tuple[FlipSequence, int | None, str]:
    n = t1.n
    if t1.n != t2.n:
        raise FormatError("the two triangulations have different vertex counts")
    if method in ("wagner", "negami"):
        seq = cn.join_via_canonical(t1, _canonical_pair(t1, method), t2, _canonical_pair(t2, method))
        if method == "wagner":
            return seq, 2 * cn.wagner_bound(n), "2(n^2-7n+12)"
        return seq, 2 * n * n, "2n^2"
    if method == "komuro":
        return cn.komuro_transform(t1, t2), cn.komuro_transform_bound(n), "8n-54 (n>=13), 8n-48 (n>=7)"
    if method == "mori":
        return hm.mori_transform(t1, t2), hm.mori_transform_bound(n), "6n-30"
    return hm.bose_mori_transform(t1, t2), hm.bose_mori_transform_bound(n), "2(floor((3n-6)/5)+2n-10)"


# --------------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "canonical":
        tri = canonical_triangulation(args.n)
    elif kind == "stacked":
        tri = ex.gen_stacked(args.k)
    elif kind == "bose-lb":
        tri = ex.gen_bose_lower_bound(args.levels)
    elif kind == "maxdeg6":
        tri = ex.gen_max_degree_6(args.levels)
    else:
        tri = random_walk(args.n, steps=args.steps, seed=args.seed)
    if args.text:
        _write(to_text(tri).encode("ascii"), args.output)
    else:
        _write(write_planar_code([tri]), args.output)
    return 0


def cmd_transform(args) -> int:
    t1, t2 = _read(args.a), _read(args.b)
    seq, bound, name = _transform(args.method, t1, t2)
    _check_replay(seq, t1, t2)
    if bound is not None and len(seq) > bound:
        raise VerificationFailure(f"length {len(seq)} exceeds bound {bound}")
    _print_sequence(seq)
    print(f"# method={args.method} n={t1.n} length={len(seq)} bound={bound} bound_formula={name}")
    if args.method == "bose-mori":
        print(f"# reference_bound={hm.reference_pair_bound(t1.n):.1f}")
    if args.dot:
        Path(args.dot).write_text(export_dot(seq, t1))
    return 0


def cmd_stats(args) -> int:
    tri = _read(args.file)
    n = tri.n
    print(f"n={n}")
    print(f"edges={tri.num_edges()}")
    print(f"degree_profile=({','.join(map(str, tri.degree_profile()))})")
    print(f"flippable_edges={count_flippable_edges(tri)}")
    seps = separating_triangles(tri)
    print(f"separating_triangles={len(seps)}")
    for s in seps:
        print(f"  triangle={s.vertices} depth={s.depth} interior={s.interior_size}")
    print(f"four_connected={'yes' if is_four_connected(tri) else 'no'}")
    try:
        cyc = hm.find_hamiltonian_cycle(tri, budget=args.budget)
        ham = "yes" if cyc is not None else "no"
    except hm.BudgetExceeded:
        ham = "unknown"
    print(f"hamiltonian={ham}")
    return 0


def cmd_fourconnect(args) -> int:
    tri = _read(args.file)
    n = tri.n
    if args.method == "mori":
        seq, bound = fc.mori_make_4connected(tri), fc.mori_bound(n)
        ledger = None
    else:
        seq, ledger = fc.bose_make_4connected(tri)
        bound = fc.bose_bound(n)
    end = _check_replay(seq, tri)
    if not is_four_connected(end):
        raise VerificationFailure("result still has a separating triangle")
    if len(seq) > bound:
        raise VerificationFailure(f"length {len(seq)} exceeds bound {bound}")
    _print_sequence(seq)
    print(f"# method={args.method} n={n} length={len(seq)} bound={bound}")
    if ledger is not None:
        for line in ledger.dump().splitlines():
            print(f"# ledger {line}")
    return 0


def cmd_explore(args) -> int:
    if not 4 <= args.n <= fg.N_MAX:
        raise FormatError(f"--n must be in 4..{fg.N_MAX}")
    if args.what == "count":
        g = fg.enumerate_triangulations(args.n, args.cache)
        print(f"n={args.n} nodes={len(g)} edges={len(g.edges)} connected={g.is_connected()}")
        return 0
    if args.what == "diameter":
        print(f"n={args.n} diameter={fg.diameter(args.n, args.cache)}")
        return 0
    rep = fg.verify_bounds(args.n, pair_limit=args.pairs, seed=args.seed, cache_dir=args.cache)
    sys.stdout.write(rep.to_text())
    return 0 if rep.ok else 2


def cmd_distance(args) -> int:
    t1, t2 = _read(args.a), _read(args.b)
    if t1.n != t2.n:
        raise FormatError("the two triangulations have different vertex counts")
    if t1.n > fg.N_MAX:
        raise FormatError(f"exact distance needs n <= {fg.N_MAX}")
    d = fg.distance(t1, t2, args.cache)
    print(f"distance={d}")
    print(f"degree_distance_lower_bound={ex.degree_distance_lower_bound(t1, t2)}")
    for method in ("wagner", "negami", "komuro", "mori", "bose-mori"):
        if method == "komuro" and t1.n < 7 or method in ("mori", "bose-mori") and t1.n < 6:
            continue
        seq, _, _ = _transform(method, t1, t2)
        _check_replay(seq, t1, t2)
        if len(seq) < d:
            raise VerificationFailure(f"{method} length {len(seq)} is below the exact distance")
        print(f"{method}={len(seq)}")
    return 0


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triflip", description="Edge flips in planar triangulations.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a triangulation (planar_code on stdout)")
    g.add_argument("kind", choices=["canonical", "stacked", "bose-lb", "maxdeg6", "random-walk"])
    g.add_argument("--n", type=int, default=8, help="vertex count (canonical, random-walk)")
    g.add_argument("--k", type=int, default=5, help="base size for stacked")
    g.add_argument("--levels", type=int, default=1, help="recursion depth (bose-lb, maxdeg6)")
    g.add_argument("--steps", type=int, default=None, help="random flips (default 10n)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--text", action="store_true", help="write the text format instead")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("transform", help="flip sequence from A to B")
    t.add_argument("--method", required=True, choices=["wagner", "negami", "komuro", "mori", "bose-mori"])
    t.add_argument("--dot", default=None, help="also write the sequence as DOT")
    t.add_argument("--seed", type=int, default=0, help="accepted for uniformity; output is deterministic")
    t.add_argument("a")
    t.add_argument("b")
    t.set_defaults(func=cmd_transform)

    s = sub.add_parser("stats", help="summary of one triangulation")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--budget", type=int, default=200_000, help="Hamiltonian search nodes")
    s.set_defaults(func=cmd_stats)

    f = sub.add_parser("fourconnect", help="remove all separating triangles")
    f.add_argument("--method", required=True, choices=["mori", "bose"])
    f.add_argument("file")
    f.set_defaults(func=cmd_fourconnect)

    e = sub.add_parser("explore", help="exhaustive flip graph for small n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("what", choices=["count", "diameter", "verify"])
    e.add_argument("--cache", default=None, help="cache directory")
    e.add_argument("--pairs", type=int, default=None, help="sampled pairs above n = 8")
    e.add_argument("--seed", type=int, default=0)
    e.set_defaults(func=cmd_explore)

    d = sub.add_parser("distance", help="exact distance and each algorithm's length")
    d.add_argument("a")
    d.add_argument("b")
    d.add_argument("--cache", default=None)
    d.set_defaults(func=cmd_distance)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, TriangulationError, cn.PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (VerificationFailure, ReplayError, AssertionError, cn.BoundExceeded) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
