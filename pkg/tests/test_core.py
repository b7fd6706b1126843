import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triflip.core import (
    Disconnected,
    EdgeNotFound,
    FlipRecord,
    FlipSequence,
    NonTriangularFace,
    NotFlippable,
    NotSimple,
    ReplayError,
    Triangulation,
    WrongEdgeCount,
    canonical_code,
    canonical_triangulation,
    count_flippable_edges,
    decode_code,
    flip,
    flippable_edges,
    from_canonical_code,
    icosahedron,
    is_four_connected,
    is_isomorphic,
    isomorphism,
    octahedron,
    random_walk,
    separating_triangles,
    stack_vertex,
    validate,
)
from triflip.flipgraph import enumerate_triangulations

import oracles

K4_ROT = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]


def nx_graph(t: Triangulation) -> nx.Graph:
    g = nx.Graph(t.edges())
    g.add_nodes_from(range(t.n))
    return g


def nx_flippable(t: Triangulation) -> int:
    g = nx_graph(t)
    _, emb = nx.check_planarity(g)
    return sum(1 for x, y in g.edges if not g.has_edge(emb[x][y]["cw"], emb[x][y]["ccw"]))


# --------------------------------------------------------------------------
# validate


def test_validate_k4():
    t = validate(K4_ROT)
    assert t.n == 4 and t.num_edges() == 6 and len(t.faces()) == 4


def test_validate_k4_reversed_rotation():
    rot = [r[:] for r in K4_ROT]
    rot[0].reverse()
    with pytest.raises(NonTriangularFace):
        validate(rot)


def test_validate_octahedron():
    t = validate(octahedron().rot)
    assert t.num_edges() == 12 and len(t.faces()) == 8
    assert t.degrees() == [4] * 6


def test_validate_accepts_mapping():
    assert validate(dict(enumerate(K4_ROT))) == validate(K4_ROT)


@pytest.mark.parametrize(
    "rot, exc",
    [
        ([[1, 1, 2], [0, 2, 0], [0, 1], [0]], NotSimple),
        ([[0, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]], NotSimple),
        ([[1, 2, 3], [0, 2], [0, 1, 3], [0, 2]], WrongEdgeCount),
        ([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 9]], NotSimple),
    ],
)
def test_validate_errors(rot, exc):
    with pytest.raises(exc):
        validate(rot)


def test_validate_disconnected():
    # two K4s side by side: right edge count for n=8 is 18, they have 12
    rot = K4_ROT + [[w + 4 for w in r] for r in K4_ROT]
    with pytest.raises((Disconnected, WrongEdgeCount)):
        validate(rot)


def test_error_names_witness():
    rot = [r[:] for r in K4_ROT]
    rot[0].reverse()
    with pytest.raises(NonTriangularFace) as info:
        validate(rot)
    assert info.value.witness is not None


# --------------------------------------------------------------------------
# canonical triangulation


def test_canonical_n4_is_k4():
    t = canonical_triangulation(4)
    assert t.edge_set() == {(i, j) for i in range(4) for j in range(i + 1, 4)}


def test_canonical_n8_degrees():
    t = canonical_triangulation(8)
    assert t.degree_profile() == [3, 3, 4, 4, 4, 4, 7, 7]
    assert t.degree(0) == t.degree(1) == 7


def test_canonical_n5_degrees():
    # 9 edges, so the degrees sum to 18
    assert sorted(canonical_triangulation(5).degrees(), reverse=True) == [4, 4, 4, 3, 3]


@pytest.mark.parametrize("n", range(4, 30))
def test_canonical_edge_set(n):
    t = canonical_triangulation(n)
    want = {(0, 1)} | {(0, i) for i in range(2, n)} | {(1, i) for i in range(2, n)}
    want |= {(i, i + 1) for i in range(2, n - 1)}
    assert t.edge_set() == want
    validate(t.rot)


def test_canonical_rejects_small():
    with pytest.raises(ValueError):
        canonical_triangulation(3)


# --------------------------------------------------------------------------
# flips


def test_k4_nothing_flippable():
    t = canonical_triangulation(4)
    assert not any(t.is_flippable(x, y) for x, y in t.edges())
    with pytest.raises(NotFlippable):
        t.flip(0, 1)


def test_octahedron_all_flippable():
    t = octahedron()
    assert all(t.is_flippable(x, y) for x, y in t.edges())


def test_delta6_edge01_flippable():
    # apexes of 01 are 2 and 5, which are not adjacent
    t = canonical_triangulation(6)
    assert sorted(t.apexes(0, 1)) == [2, 5]
    assert t.is_flippable(0, 1)


def test_flip_missing_edge():
    with pytest.raises(EdgeNotFound):
        octahedron().is_flippable(0, 0)


def test_flip_octahedron_degrees():
    t = octahedron()
    for x, y in t.edges():
        t2, rec = flip(t, x, y)
        assert sorted(t2.degrees(), reverse=True) == [5, 5, 4, 4, 3, 3]
        assert rec.removed == (x, y)


def test_flip_involution_bit_identical():
    t = random_walk(15, seed=3)
    for x, y in flippable_edges(t):
        u = t.copy()
        rec = u.flip(x, y)
        u.flip(*rec.added)
        assert u.rotation_key() == t.rotation_key()


def test_flip_record_str():
    assert str(FlipRecord((1, 2), (3, 4))) == "remove 1 2, add 3 4"


def test_delta6_one_flip_neighbours():
    t = canonical_triangulation(6)
    codes = {canonical_code(flip(t, *e)[0]) for e in flippable_edges(t)}
    # the two 6-vertex triangulations: itself and the octahedron
    assert len(codes) == 2


@pytest.mark.parametrize(
    "tri, count",
    [
        (canonical_triangulation(4), 0),
        (canonical_triangulation(6), 5),
        (canonical_triangulation(8), 9),
        (octahedron(), 12),
        (icosahedron(), 30),
    ],
)
def test_count_flippable_frozen(tri, count):
    assert count_flippable_edges(tri) == count
    assert nx_flippable(tri) == count


@pytest.mark.parametrize("n", range(5, 10))
def test_flippability_floor_exhaustive(n):
    for t in enumerate_triangulations(n).nodes:
        k = count_flippable_edges(t)
        assert k >= n - 2
        assert k == nx_flippable(t)


def test_sequence_replay_and_reverse():
    src = random_walk(12, seed=1)
    t = src.copy()
    seq = FlipSequence()
    rng = random.Random(0)
    for _ in range(20):
        seq.append(t.flip(*rng.choice(flippable_edges(t))))
    end = seq.apply(src, validate_each=True)
    assert end == t
    assert seq.reversed().apply(end) == src


def test_sequence_replay_error():
    seq = FlipSequence([FlipRecord((0, 1), (2, 3))])
    with pytest.raises(ReplayError):
        seq.apply(canonical_triangulation(4))


@st.composite
def walks(draw):
    n = draw(st.integers(5, 25))
    seed = draw(st.integers(0, 10_000))
    return random_walk(n, steps=draw(st.integers(0, 60)), seed=seed)


@settings(max_examples=60, deadline=None)
@given(walks(), st.integers(0, 10_000))
def test_flip_preserves_invariants(t, k):
    edges = flippable_edges(t)
    x, y = edges[k % len(edges)]
    u, rec = flip(t, x, y)
    validate(u.rot)
    assert len(u.faces()) == 2 * u.n - 4
    assert u.edge_set() == (t.edge_set() - {rec.removed}) | {rec.added}
    back, _ = flip(u, *rec.added)
    assert back == t


# --------------------------------------------------------------------------
# separating triangles


def nx_separating(t: Triangulation) -> set[tuple[int, int, int]]:
    g = nx_graph(t)
    out = set()
    for c in nx.enumerate_all_cliques(g):
        if len(c) == 3:
            rest = g.subgraph(set(g) - set(c))
            if not nx.is_connected(rest):
                out.add(tuple(sorted(c)))
        elif len(c) > 3:
            break
    return out


def test_octahedron_no_separating():
    assert separating_triangles(octahedron()) == []


def test_stacked_face_is_separating():
    base = canonical_triangulation(5)
    face = base.faces()[0]
    t = stack_vertex(base, face)
    assert tuple(sorted(face)) in {s.vertices for s in separating_triangles(t)}


@pytest.mark.parametrize("n", range(5, 10))
def test_separating_matches_networkx(n):
    for t in enumerate_triangulations(n).nodes:
        seps = separating_triangles(t)
        assert {s.vertices for s in seps} == nx_separating(t)
        assert len(seps) <= n - 4
        assert is_four_connected(t) == oracles.node_connectivity_at_least_4(t.edges(), n)
        for s in seps:
            assert 1 <= s.interior_size <= n - 4
            assert s.depth == sum(1 for o in seps if o is not s and o.contains(s))


def test_separating_random_networkx():
    for seed in range(20):
        t = random_walk(18, seed=seed)
        assert {s.vertices for s in separating_triangles(t)} == nx_separating(t)


def test_nested_depths():
    t = canonical_triangulation(8)
    depths = sorted(s.depth for s in separating_triangles(t))
    assert depths == [0, 1, 2, 3]


# --------------------------------------------------------------------------
# canonical codes and isomorphism


def relabeled_randomly(t: Triangulation, seed: int) -> Triangulation:
    perm = list(range(t.n))
    random.Random(seed).shuffle(perm)
    u = t.relabel(perm)
    rng = random.Random(seed + 1)
    for r in u.rot:  # rotate each cyclic order
        k = rng.randrange(len(r))
        r[:] = r[k:] + r[:k]
    return u


@pytest.mark.parametrize("n", [4, 6, 9, 17])
def test_code_relabel_invariant(n):
    t = random_walk(n, seed=n)
    for s in range(5):
        assert canonical_code(relabeled_randomly(t, s)) == canonical_code(t)


def test_code_mirror_invariant():
    for seed in range(10):
        t = random_walk(14, seed=seed)
        assert canonical_code(t.mirror()) == canonical_code(t)


def test_code_separates_six_vertex():
    assert canonical_code(octahedron()) != canonical_code(canonical_triangulation(6))
    assert not is_isomorphic(octahedron(), canonical_triangulation(6))


def test_code_agrees_with_networkx_isomorphism():
    # triangulations are 3-connected, so abstract and embedded isomorphism agree
    ts = [random_walk(9, steps=s, seed=s) for s in range(40)]
    for a in ts[:15]:
        for b in ts[:15]:
            assert is_isomorphic(a, b) == nx.is_isomorphic(nx_graph(a), nx_graph(b))


def test_code_roundtrip_and_large_n():
    for n in (5, 12, 300):
        t = random_walk(n, steps=3 * n, seed=1)
        c = canonical_code(t)
        assert is_isomorphic(from_canonical_code(c), t)
        assert decode_code(c)[0] == n
    assert canonical_code(random_walk(300, steps=10, seed=0))[0] == 0  # wide-value marker


def test_isomorphism_map():
    t = random_walk(11, seed=4)
    u = relabeled_randomly(t, 9)
    phi = isomorphism(t, u)
    assert phi is not None
    assert {tuple(sorted((phi[x], phi[y]))) for x, y in t.edges()} == u.edge_set()
    assert isomorphism(t, octahedron()) is None


def test_flip_unflip_isomorphic():
    t = canonical_triangulation(9)
    x, y = flippable_edges(t)[0]
    u, rec = flip(t, x, y)
    v, _ = flip(u, *rec.added)
    assert is_isomorphic(v, t)


def test_random_walk_deterministic():
    assert random_walk(20, seed=5) == random_walk(20, seed=5)
    assert random_walk(4, seed=1) == canonical_triangulation(4)
