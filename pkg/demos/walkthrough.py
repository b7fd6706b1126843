"""Flip two random triangulations into each other with every method.

Run with ``python3 demos/walkthrough.py [n] [seed]``.
"""

import sys

from triflip.canonical import komuro_transform, komuro_transform_bound
from triflip.core import random_walk
from triflip.flipgraph import distance
from triflip.hamilton import (
    bose_mori_transform,
    bose_mori_transform_bound,
    mori_transform,
    mori_transform_bound,
)


def main(n=10, seed=0):
    t1 = random_walk(n, seed=seed)
    t2 = random_walk(n, seed=seed + 1)
    print(f"n={n}  degrees {t1.degree_profile()} -> {t2.degree_profile()}")
    if n <= 11:
        print(f"exact flip distance: {distance(t1, t2)}")
    for name, fn, bound in (
        ("komuro", komuro_transform, komuro_transform_bound(n)),
        ("mori", mori_transform, mori_transform_bound(n)),
        ("bose-mori", bose_mori_transform, bose_mori_transform_bound(n)),
    ):
        seq = fn(t1, t2)
        # the sequence ends at t2 up to the stored relabelling
        assert seq.apply(t1).relabel(seq.relabeling).edge_set() == t2.edge_set()
        print(f"{name:10s} {len(seq):4d} flips (bound {bound})")


if __name__ == "__main__":
    args = [int(a) for a in sys.argv[1:3]]
    main(*args)
