"""Tabulate the flip graphs for small vertex counts.

Run with ``python3 demos/flip_graph_table.py [max_n]``; n = 11 takes
about half a minute.
"""

import sys

from triflip.core import count_flippable_edges, is_four_connected
from triflip.flipgraph import enumerate_triangulations


def main(max_n=10):
    print(" n  nodes  edges  diameter  4-connected  min flippable")
    for n in range(4, max_n + 1):
        g = enumerate_triangulations(n)
        four = sum(1 for t in g.nodes if is_four_connected(t))
        low = min(count_flippable_edges(t) for t in g.nodes)
        print(f"{n:2d} {len(g):6d} {len(g.edges):6d} {g.diameter():9d} {four:12d} {low:14d}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 10)
