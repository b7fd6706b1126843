"""Show the Hamiltonian-cycle route to the canonical triangulation on one
random triangulation, and a stacked example with no Hamiltonian cycle.
"""

from triflip.core import is_canonical, random_walk
from triflip.extremal import count_black_components_obstruction, gen_stacked, stacked_black_vertices
from triflip.fourconnect import mori_make_4connected
from triflip.hamilton import decompose, find_hamiltonian_cycle, mori_canonicalize_hamiltonian


def main():
    t = random_walk(16, seed=3)
    s4 = mori_make_4connected(t)
    u = s4.apply(t)
    cycle = find_hamiltonian_cycle(u)
    g1, g2 = decompose(u, cycle)
    print(f"4-connected after {len(s4)} flips; cycle {cycle.cycle}")
    print(f"chords per side: {len(g1.chords)} and {len(g2.chords)}")
    seq = mori_canonicalize_hamiltonian(u, cycle)
    print(f"canonical after {len(seq)} more flips: {is_canonical(seq.apply(u))}")

    for k in (5, 6):
        st = gen_stacked(k)
        ob = count_black_components_obstruction(st, stacked_black_vertices(k))
        found = find_hamiltonian_cycle(st, budget=None)
        print(f"stacked k={k}: n={st.n}, cycle {'found' if found else 'none'}, obstruction {ob}")


if __name__ == "__main__":
    main()
