"""Remove the separating triangles of the nested-triangle instance and
print where each flip's five coins came from.

Run with ``python3 demos/charging_ledger.py [levels]``.
"""

import sys

from triflip.extremal import bose_lower_bound_instance
from triflip.fourconnect import bose_bound, bose_lower_bound, bose_make_4connected


def main(levels=1):
    t, construction = bose_lower_bound_instance(levels)
    n = t.n
    seq, ledger = bose_make_4connected(t)
    print(f"n={n}, {len(construction)} edge-disjoint separating triangles")
    print(f"flips used: {len(seq)}  (lower {bose_lower_bound(n)}, upper {bose_bound(n)})")
    for rec, line in zip(seq, ledger.dump().splitlines()):
        print(f"  {rec}    {line}")
    spent = sum(1 for v in ledger.coins.values() if v == 0)
    print(f"edges left without a coin: {spent}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
