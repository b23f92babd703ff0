"""Print Schubert cell counts by length for each parabolic of one simple type."""

import argparse
import itertools

from parahoric_brauer.affine_weyl import grassmannian_series
from parahoric_brauer.roots import build_root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("group", help="simple type such as A1 or G2")
    ap.add_argument("--length", type=int, default=8)
    args = ap.parse_args()
    rs = build_root_system(args.group)
    for k in range(rs.rank + 1):
        for omega in itertools.combinations(range(rs.rank + 1), k):
            table = grassmannian_series(rs, set(omega), args.length)
            counts = " ".join(str(c) for c in table.poincare)
            print(f"Omega={sorted(omega)!s:<14} {counts}")


if __name__ == "__main__":
    main()
