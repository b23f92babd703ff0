"""Survey every facet of one simple type: residue Levi type, character rank and one-point Brauer group."""

import argparse
import itertools

from parahoric_brauer.brauer import brauer_group, facet_setup
from parahoric_brauer.parahoric import FacetNodes, residue_levi
from parahoric_brauer.roots import build_root_system


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("group", help="simple type such as A3 or C2")
    ap.add_argument("--genus", type=int, default=3)
    args = ap.parse_args()
    rs = build_root_system(args.group)
    nodes = range(rs.rank + 1)
    print(f"{'facet':<16} {'Levi':<12} {'char rank':>9}  Br")
    for k in range(rs.rank + 1):
        for omega in itertools.combinations(nodes, k):
            f = frozenset(omega)
            lv = residue_levi(rs, FacetNodes(f))
            br = brauer_group(facet_setup(args.group, args.genus, [f])).brauer
            print(f"{str(sorted(f)):<16} {lv.levi_type:<12} {lv.char_rank:>9}  {br}")


if __name__ == "__main__":
    main()
