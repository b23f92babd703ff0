"""Print P/Q, h^vee and the defining-rep Dynkin index for every simple type up to a rank bound."""

import argparse

from parahoric_brauer.dynkin import RepSpec, dynkin_index
from parahoric_brauer.roots import build_root_system, center_dual


def simple_types(max_rank: int) -> list[str]:
    out = []
    for n in range(1, max_rank + 1):
        out.append(f"A{n}")
        if n >= 2:
            out += [f"B{n}", f"C{n}"]
        if n >= 4:
            out.append(f"D{n}")
    out += [t for t, r in [("G2", 2), ("F4", 4), ("E6", 6), ("E7", 7), ("E8", 8)] if r <= max_rank]
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-rank", type=int, default=8)
    args = ap.parse_args()
    print(f"{'type':<5} {'|roots|':>7} {'P/Q':<10} {'h^vee':>5} {'index(adjoint)':>14}")
    for name in simple_types(args.max_rank):
        rs = build_root_system(name)
        pq = center_dual(rs).group
        hvee = rs.dual_coxeter_number
        adj = dynkin_index(RepSpec(rs.highest_root, rs))
        print(f"{name:<5} {len(rs.roots):>7} {str(pq):<10} {hvee:>5} {adj:>14}")


if __name__ == "__main__":
    main()
