"""
Residue root systems of parahoric subgroups.

A point of the closed fundamental alcove is given in the fundamental-coweight
basis, so ``alpha_i(x) = x[i]`` and a root with simple-root coefficients ``c``
takes the value ``sum(c_i x_i)``. Facets are named by the set of affine nodes
whose affine simple roots vanish on them (node 0 is ``1 - theta``); for a
product group there is one such set per simple factor, in local numbering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence, Union

from .lattice import IntMatrix, integer_kernel
from .roots import RootSystemData, Weight, positive_roots_from_cartan

__all__ = [
    "FacetNodes", "AlcovePoint", "ParahoricSpec", "GeneralizedLevi", "ValuationTable",
    "iwahori", "hyperspecial", "facet_point", "alcove_coords", "residue_levi",
    "valuation_table", "classify_cartan",
]


@dataclass(frozen=True)
class FacetNodes:
    nodes: tuple[frozenset[int], ...]

    def __post_init__(self):
        raw = self.nodes
        if isinstance(raw, (set, frozenset)) or all(isinstance(n, int) for n in raw):
            raw = (raw,)
        object.__setattr__(self, "nodes", tuple(frozenset(int(n) for n in part) for part in raw))

    def validate(self, rs: RootSystemData) -> None:
        if len(self.nodes) != len(rs.types):
            raise ValueError(
                f"facet lists {len(self.nodes)} node sets but {rs.name} has {len(rs.types)} simple factors")
        for part, t in zip(self.nodes, rs.types):
            bad = [n for n in part if not 0 <= n <= t.rank]
            if bad:
                raise ValueError(f"facet nodes {sorted(bad)} outside 0..{t.rank} for factor {t}")
            if len(part) == t.rank + 1:
                raise ValueError(f"facet for factor {t} contains every affine node; no such facet")

    def as_lists(self) -> list[list[int]]:
        return [sorted(p) for p in self.nodes]


@dataclass(frozen=True)
class AlcovePoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))


@dataclass(frozen=True)
class ParahoricSpec:
    label: str
    spec: Union[FacetNodes, AlcovePoint]


def iwahori(rs: RootSystemData) -> FacetNodes:
    return FacetNodes(tuple(frozenset() for _ in rs.types))


def hyperspecial(rs: RootSystemData) -> FacetNodes:
    return FacetNodes(tuple(frozenset(range(1, t.rank + 1)) for t in rs.types))


def facet_point(rs: RootSystemData, omega: FacetNodes) -> AlcovePoint:
    """
    Canonical point of a facet: affine simple roots in ``omega`` vanish and the
    others (per factor) share one positive value ``1 / sum of their marks``.
    """
    omega = omega if isinstance(omega, FacetNodes) else FacetNodes(omega)
    omega.validate(rs)
    x: list[Fraction] = []
    for (lo, hi), part in zip(rs.factor_slices, omega.nodes):
        marks = (1,) + rs.marks[lo:hi]
        t = Fraction(1, sum(m for i, m in enumerate(marks) if i not in part))
        x.extend(Fraction(0) if i in part else t for i in range(1, hi - lo + 1))
    return AlcovePoint(tuple(x))


def alcove_coords(rs: RootSystemData, p: Union[ParahoricSpec, FacetNodes, AlcovePoint]) -> tuple[Fraction, ...]:
    """Exact coordinates of the point, checked to lie in the closed alcove."""
    spec = p.spec if isinstance(p, ParahoricSpec) else p
    if isinstance(spec, FacetNodes):
        return facet_point(rs, spec).coords
    x = spec.coords
    if len(x) != rs.rank:
        raise ValueError(f"alcove point has {len(x)} coordinates, expected {rs.rank}")
    if any(c < 0 for c in x):
        raise ValueError(f"point {_fmt(x)} has a negative simple-root value; outside the closed alcove")
    for lo, hi in rs.factor_slices:
        if sum(rs.marks[i] * x[i] for i in range(lo, hi)) > 1:
            raise ValueError(f"point {_fmt(x)} has theta(x) > 1; outside the closed alcove")
    return x


def _fmt(x) -> str:
    return "(" + ", ".join(str(c) for c in x) + ")"


def root_value(rs: RootSystemData, idx: int, x: Sequence[Fraction]) -> Fraction:
    return sum((c * xi for c, xi in zip(rs.root_coeffs[idx], x) if c), Fraction(0))


def classify_cartan(cartan: Sequence[Sequence[int]], lengths: Sequence[Fraction]) -> list[str]:
    """
    Dynkin types of the connected components of a Cartan matrix, sorted.

    Identification uses rank, root count and the pattern of root lengths,
    which separates every irreducible type (B2 and C2 coincide and print as B2).
    """
    n = len(cartan)
    seen: set[int] = set()
    names = []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comp.sort()
        sub = [[cartan[i][j] for j in comp] for i in comp]
        k = len(comp)
        count = 2 * len(positive_roots_from_cartan(sub))
        ls = [lengths[i] for i in comp]
        if len(set(ls)) == 1:
            if count == k * (k + 1):
                names.append(("A", k))
            elif k >= 4 and count == 2 * k * (k - 1):
                names.append(("D", k))
            else:
                names.append(("E", {72: 6, 126: 7, 240: 8}[count]))
        elif max(ls) == 3 * min(ls):
            names.append(("G", 2))
        elif k == 2:
            names.append(("B", 2))
        elif k == 4 and count == 48:
            names.append(("F", 4))
        elif sum(1 for x in ls if x == min(ls)) == 1:
            names.append(("B", k))
        else:
            names.append(("C", k))
    return [f"{s}{r}" for s, r in sorted(names)]


@dataclass(frozen=True)
class GeneralizedLevi:
    phi_x: tuple[int, ...]            # indices into rs.roots
    simple_system: tuple[int, ...]    # indices into rs.roots
    levi_type: str
    char_lattice: tuple[Weight, ...]
    base_point: tuple[Fraction, ...]

    @property
    def char_rank(self) -> int:
        return len(self.char_lattice)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_system)


def residue_levi(rs: RootSystemData, p: Union[ParahoricSpec, FacetNodes, AlcovePoint]) -> GeneralizedLevi:
    x = alcove_coords(rs, p)
    key = ("residue_levi", x)
    if key not in rs._memo:
        rs._memo[key] = _residue_levi(rs, x)
    return rs._memo[key]


def _residue_levi(rs: RootSystemData, x: tuple[Fraction, ...]) -> GeneralizedLevi:
    phi = tuple(i for i in range(len(rs.roots)) if root_value(rs, i, x).denominator == 1)
    pos = [i for i in phi if rs.height(i) > 0]
    pos_set = {rs.root_coeffs[i] for i in pos}
    simple = []
    for i in pos:
        c = rs.root_coeffs[i]
        decomposable = any(
            tuple(a - b for a, b in zip(c, rs.root_coeffs[j])) in pos_set
            for j in pos if j != i)
        if not decomposable:
            simple.append(i)
    simple.sort(key=lambda i: (rs.height(i), rs.roots[i]))
    k = len(simple)
    if k:
        sub_cartan = [[rs.coroot_pairing(rs.roots[a], b) for b in simple] for a in simple]
        levi_type = "x".join(classify_cartan(sub_cartan, [rs.root_length2(a) for a in simple]))
        coroot_rows = IntMatrix.from_rows([rs.coroot_coeffs[i] for i in simple], rs.rank)
    else:
        levi_type = "torus"
        coroot_rows = IntMatrix.zeros(0, rs.rank)
    kernel = integer_kernel(coroot_rows)
    return GeneralizedLevi(
        phi_x=phi,
        simple_system=tuple(simple),
        levi_type=levi_type,
        char_lattice=tuple(kernel.row(i) for i in range(kernel.rows)),
        base_point=x,
    )


@dataclass(frozen=True)
class ValuationTable:
    values: tuple[int, ...]   # aligned with rs.roots

    def m(self, rs: RootSystemData, root: Iterable[int]) -> int:
        return self.values[rs.index_of(tuple(root))]


def valuation_table(rs: RootSystemData, p: Union[ParahoricSpec, FacetNodes, AlcovePoint]) -> ValuationTable:
    """``m_r = -floor(r(x))`` for every root r, at the single point x of ``p``."""
    x = alcove_coords(rs, p)
    return ValuationTable(tuple(-floor(root_value(rs, i, x)) for i in range(len(rs.roots))))
