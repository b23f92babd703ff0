"""
Root data for semisimple types A-G in Bourbaki numbering.

Weights are integer vectors in the fundamental-weight basis, so a weight's
i-th coordinate is its pairing with the i-th simple coroot. Roots are stored
the same way. The invariant form is normalized per simple factor so that long
roots have squared length 2. The tables list squared lengths and Dynkin edges;
an edge between simple roots i and j has ``(alpha_i, alpha_j) = -max(|alpha_i|^2, |alpha_j|^2) / 2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import prod
from typing import Sequence, Union

from .lattice import (
    Cokernel, FiniteAbelianGroup, GroupElement, IntMatrix,
    group_from_relations, subgroup_generated,
)

Weight = tuple[int, ...]

SERIES = "ABCDEFG"

__all__ = [
    "Weight", "SimpleType", "GroupSpec", "RootSystemData",
    "build_root_system", "center_dual", "fundamental_group",
    "weyl_dimension", "pairing", "form", "positive_roots_from_cartan",
]


@dataclass(frozen=True, order=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self):
        s, n = self.series, self.rank
        ok = {
            "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 2,
            "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
        }.get(s, False)
        if not isinstance(n, int) or not ok:
            raise ValueError(f"invalid simple type {s}{n}")

    @classmethod
    def parse(cls, text: str) -> SimpleType:
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse simple type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


ISOGENIES = ("simply_connected", "adjoint", "quotient_by")


@dataclass(frozen=True)
class GroupSpec:
    """
    A semisimple group: its simple factors plus an isogeny class.

    For ``isogeny="quotient_by"``, ``quotient_gens`` are elements of the center
    written in the invariant-factor coordinates of ``center_dual`` (the center
    and its character group share those invariant factors).
    """
    factors: tuple[SimpleType, ...]
    isogeny: str = "simply_connected"
    quotient_gens: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        factors = tuple(SimpleType.parse(f) if isinstance(f, str) else f for f in self.factors)
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "quotient_gens", tuple(tuple(g) for g in self.quotient_gens))
        if not factors:
            raise ValueError("a group needs at least one simple factor")
        if self.isogeny not in ISOGENIES:
            raise ValueError(f"unknown isogeny {self.isogeny!r}")
        if self.quotient_gens and self.isogeny != "quotient_by":
            raise ValueError("quotient_gens only make sense with isogeny='quotient_by'")

    @classmethod
    def of(cls, *names: str, isogeny: str = "simply_connected", quotient_gens=()) -> GroupSpec:
        return cls(tuple(SimpleType.parse(n) for n in names), isogeny, tuple(quotient_gens))

    @property
    def is_simply_connected(self) -> bool:
        if self.isogeny == "quotient_by":
            return fundamental_group(self).is_trivial()
        return self.isogeny == "simply_connected"

    def simply_connected_cover(self) -> GroupSpec:
        return GroupSpec(self.factors)

    def __str__(self) -> str:
        name = "x".join(str(f) for f in self.factors)
        return name if self.isogeny == "simply_connected" else f"{name}/{self.isogeny}"


def _dynkin_data(t: SimpleType) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of the simple roots and the (0-based) Dynkin edges."""
    n = t.rank
    one, two = Fraction(1), Fraction(2)
    chain = [(i, i + 1) for i in range(n - 1)]
    if t.series == "A":
        return [two] * n, chain
    if t.series == "B":
        return [two] * (n - 1) + [one], chain
    if t.series == "C":
        return [one] * (n - 1) + [two], chain
    if t.series == "D":
        return [two] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if t.series == "E":
        return [two] * n, [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    if t.series == "F":
        return [two, two, one, one], chain
    if t.series == "G":
        return [Fraction(2, 3), two], [(0, 1)]
    raise AssertionError(t)


def positive_roots_from_cartan(cartan: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """
    Positive roots as simple-root coefficient vectors, by root strings.

    ``cartan[i][j]`` is the pairing of simple root i with simple coroot j.
    """
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    out = list(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                p = 0
                while True:
                    down = list(beta)
                    down[i] -= p + 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - sum(beta[k] * cartan[k][i] for k in range(n))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
                        out.append(up)
        layer = nxt
    return out


def _rational_inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True, eq=False)
class RootSystemData:
    types: tuple[SimpleType, ...]
    rank: int
    cartan: IntMatrix
    simple_lengths: tuple[Fraction, ...]
    roots: tuple[Weight, ...]
    root_coeffs: tuple[tuple[int, ...], ...]
    coroot_coeffs: tuple[tuple[int, ...], ...]
    highest_roots: tuple[Weight, ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    dual_coxeter_numbers: tuple[int, ...]
    weight_form: tuple[tuple[Fraction, ...], ...]
    factor_slices: tuple[tuple[int, int], ...]
    _root_index: dict = field(repr=False, default_factory=dict)
    _memo: dict = field(repr=False, default_factory=dict)   # derived data keyed by (kind, args)

    @property
    def is_simple(self) -> bool:
        return len(self.types) == 1

    def _require_simple(self, what: str):
        if not self.is_simple:
            raise ValueError(f"{what} is only defined for a simple type, got {self.name}")

    @property
    def name(self) -> str:
        return "x".join(str(t) for t in self.types)

    @property
    def highest_root(self) -> Weight:
        self._require_simple("highest_root")
        return self.highest_roots[0]

    @property
    def dual_coxeter_number(self) -> int:
        self._require_simple("dual_coxeter_number")
        return self.dual_coxeter_numbers[0]

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(self.cartan.row(i) for i in range(self.rank))

    @property
    def weyl_vector(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def positive_indices(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.root_coeffs) if sum(c) > 0)

    @property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(self.roots[i] for i in self.positive_indices)

    @cached_property
    def cartan_inverse(self) -> list[list[Fraction]]:
        return _rational_inverse([[Fraction(x) for x in self.cartan.row(i)] for i in range(self.rank)])

    def root_coordinates(self, weight: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients of ``weight`` in the basis of simple roots."""
        inv = self.cartan_inverse
        return tuple(sum((weight[j] * inv[j][i] for j in range(self.rank)), Fraction(0))
                     for i in range(self.rank))

    def height(self, idx: int) -> int:
        return sum(self.root_coeffs[idx])

    def index_of(self, root: Sequence[int]) -> int:
        return self._root_index[tuple(root)]

    def is_root(self, vec: Sequence[int]) -> bool:
        return tuple(vec) in self._root_index

    def factor_of_root(self, idx: int) -> int:
        c = self.root_coeffs[idx]
        return next(k for k, (lo, hi) in enumerate(self.factor_slices) if any(c[lo:hi]))

    def root_length2(self, idx: int) -> Fraction:
        scaled = _scaled_lengths(self.simple_lengths)
        return Fraction(_length2_times_12(self.root_coeffs[idx], self.roots[idx], scaled), 12)

    def coroot_pairing(self, weight: Sequence[int], idx: int) -> int:
        """``<weight, alpha^vee>`` for the root with index ``idx``."""
        return sum(a * b for a, b in zip(weight, self.coroot_coeffs[idx]))

    def check_weight(self, weight: Sequence[int]) -> Weight:
        w = tuple(weight)
        if len(w) != self.rank or not all(isinstance(x, int) for x in w):
            raise ValueError(f"weight {weight!r} is not an integer vector of length {self.rank}")
        return w


def _scaled_lengths(lengths: Sequence[Fraction]) -> list[int]:
    # every squared length is a multiple of 1/3 (G2) or 1 (others); 6 clears both
    return [int(6 * x) for x in lengths]


def _length2_times_12(coeffs, weight, scaled) -> int:
    # (beta, beta) = sum_i c_i (alpha_i, beta) = sum_i c_i |alpha_i|^2 / 2 * <beta, alpha_i^vee>
    return sum(c * l * w for c, l, w in zip(coeffs, scaled, weight) if c)


def build_root_system(spec: Union[GroupSpec, SimpleType, str, Sequence]) -> RootSystemData:
    """Tabulate the root data of the simply connected form of ``spec``."""
    if isinstance(spec, GroupSpec):
        types = spec.factors
    elif isinstance(spec, SimpleType):
        types = (spec,)
    elif isinstance(spec, str):
        types = tuple(SimpleType.parse(s) for s in spec.split("x"))
    else:
        types = tuple(SimpleType.parse(s) if isinstance(s, str) else s for s in spec)
    # D2 is not simple: split it so every factor has its own highest root
    types = tuple(u for t in types
                  for u in ((SimpleType("A", 1),) * 2 if t == SimpleType("D", 2) else (t,)))
    return _build(types)


@lru_cache(maxsize=None)
def _build(types: tuple[SimpleType, ...]) -> RootSystemData:
    rank = sum(t.rank for t in types)
    cartan = [[0] * rank for _ in range(rank)]
    lengths: list[Fraction] = []
    slices = []
    pos_coeffs: list[tuple[int, ...]] = []
    highest, marks, comarks, hvees = [], [], [], []
    off = 0
    for t in types:
        n = t.rank
        ls, edges = _dynkin_data(t)
        b = [[ls[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        for i, j in edges:
            b[i][j] = b[j][i] = -max(ls[i], ls[j]) / 2
        local = [[int(2 * b[i][j] / b[j][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                cartan[off + i][off + j] = local[i][j]
        pos = positive_roots_from_cartan(local)
        top = max(pos, key=lambda c: (sum(c), c))
        pad = lambda c: (0,) * off + tuple(c) + (0,) * (rank - off - n)  # noqa: E731
        pos_coeffs.extend(pad(c) for c in pos)
        a_vee = [top[i] * ls[i] / 2 for i in range(n)]
        if any(x.denominator != 1 for x in a_vee):
            raise AssertionError(f"non-integral comarks for {t}")
        marks.extend(top)
        comarks.extend(int(x) for x in a_vee)
        hvees.append(1 + sum(int(x) for x in a_vee))
        highest.append(pad(top))
        lengths.extend(ls)
        slices.append((off, off + n))
        off += n
    cm = IntMatrix.from_rows(cartan, rank) if rank else IntMatrix.zeros(0, 0)

    def to_weight(c):
        return tuple(sum(c[i] * cartan[i][j] for i in range(rank)) for j in range(rank))

    all_coeffs = pos_coeffs + [tuple(-x for x in c) for c in pos_coeffs]
    entries = sorted(((sum(c), to_weight(c), c) for c in all_coeffs))
    roots = tuple(e[1] for e in entries)
    coeffs = tuple(e[2] for e in entries)
    coroots = []
    scaled = _scaled_lengths(lengths)
    for c, w in zip(coeffs, roots):
        # beta^vee = sum_i c_i |alpha_i|^2 / |beta|^2 alpha_i^vee
        l2 = _length2_times_12(c, w, scaled)
        cv = [divmod(2 * c[i] * scaled[i], l2) for i in range(rank)]
        if any(r for _, r in cv):
            raise AssertionError("non-integral coroot")
        coroots.append(tuple(q for q, _ in cv))
    # (omega_i, omega_j) = (C^{-1})_{ji} |alpha_i|^2 / 2
    inv = _rational_inverse([[Fraction(x) for x in row] for row in cartan])
    wf = tuple(tuple(inv[j][i] * lengths[i] / 2 for j in range(rank)) for i in range(rank))
    rs = RootSystemData(
        types=types, rank=rank, cartan=cm, simple_lengths=tuple(lengths),
        roots=roots, root_coeffs=coeffs, coroot_coeffs=tuple(coroots),
        highest_roots=tuple(to_weight(h) for h in highest),
        marks=tuple(marks), comarks=tuple(comarks), dual_coxeter_numbers=tuple(hvees),
        weight_form=wf, factor_slices=tuple(slices),
    )
    rs._root_index.update({r: i for i, r in enumerate(roots)})
    return rs


def center_dual(rs: RootSystemData) -> Cokernel:
    """``Hom(Z_G, C^*) = P/Q`` for the simply connected group, with ``P -> P/Q``."""
    key = ("center_dual",)
    if key not in rs._memo:
        rs._memo[key] = group_from_relations(rs.cartan)
    return rs._memo[key]


def fundamental_group(spec: GroupSpec) -> FiniteAbelianGroup:
    if spec.isogeny == "simply_connected":
        return FiniteAbelianGroup.trivial()
    center = center_dual(build_root_system(spec)).group
    if spec.isogeny == "adjoint":
        return center
    try:
        gens = [center.element(g) for g in spec.quotient_gens]
    except ValueError as exc:
        raise ValueError(f"quotient_by generator is not an element of the center {center}: {exc}") from None
    return subgroup_generated(center, gens)


def pairing(rs: RootSystemData, weight: Sequence[int], coroot: int) -> int:
    """``<weight, alpha^vee>`` where ``coroot`` indexes ``rs.roots``."""
    weight = rs.check_weight(weight)
    if not 0 <= coroot < len(rs.roots):
        raise IndexError(f"root index {coroot} out of range")
    return rs.coroot_pairing(weight, coroot)


def form(rs: RootSystemData, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
    """Invariant form with ``(theta, theta) = 2`` on every simple factor."""
    lam, mu = rs.check_weight(lam), rs.check_weight(mu)
    wf = rs.weight_form
    return sum((lam[i] * mu[j] * wf[i][j] for i in range(rs.rank) for j in range(rs.rank)
                if lam[i] and mu[j]), Fraction(0))


def weyl_dimension(rs: RootSystemData, lam: Sequence[int]) -> int:
    lam = rs.check_weight(lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} is not dominant")
    shifted = tuple(x + 1 for x in lam)
    num = prod(rs.coroot_pairing(shifted, i) for i in rs.positive_indices)
    den = prod(rs.coroot_pairing(rs.weyl_vector, i) for i in rs.positive_indices)
    q, r = divmod(num, den)
    if r:
        raise AssertionError(f"non-integral Weyl dimension {num}/{den}")
    return q
