"""
Integer matrices, Hermite/Smith normal forms and finite abelian groups.

Everything here is exact: Python ints throughout, no machine-word fast paths.
Matrices are row-major and act on row vectors, so the cokernel of a relation
matrix is ``Z^cols / rowspan``.

>>> group_from_relations(IntMatrix.from_rows([[2, -1], [-1, 2]])).group
FiniteAbelianGroup(invariant_factors=(3,), free_rank=0)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "IntMatrix", "FiniteAbelianGroup", "GroupElement", "Cokernel",
    "hnf", "snf", "integer_kernel", "group_from_relations",
    "quotient_by_subgroup", "quotient_map", "subgroup_generated",
    "exterior_square", "direct_sum",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")
        if not all(isinstance(e, int) for e in self.entries):
            raise TypeError("IntMatrix entries must be int")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(int(e) for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> IntMatrix:
        n = len(diag)
        return cls(n, n, tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.transpose().row(j) for j in range(other.cols)]
        return IntMatrix(self.rows, other.cols, tuple(
            sum(a * b for a, b in zip(self.row(i), c))
            for i in range(self.rows) for c in cols))

    def det(self) -> int:
        """Fraction-free (Bareiss) determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """
    Row-style Hermite normal form: returns ``(h, u)`` with ``h = u @ m``.

    ``u`` is unimodular, ``h`` is in row echelon form with positive pivots and
    the entries above each pivot reduced into ``[0, pivot)``. Zero rows sink to
    the bottom.
    """
    a = m.tolist()
    u = _identity_rows(m.rows)
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        while True:
            nonzero = [i for i in range(r, m.rows) if a[i][c] != 0]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: (abs(a[i][c]), i))
            a[r], a[p] = a[p], a[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m.rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return IntMatrix.from_rows(a, m.cols), IntMatrix.from_rows(u, m.rows)


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form: returns ``(s, u, v)`` with ``s = u @ m @ v``.

    ``s`` is diagonal with nonnegative entries ``s_1 | s_2 | ...`` (zeros last),
    ``u`` and ``v`` are unimodular. Pivot is the smallest nonzero absolute value
    in the active block, ties broken by lowest (row, col).
    """
    a = m.tolist()
    nr, nc = m.rows, m.cols
    u = _identity_rows(nr)
    v = _identity_rows(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(nr, nc)):
        while True:
            cands = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not cands:
                break
            _, pi, pj = min(cands)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if all(a[i][j] == 0 for i in range(t, nr) for j in range(t, nc)):
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return (IntMatrix.from_rows(a, nc), IntMatrix.from_rows(u, nr), IntMatrix.from_rows(v, nc))


def integer_kernel(m: IntMatrix) -> IntMatrix:
    """HNF-reduced basis (as rows) of ``{x in Z^cols : m @ x = 0}``."""
    h, u = hnf(m.transpose())
    basis = [list(u.row(i)) for i in range(h.rows) if not any(h.row(i))]
    if not basis:
        return IntMatrix.zeros(0, m.cols)
    reduced, _ = hnf(IntMatrix.from_rows(basis, m.cols))
    return IntMatrix.from_rows([r for r in reduced.tolist() if any(r)], m.cols)


@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d_1 + ... + Z/d_k + Z^free_rank`` with ``d_1 | d_2 | ... | d_k`` and every ``d_i >= 2``."""
    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        d = self.invariant_factors
        if any(x < 2 for x in d):
            raise ValueError(f"invariant factors must be >= 2, got {d}")
        if any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {d}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls(())

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> FiniteAbelianGroup:
        """Normalize an arbitrary direct sum of cyclic groups (0 means Z)."""
        orders = list(orders)
        if not orders:
            return cls(())
        s, _, _ = snf(IntMatrix.diagonal(orders))
        diag = [s[i, i] for i in range(len(orders))]
        return cls(tuple(x for x in diag if x > 1), sum(1 for x in diag if x == 0))

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    def order(self) -> int:
        if not self.is_finite:
            raise ValueError("infinite group has no finite order")
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors and self.free_rank == 0

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.ngens)

    def element(self, coords: Sequence[int]) -> GroupElement:
        """Validate ``coords`` as an element; torsion coordinates must lie in ``[0, d_i)``."""
        coords = tuple(coords)
        if len(coords) != self.ngens:
            raise ValueError(f"element {coords} has {len(coords)} coordinates, expected {self.ngens}")
        for c, d in zip(coords, self.invariant_factors):
            if not isinstance(c, int) or not 0 <= c < d:
                raise ValueError(f"coordinate {c!r} out of range [0, {d}) in {coords}")
        return GroupElement(coords)

    def reduce(self, coords: Sequence[int]) -> GroupElement:
        k = len(self.invariant_factors)
        coords = tuple(coords)
        if len(coords) != self.ngens:
            raise ValueError(f"vector {coords} has wrong length for {self}")
        return GroupElement(tuple(c % d for c, d in zip(coords, self.invariant_factors)) + coords[k:])

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.reduce([a + b for a, b in zip(x.coords, y.coords)])

    def scale(self, n: int, x: GroupElement) -> GroupElement:
        return self.reduce([n * a for a in x.coords])

    def element_order(self, x: GroupElement) -> int:
        k = len(self.invariant_factors)
        if any(x.coords[k:]):
            raise ValueError("element of infinite order")
        o = 1
        for c, d in zip(x.coords, self.invariant_factors):
            o = o * (d // gcd(c, d)) // gcd(o, d // gcd(c, d))
        return o

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic coordinate order."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for c in itertools.product(*(range(d) for d in self.invariant_factors)):
            yield GroupElement(c)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


class Cokernel(NamedTuple):
    """A cokernel ``Z^n / R`` together with the images of the standard generators."""
    group: FiniteAbelianGroup
    generator_images: tuple[GroupElement, ...]

    def image(self, vec: Sequence[int]) -> GroupElement:
        if len(vec) != len(self.generator_images):
            raise ValueError(f"vector of length {len(vec)}, expected {len(self.generator_images)}")
        total = [0] * self.group.ngens
        for a, g in zip(vec, self.generator_images):
            if a:
                total = [t + a * c for t, c in zip(total, g.coords)]
        return self.group.reduce(total)


def group_from_relations(rel: IntMatrix) -> Cokernel:
    """
    Cokernel of ``rel`` (rows are relations among ``rel.cols`` generators).

    Each torsion coordinate is rescaled by a unit so that the first generator
    with a unit coordinate there maps to 1; this pins e.g. omega_1 -> 1 in P/Q
    for type A without changing the group.
    """
    n = rel.cols
    s, _, v = snf(rel)
    diag = [s[i, i] for i in range(min(s.rows, n))] + [0] * max(0, n - s.rows)
    keep = [i for i, d in enumerate(diag) if d != 1]
    torsion = [i for i in keep if diag[i] > 1]
    free = [i for i in keep if diag[i] == 0]
    group = FiniteAbelianGroup(tuple(diag[i] for i in torsion), len(free))
    images = [[v[j, i] for i in torsion + free] for j in range(n)]
    for k, i in enumerate(torsion):
        d = diag[i]
        for img in images:
            if gcd(img[k], d) == 1:
                unit = pow(img[k], -1, d)
                for other in images:
                    other[k] *= unit
                break
    return Cokernel(group, tuple(group.reduce(img) for img in images))


def _check_elements(g: FiniteAbelianGroup, gens: Iterable[GroupElement]) -> list[GroupElement]:
    out = []
    for x in gens:
        coords = x.coords if isinstance(x, GroupElement) else tuple(x)
        out.append(g.element(coords))
    return out


def _quotient_relations(g: FiniteAbelianGroup, gens: list[GroupElement]) -> IntMatrix:
    n = g.ngens
    rows = []
    for i, d in enumerate(g.invariant_factors):
        row = [0] * n
        row[i] = d
        rows.append(row)
    rows.extend(list(x.coords) for x in gens)
    return IntMatrix.from_rows(rows, n)


def quotient_map(g: FiniteAbelianGroup, gens: Iterable[GroupElement]) -> Cokernel:
    """``g / <gens>`` with the images of g's coordinate generators."""
    return group_from_relations(_quotient_relations(g, _check_elements(g, gens)))


def quotient_by_subgroup(g: FiniteAbelianGroup, gens: Iterable[GroupElement]) -> FiniteAbelianGroup:
    return quotient_map(g, gens).group


def subgroup_generated(g: FiniteAbelianGroup, gens: Iterable[GroupElement]) -> FiniteAbelianGroup:
    """Isomorphism type of ``<gens>`` inside ``g``."""
    gens = _check_elements(g, gens)
    m = len(gens)
    if m == 0:
        return FiniteAbelianGroup.trivial()
    rel = _quotient_relations(g, [])
    # rows: gens then the defining relations of g; kernel of the combined map
    stacked = IntMatrix.from_rows([list(x.coords) for x in gens] + rel.tolist(), g.ngens)
    kernel = integer_kernel(stacked.transpose())
    relations = [list(kernel.row(i)[:m]) for i in range(kernel.rows)]
    if not relations:
        return FiniteAbelianGroup((), m)
    return group_from_relations(IntMatrix.from_rows(relations, m)).group


def direct_sum(*groups: FiniteAbelianGroup) -> FiniteAbelianGroup:
    orders = [d for grp in groups for d in grp.invariant_factors]
    orders += [0] * sum(grp.free_rank for grp in groups)
    return FiniteAbelianGroup.from_cyclic_orders(orders)


def exterior_square(g: FiniteAbelianGroup) -> FiniteAbelianGroup:
    """``Lambda^2 g = sum_{i<j} Z/gcd(d_i, d_j) = sum_{i<j} Z/d_i`` for finite g."""
    if not g.is_finite:
        raise ValueError("exterior_square requires a finite group (free_rank 0)")
    d = g.invariant_factors
    return FiniteAbelianGroup.from_cyclic_orders(
        gcd(d[i], d[j]) for i in range(len(d)) for j in range(i + 1, len(d)))
