"""
Affine Weyl group combinatorics for a simple root system.

Elements are affine maps ``x -> A x + b`` on the coweight coordinates, with
``A`` an integer matrix (finite Weyl part) and ``b`` a coroot-lattice
translation; words in the affine simple reflections ``s_0..s_r`` are only
input/output syntax. Length counts the affine root hyperplanes separating
the fundamental alcove from its image.

Cosets are ``w W_B`` (the parabolic subgroup acts on the right), each named by
its unique minimal-length representative.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor
from typing import Iterable, Sequence

from .parahoric import FacetNodes
from .roots import RootSystemData

__all__ = [
    "AffineElement", "AffineWeylGroup", "CosetRep", "SchubertCellTable",
    "element_normal_form", "coset_rep", "minimal_coset_reps", "bruhat_leq",
    "schubert_table", "grassmannian_series",
]

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AffineElement:
    linear: Matrix
    translation: tuple[int, ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _matvec(a: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a)))


class AffineWeylGroup:
    def __init__(self, rs: RootSystemData):
        if not rs.is_simple:
            raise ValueError(f"affine Weyl combinatorics needs a simple type, got {rs.name}")
        self.rs = rs
        r = self.rank = rs.rank
        cm = rs.cartan
        ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
        self.identity = AffineElement(ident, (0,) * r)
        theta_vee = rs.coroot_coeffs[rs.index_of(rs.highest_root)]
        # coweight coordinates of the coroots: (alpha_i^vee)_j = <alpha_j, alpha_i^vee> = C[j][i]
        theta_vee_cw = tuple(sum(theta_vee[i] * cm[j, i] for i in range(r)) for j in range(r))
        marks = rs.marks
        gens = []
        # s_0: x -> x - (theta(x) - 1) theta^vee
        lin0 = tuple(tuple(int(i == j) - theta_vee_cw[i] * marks[j] for j in range(r)) for i in range(r))
        gens.append(AffineElement(lin0, theta_vee_cw))
        for k in range(r):
            # s_k: x -> x - x_k alpha_k^vee
            lin = tuple(tuple(int(i == j) - (cm[i, k] if j == k else 0) for j in range(r)) for i in range(r))
            gens.append(AffineElement(lin, (0,) * r))
        self.generators = tuple(gens)
        h = 1 + sum(marks)
        self.barycenter = tuple(Fraction(1, h) for _ in range(r))
        self._pos = [rs.root_coeffs[i] for i in rs.positive_indices]
        self._length_cache: dict[AffineElement, int] = {}
        self._leq_cache: dict[tuple[AffineElement, AffineElement], bool] = {}

    @property
    def nodes(self) -> range:
        return range(self.rank + 1)

    def mul(self, u: AffineElement, v: AffineElement) -> AffineElement:
        """``u * v`` as maps: first v, then u."""
        lin = _matmul(u.linear, v.linear)
        tr = tuple(a + b for a, b in zip(_matvec(u.linear, v.translation), u.translation))
        return AffineElement(lin, tr)

    def act(self, w: AffineElement, x: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(_matvec(w.linear, x), w.translation))

    def element(self, word: Iterable[int]) -> AffineElement:
        w = self.identity
        for i in reversed(list(word)):
            if i not in self.nodes:
                raise ValueError(f"letter {i} outside 0..{self.rank}")
            w = self.mul(self.generators[i], w)
        return w

    def length(self, w: AffineElement) -> int:
        cached = self._length_cache.get(w)
        if cached is None:
            y = self.act(w, self.barycenter)
            cached = sum(abs(floor(sum(c * yi for c, yi in zip(coeffs, y)))) for coeffs in self._pos)
            self._length_cache[w] = cached
        return cached

    def _affine_simple_value(self, i: int, y: Sequence[Fraction]) -> Fraction:
        if i == 0:
            return 1 - sum(m * yi for m, yi in zip(self.rs.marks, y))
        return y[i - 1]

    def left_descents(self, w: AffineElement) -> list[int]:
        y = self.act(w, self.barycenter)
        return [i for i in self.nodes if self._affine_simple_value(i, y) < 0]

    def right_descents(self, w: AffineElement) -> list[int]:
        lw = self.length(w)
        return [i for i in self.nodes if self.length(self.mul(w, self.generators[i])) < lw]

    def normal_form(self, w: AffineElement) -> tuple[int, ...]:
        """Lexicographically least reduced word."""
        word = []
        while True:
            ds = self.left_descents(w)
            if not ds:
                return tuple(word)
            word.append(ds[0])
            w = self.mul(self.generators[ds[0]], w)

    def bruhat_leq(self, u: AffineElement, v: AffineElement) -> bool:
        """Bruhat order via the lifting property at a left descent of v."""
        key = (u, v)
        hit = self._leq_cache.get(key)
        if hit is not None:
            return hit
        lu, lv = self.length(u), self.length(v)
        if lu > lv:
            ans = False
        elif lv == 0 or lu == lv:
            ans = u == v
        else:
            s = self.generators[self.left_descents(v)[0]]
            sv = self.mul(s, v)
            su = self.mul(s, u)
            ans = self.bruhat_leq(su if self.length(su) < lu else u, sv)
        self._leq_cache[key] = ans
        return ans

    def is_minimal(self, w: AffineElement, omega_b: frozenset[int]) -> bool:
        return not set(self.right_descents(w)) & omega_b


_GROUPS: dict[int, AffineWeylGroup] = {}


def _group(rs: RootSystemData) -> AffineWeylGroup:
    g = _GROUPS.get(id(rs))
    if g is None or g.rs is not rs:
        g = _GROUPS[id(rs)] = AffineWeylGroup(rs)
    return g


def _omega(rs: RootSystemData, omega_b) -> frozenset[int]:
    f = omega_b if isinstance(omega_b, FacetNodes) else FacetNodes(omega_b)
    if not rs.is_simple:
        raise ValueError(f"affine Weyl combinatorics needs a simple type, got {rs.name}")
    f.validate(rs)  # rejects the full node set, whose parabolic subgroup is infinite
    return f.nodes[0]


@dataclass(frozen=True)
class CosetRep:
    word: tuple[int, ...]
    length: int
    omega_b: frozenset[int]


def element_normal_form(rs: RootSystemData, word: Sequence[int]) -> tuple[int, ...]:
    g = _group(rs)
    return g.normal_form(g.element(word))


def coset_rep(rs: RootSystemData, word: Sequence[int], omega_b) -> CosetRep:
    """Minimal representative of the coset ``w W_B`` containing the element spelled by ``word``."""
    om = _omega(rs, omega_b)
    g = _group(rs)
    w = g.element(word)
    while True:
        ds = [i for i in g.right_descents(w) if i in om]
        if not ds:
            break
        w = g.mul(w, g.generators[ds[0]])
    nf = g.normal_form(w)
    return CosetRep(nf, len(nf), om)


def minimal_coset_reps(rs: RootSystemData, omega_b, up_to_length: int) -> list[CosetRep]:
    """Minimal representatives of ``W~/W_B`` of length at most ``up_to_length``, sorted by (length, word)."""
    if up_to_length < 0:
        raise ValueError("length bound must be >= 0")
    om = _omega(rs, omega_b)
    g = _group(rs)
    layer = [g.identity]
    out = [CosetRep((), 0, om)]
    for k in range(1, up_to_length + 1):
        nxt = {}
        for w in layer:
            for s in g.generators:
                sw = g.mul(s, w)
                if sw not in nxt and g.length(sw) == k and g.is_minimal(sw, om):
                    nxt[sw] = None
        layer = list(nxt)
        out.extend(sorted((CosetRep(g.normal_form(w), k, om) for w in layer), key=lambda c: c.word))
    return out


def bruhat_leq(rs: RootSystemData, u: CosetRep, v: CosetRep, omega_b) -> bool:
    om = _omega(rs, omega_b)
    if u.omega_b != om or v.omega_b != om:
        raise ValueError("coset representatives belong to a different parabolic subgroup")
    g = _group(rs)
    return g.bruhat_leq(g.element(u.word), g.element(v.word))


@dataclass(frozen=True)
class SchubertCellTable:
    cells: tuple[CosetRep, ...]
    poincare: tuple[int, ...]   # poincare[i] = number of cells of complex dimension i

    def betti(self) -> tuple[int, ...]:
        """Betti numbers b_0, b_1, ...; odd ones vanish since all cells are even-dimensional."""
        out = []
        for c in self.poincare:
            out.extend((c, 0))
        return tuple(out[:-1]) if out else ()

    def odd_betti_vanish(self) -> bool:
        return all(b == 0 for b in self.betti()[1::2])


def _table(cells: list[CosetRep]) -> SchubertCellTable:
    top = max(c.length for c in cells)
    counts = Counter(c.length for c in cells)
    return SchubertCellTable(tuple(cells), tuple(counts.get(i, 0) for i in range(top + 1)))


def schubert_table(rs: RootSystemData, omega_b, w: CosetRep) -> SchubertCellTable:
    """Cells of the Schubert variety of ``w``: all coset reps ``v <= w``."""
    om = _omega(rs, omega_b)
    if w.omega_b != om:
        raise ValueError("coset representative belongs to a different parabolic subgroup")
    cells = [v for v in minimal_coset_reps(rs, om, w.length) if bruhat_leq(rs, v, w, om)]
    return _table(cells)


def grassmannian_series(rs: RootSystemData, omega_b, up_to_length: int) -> SchubertCellTable:
    return _table(minimal_coset_reps(rs, omega_b, up_to_length))
