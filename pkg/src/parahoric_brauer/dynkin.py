"""
Dynkin index of an irreducible representation.

Closed form ``dim V * (lambda, lambda + 2 rho) / dim g`` with ``(theta, theta) = 2``;
the defining representation of SL_n gets index 1 and the adjoint gets ``2 h^vee``.
An independent route sums ``<mu, theta^vee>^2 / 2`` over the weights of V with
multiplicities from Freudenthal's recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .roots import RootSystemData, Weight, form, weyl_dimension

__all__ = [
    "RepSpec", "dynkin_index", "dynkin_index_sum", "pullback_charge",
    "weight_multiplicities", "dynkin_index_from_weights",
]


@dataclass(frozen=True)
class RepSpec:
    highest_weight: Weight
    ambient: RootSystemData

    def __post_init__(self):
        hw = self.ambient.check_weight(self.highest_weight)
        if any(x < 0 for x in hw):
            raise ValueError(f"highest weight {hw} is not dominant")
        if not self.ambient.is_simple:
            raise ValueError(f"Dynkin index is taken per simple factor; got {self.ambient.name}")
        object.__setattr__(self, "highest_weight", hw)


def dynkin_index(rep: RepSpec) -> int:
    rs, lam = rep.ambient, rep.highest_weight
    dim_v = weyl_dimension(rs, lam)
    dim_g = len(rs.roots) + rs.rank
    two_rho = tuple(2 * x for x in rs.weyl_vector)
    casimir = form(rs, lam, tuple(a + b for a, b in zip(lam, two_rho)))
    d = dim_v * casimir / dim_g
    if d.denominator != 1:
        raise ArithmeticError(f"non-integral Dynkin index {d} for {rep.highest_weight}; normalization bug")
    return int(d)


def dynkin_index_sum(reps: Sequence[RepSpec]) -> int:
    """Index of a direct sum of irreducibles."""
    return sum(dynkin_index(r) for r in reps)


def pullback_charge(level: int, rep: RepSpec) -> int:
    if level < 0:
        raise ValueError("level must be >= 0")
    return level * dynkin_index(rep)


def _dominant(rs: RootSystemData, mu: Weight) -> Weight:
    mu = list(mu)
    while True:
        i = next((k for k, x in enumerate(mu) if x < 0), None)
        if i is None:
            return tuple(mu)
        c = mu[i]
        simple = rs.cartan.row(i)
        mu = [m - c * a for m, a in zip(mu, simple)]


def _below(rs: RootSystemData, lam: Weight, mu: Weight) -> bool:
    """``lam - mu`` is a nonnegative integer combination of simple roots."""
    coeffs = rs.root_coordinates([a - b for a, b in zip(lam, mu)])
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def weight_multiplicities(rs: RootSystemData, lam: Sequence[int]) -> dict[Weight, int]:
    """All weights of the irreducible module with highest weight ``lam``, via Freudenthal."""
    lam = rs.check_weight(lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"weight {lam} is not dominant")
    simple = [rs.cartan.row(i) for i in range(rs.rank)]
    pos = rs.positive_roots
    rho = rs.weyl_vector

    def sq(v):
        return form(rs, v, v)

    top = sq(tuple(a + b for a, b in zip(lam, rho)))
    mult: dict[Weight, int] = {lam: 1}
    layer = [lam]
    while layer:
        candidates = sorted({tuple(m - a for m, a in zip(mu, s)) for mu in layer for s in simple})
        nxt = []
        for mu in candidates:
            if mu in mult or not _below(rs, lam, _dominant(rs, mu)):
                continue
            total = Fraction(0)
            for alpha in pos:
                k = 1
                while True:
                    nu = tuple(m + k * a for m, a in zip(mu, alpha))
                    m_nu = mult.get(nu)
                    if m_nu is None:
                        break
                    total += m_nu * form(rs, nu, alpha)
                    k += 1
            denom = top - sq(tuple(a + b for a, b in zip(mu, rho)))
            value = 2 * total / denom
            if value.denominator != 1 or value <= 0:
                raise AssertionError(f"Freudenthal produced multiplicity {value} at {mu}")
            mult[mu] = int(value)
            nxt.append(mu)
        layer = nxt
    return mult


def dynkin_index_from_weights(rep: RepSpec) -> int:
    rs = rep.ambient
    theta = rs.index_of(rs.highest_root)
    total = sum(m * rs.coroot_pairing(mu, theta) ** 2
                for mu, m in weight_multiplicities(rs, rep.highest_weight).items())
    q, r = divmod(total, 2)
    if r:
        raise ArithmeticError(f"odd weight sum {total}")
    return q
