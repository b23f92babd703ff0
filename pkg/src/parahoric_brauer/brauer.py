"""
Brauer group of the regularly stable moduli space and its bookkeeping.

For simply connected G the Brauer group is ``Hom(Z_G, C^*)`` modulo the
restrictions to the center of all characters of the residue Levi groups at
the marked points. Characters of Z_G are weights mod the root lattice, so
each character of a residue Levi contributes its class in ``P/Q``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .lattice import (
    FiniteAbelianGroup, GroupElement, direct_sum, exterior_square, quotient_by_subgroup,
)
from .parahoric import FacetNodes, GeneralizedLevi, ParahoricSpec, hyperspecial, residue_levi
from .roots import GroupSpec, RootSystemData, Weight, build_root_system, center_dual, fundamental_group

__all__ = [
    "HypothesisError", "ModuliSetup", "BrauerResult", "PicardReport", "SequenceTerm",
    "NonSimplyConnectedReport", "StackBrauerReport",
    "weight_of_character", "brauer_group", "picard_report", "component_group",
    "twist_vector", "twist_from_phases", "nonsc_sequence_report", "stack_brauer",
    "normalized_points", "facet_setup", "GeneratorImage",
]

MAIN_GENUS = 3
GEOMETRIC_GENUS = 2


class HypothesisError(ValueError):
    """The input is outside the hypotheses under which a computation is valid."""


@dataclass(frozen=True)
class ModuliSetup:
    group: GroupSpec
    genus: int
    points: tuple[ParahoricSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError(f"genus must be a nonnegative integer, got {self.genus!r}")
        labels = [p.label for p in self.points]
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        if dupes:
            raise ValueError(f"duplicate point labels: {dupes}")


def normalized_points(setup: ModuliSetup, rs: RootSystemData) -> tuple[ParahoricSpec, ...]:
    """No marked points means trivial parahoric structure at one point."""
    if setup.points:
        return setup.points
    return (ParahoricSpec("x0", hyperspecial(rs)),)


def _require_sc(setup: ModuliSetup, what: str) -> None:
    if not setup.group.is_simply_connected:
        raise HypothesisError(
            f"{what} requires a simply connected group, got {setup.group}; "
            "use nonsc_sequence_report for the non-simply-connected case")


def _genus_warnings(genus: int, needed: int, what: str) -> list[str]:
    if genus < needed:
        return [f"genus {genus} < {needed}: {what} is established only for g_X >= {needed}; "
                "the group-theoretic value is reported anyway"]
    return []


def weight_of_character(rs: RootSystemData, levi: GeneralizedLevi, lam: Sequence[int]) -> GroupElement:
    """Restriction to Z_G of the character ``lam`` of the residue Levi, as a class in P/Q."""
    lam = rs.check_weight(lam)
    for i in levi.simple_system:
        if rs.coroot_pairing(lam, i) != 0:
            raise ValueError(
                f"weight {lam} pairs nontrivially with the coroot of {rs.roots[i]} in the residue root system; "
                "it is not a character of the residue Levi")
    return center_dual(rs).image(lam)


@dataclass(frozen=True)
class GeneratorImage:
    point: str
    character: Weight
    image: GroupElement


@dataclass(frozen=True)
class BrauerResult:
    center_dual: FiniteAbelianGroup
    levis: tuple[tuple[str, GeneralizedLevi], ...]
    generator_images: tuple[GeneratorImage, ...]
    image_subgroup_order: int
    brauer: FiniteAbelianGroup
    warnings: tuple[str, ...] = ()


def _levis(rs: RootSystemData, points: Sequence[ParahoricSpec], jobs: int) -> list[GeneralizedLevi]:
    if jobs > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(lambda p: residue_levi(rs, p), points))
    return [residue_levi(rs, p) for p in points]


def brauer_group(setup: ModuliSetup, jobs: int = 1) -> BrauerResult:
    _require_sc(setup, "brauer_group")
    rs = build_root_system(setup.group)
    coker = center_dual(rs)
    points = normalized_points(setup, rs)
    images = []
    levis = _levis(rs, points, jobs)
    for p, levi in zip(points, levis):
        for lam in levi.char_lattice:
            images.append(GeneratorImage(p.label, lam, weight_of_character(rs, levi, lam)))
    hom = coker.group
    br = quotient_by_subgroup(hom, [g.image for g in images])
    return BrauerResult(
        center_dual=hom,
        levis=tuple((p.label, lv) for p, lv in zip(points, levis)),
        generator_images=tuple(images),
        image_subgroup_order=hom.order() // br.order(),
        brauer=br,
        warnings=tuple(_genus_warnings(setup.genus, MAIN_GENUS, "the Brauer group formula")),
    )


@dataclass(frozen=True)
class PicardReport:
    stack_pic_rank: int
    central_charge_rank: int
    char_lattice_ranks: tuple[tuple[str, int], ...]
    rs_sequence: dict = field(hash=False)
    warnings: tuple[str, ...] = ()


def picard_report(setup: ModuliSetup, jobs: int = 1) -> PicardReport:
    """
    Ranks and orders along ``Pic(stack) = prod X*(G_x) + Z`` and the four-term
    sequence ``Pic(M^rs) -> Pic(M^rs stack) -> Hom(Z_G, C^*) -> Br -> 0``.
    """
    res = brauer_group(setup, jobs=jobs)
    ranks = tuple((label, lv.char_rank) for label, lv in res.levis)
    stack_rank = 1 + sum(r for _, r in ranks)
    hom_order = res.center_dual.order()
    br_order = res.brauer.order()
    if br_order * res.image_subgroup_order != hom_order:
        raise AssertionError("exact sequence count violated")
    seq = {
        # the weight image is finite, so both Picard groups have the same rank
        "pic_moduli_space_rank": stack_rank,
        "pic_stack_rank": stack_rank,
        "pic_index": res.image_subgroup_order,
        "hom_center_order": hom_order,
        "image_order": res.image_subgroup_order,
        "brauer_order": br_order,
    }
    return PicardReport(stack_rank, 1, ranks, seq,
                        tuple(_genus_warnings(setup.genus, GEOMETRIC_GENUS, "the Picard sequence")))


def component_group(setup: ModuliSetup) -> tuple[FiniteAbelianGroup, Iterator[tuple[GroupElement, ...]]]:
    """``Maps(R, pi_1(G))`` and an enumeration of its elements (one coordinate block per point)."""
    pi1 = fundamental_group(setup.group)
    rs = build_root_system(setup.group)
    n = len(normalized_points(setup, rs))
    group = direct_sum(*([pi1] * n))

    def enumerate_maps():
        for combo in itertools.product(list(pi1.elements()), repeat=n):
            yield combo
    return group, enumerate_maps()


def twist_vector(rs: RootSystemData, delta: Mapping[str, Sequence[int]]) -> dict[str, tuple[int, ...]]:
    """
    Integer lifts ``d(x)`` of a twist ``delta: R -> Z_G``.

    With ``Z_G = prod mu_{r_i}`` taken from the invariant factors of
    ``center_dual``, ``d_i(x)`` is the i-th coordinate of ``delta(x)``, so
    ``exp(2 pi i d_i / r_i)`` recovers the i-th component.
    """
    z = center_dual(rs).group
    out = {}
    for label, value in delta.items():
        try:
            out[label] = z.element(tuple(value)).coords
        except ValueError as exc:
            raise ValueError(f"twist at {label!r}: {exc}") from None
    return out


def twist_from_phases(rs: RootSystemData, phases: Sequence[Fraction]) -> tuple[int, ...]:
    """Coordinates of ``(exp(2 pi i q_1), ...)``; each ``q_i r_i`` must be an integer."""
    z = center_dual(rs).group
    if len(phases) != len(z.invariant_factors):
        raise ValueError(f"expected {len(z.invariant_factors)} phases for {z}, got {len(phases)}")
    coords = []
    for q, r in zip(phases, z.invariant_factors):
        d = Fraction(q) * r
        if d.denominator != 1:
            raise ValueError(f"exp(2 pi i * {q}) is not an {r}-th root of unity")
        coords.append(int(d) % r)
    return tuple(coords)


@dataclass(frozen=True)
class SequenceTerm:
    name: str
    group: FiniteAbelianGroup | None
    rank: int | None = None
    note: str = ""


@dataclass(frozen=True)
class NonSimplyConnectedReport:
    pi1: FiniteAbelianGroup
    gamma: FiniteAbelianGroup
    delta: tuple[tuple[str, tuple[int, ...]], ...]
    terms: tuple[SequenceTerm, ...]
    cover_brauer: BrauerResult
    brauer_order_lower_bound: int
    brauer_order_upper_bound: int
    determined_up_to_extension: bool = True
    warnings: tuple[str, ...] = ()


def nonsc_sequence_report(setup: ModuliSetup, delta: Mapping[str, Sequence[int]] | None = None,
                          jobs: int = 1) -> NonSimplyConnectedReport:
    """
    Terms of the six-term sequence for a non-simply-connected G.

    ``Gamma = H^1(X, pi_1(G)) = pi_1(G)^(2g)``; ``H^1(Gamma, C^*)`` is its dual
    (abstractly Gamma) and ``H^2(Gamma, C^*) = Lambda^2 Gamma``. The twisted
    space of the simply connected cover has the Brauer group computed by
    ``brauer_group`` on the cover with the same parahoric data. Br itself is
    only pinned between ``|Br(cover)|`` and ``|H^2| * |Br(cover)|``.
    """
    if setup.group.is_simply_connected:
        raise HypothesisError(f"{setup.group} is simply connected; the sequence degenerates, use brauer_group")
    pi1 = fundamental_group(setup.group)
    rs = build_root_system(setup.group)
    points = normalized_points(setup, rs)
    labels = [p.label for p in points]
    delta = dict(delta or {})
    unknown = sorted(set(delta) - set(labels))
    if unknown:
        raise ValueError(f"twist given for unknown points {unknown}")
    d = []
    for label in labels:
        value = delta.get(label, pi1.identity().coords)
        try:
            d.append((label, pi1.element(tuple(value)).coords))
        except ValueError as exc:
            raise ValueError(f"twist at {label!r} is not in pi_1(G) = {pi1}: {exc}") from None
    gamma = direct_sum(*([pi1] * (2 * setup.genus)))
    h2 = exterior_square(gamma)
    cover = ModuliSetup(setup.group.simply_connected_cover(), setup.genus, points)
    cover_res = brauer_group(cover, jobs=jobs)
    pic_rank = 1 + sum(lv.char_rank for _, lv in cover_res.levis)
    terms = (
        SequenceTerm("H1(Gamma,C*)", gamma, note="dual of Gamma; abstractly Gamma"),
        SequenceTerm("Pic(M^rs(G))", None, rank=pic_rank,
                     note="rank only; contains H1(Gamma,C*) as its torsion image"),
        SequenceTerm("Pic(M^rs stack(C(G~)))", None, rank=pic_rank, note="rank only"),
        SequenceTerm("H2(Gamma,C*)", h2, note="exterior square of Gamma"),
        SequenceTerm("Br(M^rs(G))", None, note="determined only up to extension"),
        SequenceTerm("Br(M^rs(C(G~)))", cover_res.brauer, note="Brauer group of the simply connected cover"),
    )
    warnings = list(cover_res.warnings)
    warnings += _genus_warnings(setup.genus, GEOMETRIC_GENUS, "the non-simply-connected sequence")
    return NonSimplyConnectedReport(
        pi1=pi1, gamma=gamma, delta=tuple(d), terms=terms, cover_brauer=cover_res,
        brauer_order_lower_bound=cover_res.brauer.order(),
        brauer_order_upper_bound=h2.order() * cover_res.brauer.order(),
        warnings=tuple(dict.fromkeys(warnings)),
    )


@dataclass(frozen=True)
class StackBrauerReport:
    covered: bool
    trivial: bool | None
    statement: str
    hypothesis: str


def stack_brauer(setup: ModuliSetup, twisted: bool = False) -> StackBrauerReport:
    """The Brauer group of the moduli stack; a cited vanishing result, not a computation."""
    if not setup.group.is_simply_connected:
        return StackBrauerReport(False, None, "not covered: only simply connected G is treated",
                                 "G semisimple and simply connected")
    what = "Br(M^delta_X(C(G))) = 0 for every twist delta" if twisted else "Br(M_X(G)) = 0"
    return StackBrauerReport(True, True, what, "G semisimple and simply connected")


def facet_setup(group: str | GroupSpec, genus: int, facets: Sequence) -> ModuliSetup:
    """Convenience constructor: one point per facet, labelled p1, p2, ..."""
    spec = group if isinstance(group, GroupSpec) else GroupSpec.of(*group.split("x"))
    return ModuliSetup(spec, genus, tuple(
        ParahoricSpec(f"p{i + 1}", f if isinstance(f, FacetNodes) else FacetNodes(f))
        for i, f in enumerate(facets)))
