"""
Command-line front end.

Every subcommand reads one setup document (YAML or JSON), validates it against
``schemas/setup.schema.json`` and prints a JSON report with sorted keys.
Exit codes: 0 ok, 2 invalid input, 3 input outside the hypotheses of the
requested computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Callable, Optional, Sequence

import jsonschema
import yaml

from .affine_weyl import coset_rep, grassmannian_series, schubert_table
from .brauer import (
    HypothesisError, ModuliSetup, brauer_group, component_group, nonsc_sequence_report,
    normalized_points, picard_report, stack_brauer,
)
from .dynkin import RepSpec, dynkin_index, pullback_charge
from .lattice import FiniteAbelianGroup, GroupElement
from .parahoric import AlcovePoint, FacetNodes, ParahoricSpec, alcove_coords, residue_levi, valuation_table
from .roots import GroupSpec, RootSystemData, SimpleType, build_root_system, fundamental_group, weyl_dimension

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 2, 3


class InputError(ValueError):
    """Invalid setup document; the message starts with the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("parahoric_brauer").joinpath("schemas", name).read_text(encoding="utf-8")
    return json.loads(text)


def _field_path(path: Sequence) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<document>"


def _reject_floats(node: Any, path: list) -> None:
    if isinstance(node, float):
        raise InputError(_field_path(path), f"floating-point value {node!r}; write rationals as 'n/d' strings")
    if isinstance(node, dict):
        for k, v in node.items():
            _reject_floats(v, path + [k])
    elif isinstance(node, list):
        for i, v in enumerate(node):
            _reject_floats(v, path + [i])


def parse_document(text: str) -> dict:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InputError("<document>", f"not valid YAML/JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("<document>", "top level must be a mapping")
    _reject_floats(doc, [])
    validator = jsonschema.Draft202012Validator(load_schema("setup.schema.json"))
    errors = sorted(validator.iter_errors(doc), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        raise InputError(_field_path(err.absolute_path), err.message)
    return doc


@dataclass(frozen=True)
class Document:
    setup: ModuliSetup
    raw: dict


def _group_spec(raw) -> GroupSpec:
    if isinstance(raw, str):
        return GroupSpec.of(*raw.split("x"))
    factors = []
    for i, f in enumerate(raw["factors"]):
        try:
            factors.append(SimpleType.parse(f) if isinstance(f, str) else SimpleType(f["series"], f["rank"]))
        except ValueError as exc:
            raise InputError(f"group.factors[{i}]", str(exc)) from None
    isogeny = raw.get("isogeny", "simply_connected")
    gens = tuple(tuple(g) for g in raw.get("quotient_by", ()))
    if gens and isogeny != "quotient_by":
        raise InputError("group.quotient_by", "only allowed with isogeny 'quotient_by'")
    spec = GroupSpec(tuple(factors), isogeny, gens)
    if isogeny == "quotient_by":
        try:
            fundamental_group(spec)
        except ValueError as exc:
            raise InputError("group.quotient_by", str(exc)) from None
    return spec


def _facet(raw: list, rs: RootSystemData) -> FacetNodes:
    if raw and all(isinstance(x, list) for x in raw):
        return FacetNodes(tuple(frozenset(p) for p in raw))
    if raw and any(isinstance(x, list) for x in raw):
        raise ValueError("mixes node indices and per-factor node lists")
    if len(rs.types) > 1:
        raise ValueError(f"{rs.name} has {len(rs.types)} simple factors; give one node list per factor")
    return FacetNodes(frozenset(raw))


def load_setup(doc: dict) -> Document:
    spec = _group_spec(doc["group"])
    rs = build_root_system(spec)
    points = []
    for i, p in enumerate(doc.get("points", [])):
        where = f"points[{i}]"
        try:
            if "facet" in p:
                where += ".facet"
                f = _facet(p["facet"], rs)
                f.validate(rs)
                ps = ParahoricSpec(p["label"], f)
            else:
                where += ".alcove_point"
                ps = ParahoricSpec(p["label"], AlcovePoint(tuple(Fraction(str(c)) for c in p["alcove_point"])))
            alcove_coords(rs, ps)
        except ValueError as exc:
            raise InputError(where, str(exc)) from None
        points.append(ps)
    try:
        setup = ModuliSetup(spec, doc["genus"], tuple(points))
    except ValueError as exc:
        raise InputError("points", str(exc)) from None
    return Document(setup, doc)


# -- report fragments ---------------------------------------------------------

def group_json(g: FiniteAbelianGroup) -> dict:
    return {"invariant_factors": list(g.invariant_factors), "order": g.order(), "name": str(g)}


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _levi_json(rs: RootSystemData, label: str, p: ParahoricSpec) -> dict:
    lv = residue_levi(rs, p)
    vals = valuation_table(rs, p)
    out = {
        "label": label,
        "point": [_frac(c) for c in lv.base_point],
        "levi_type": lv.levi_type,
        "semisimple_rank": lv.semisimple_rank,
        "char_rank": lv.char_rank,
        "char_lattice": [list(v) for v in lv.char_lattice],
        "simple_system": [list(rs.root_coeffs[i]) for i in lv.simple_system],
        "phi_x_size": len(lv.phi_x),
        "valuations": [{"root": list(rs.root_coeffs[i]), "m": vals.values[i]} for i in rs.positive_indices],
    }
    if isinstance(p.spec, FacetNodes):
        out["facet"] = p.spec.as_lists()
    return out


def _points_filter(labels: Sequence[str], only: Optional[str]) -> Callable[[str], bool]:
    if only is not None and only not in labels:
        raise InputError("--point", f"no point labelled {only!r}; known labels {list(labels)}")
    return lambda label: only is None or label == only


def _element(e: GroupElement) -> list[int]:
    return list(e.coords)


# -- commands -----------------------------------------------------------------

def cmd_brauer(d: Document, args) -> dict:
    res = brauer_group(d.setup, jobs=args.jobs)
    keep = _points_filter([l for l, _ in res.levis], args.point)
    return {
        "group": str(d.setup.group),
        "genus": d.setup.genus,
        "center_dual": group_json(res.center_dual),
        "levis": [{"label": l, "levi_type": lv.levi_type, "char_rank": lv.char_rank}
                  for l, lv in res.levis if keep(l)],
        "generator_images": [{"point": g.point, "character": list(g.character), "image": _element(g.image)}
                             for g in res.generator_images if keep(g.point)],
        "image_order": res.image_subgroup_order,
        "brauer": group_json(res.brauer),
        "warnings": list(res.warnings),
    }


def cmd_levi(d: Document, args) -> dict:
    rs = build_root_system(d.setup.group)
    points = normalized_points(d.setup, rs)
    keep = _points_filter([p.label for p in points], args.point)
    return {"group": str(d.setup.group), "points": [_levi_json(rs, p.label, p) for p in points if keep(p.label)]}


def cmd_picard(d: Document, args) -> dict:
    rep = picard_report(d.setup, jobs=args.jobs)
    keep = _points_filter([l for l, _ in rep.char_lattice_ranks], args.point)
    return {
        "group": str(d.setup.group),
        "stack_pic_rank": rep.stack_pic_rank,
        "central_charge_rank": rep.central_charge_rank,
        "char_lattice_ranks": [{"label": l, "rank": r} for l, r in rep.char_lattice_ranks if keep(l)],
        "sequence": dict(rep.rs_sequence),
        "warnings": list(rep.warnings),
    }


def cmd_index(d: Document, args) -> dict:
    rep_doc = d.raw.get("representation")
    if rep_doc is None:
        raise InputError("representation", "required by the index command")
    rs = build_root_system(d.setup.group)
    if not rs.is_simple:
        raise InputError("group", f"the Dynkin index is taken on a simple factor; got {rs.name}")
    hw = rep_doc["highest_weight"]
    weights = hw if hw and isinstance(hw[0], list) else [hw]
    level = rep_doc.get("level", 1)
    reps, summands = [], []
    for i, lam in enumerate(weights):
        try:
            rep = RepSpec(tuple(lam), rs)
        except ValueError as exc:
            where = "representation.highest_weight" + (f"[{i}]" if hw is not lam else "")
            raise InputError(where, str(exc)) from None
        reps.append(rep)
        summands.append({
            "highest_weight": list(rep.highest_weight),
            "dimension": weyl_dimension(rs, rep.highest_weight),
            "dynkin_index": dynkin_index(rep),
        })
    return {
        "group": str(d.setup.group),
        "summands": summands,
        "dynkin_index": sum(s["dynkin_index"] for s in summands),
        "level": level,
        "pullback_charge": sum(pullback_charge(level, r) for r in reps),
    }


def cmd_schubert(d: Document, args) -> dict:
    rs = build_root_system(d.setup.group)
    if not rs.is_simple:
        raise InputError("group", f"Schubert enumeration is implemented for simple types; got {rs.name}")
    sch = d.raw.get("schubert", {})
    if args.facet is not None:
        try:
            facet = [int(t) for t in args.facet.split(",") if t.strip()]
        except ValueError:
            raise InputError("--facet", f"expected comma-separated node indices, got {args.facet!r}") from None
        where = "--facet"
    else:
        facet, where = sch.get("facet", list(range(1, rs.rank + 1))), "schubert.facet"
    try:
        omega = FacetNodes(frozenset(facet))
        omega.validate(rs)
    except ValueError as exc:
        raise InputError(where, str(exc)) from None
    word = sch.get("word")
    if word is not None:
        bad = [i for i in word if i > rs.rank]
        if bad:
            raise InputError("schubert.word", f"letters {bad} outside 0..{rs.rank}")
        rep = coset_rep(rs, word, omega)
        table = schubert_table(rs, omega, rep)
        mode = {"word": list(word), "representative": list(rep.word)}
    else:
        length = args.length if args.length is not None else sch.get("length", 5)
        if length < 0:
            raise InputError("--length", "must be >= 0")
        table = grassmannian_series(rs, omega, length)
        mode = {"length": length}
    return {
        "group": str(d.setup.group),
        "facet": sorted(omega.nodes[0]),
        **mode,
        "cells": [{"word": list(c.word), "length": c.length} for c in table.cells],
        "poincare": list(table.poincare),
        "betti": list(table.betti()),
        "odd_betti_vanish": table.odd_betti_vanish(),
    }


def cmd_components(d: Document, args) -> dict:
    group, maps = component_group(d.setup)
    rs = build_root_system(d.setup.group)
    out = {"group": str(d.setup.group), "components": group_json(group),
           "points": [p.label for p in normalized_points(d.setup, rs)]}
    if args.enumerate:
        out["maps"] = [[_element(e) for e in combo] for combo in maps]
    return out


def _twist(d: Document) -> dict:
    """Twist values as pi_1(G) coordinates; phases ``k/r`` stand for ``exp(2 pi i k/r)``."""
    pi1 = fundamental_group(d.setup.group)
    out = {}
    for label, value in d.raw.get("twist", {}).items():
        if not isinstance(value, dict):
            out[label] = value
            continue
        phases = [Fraction(str(q)) for q in value["phases"]]
        if len(phases) != len(pi1.invariant_factors):
            raise InputError(f"twist.{label}.phases", f"expected {len(pi1.invariant_factors)} phases for pi_1 = {pi1}")
        coords = []
        for q, r in zip(phases, pi1.invariant_factors):
            k = q * r
            if k.denominator != 1:
                raise InputError(f"twist.{label}.phases", f"exp(2 pi i * {q}) is not an {r}-th root of unity")
            coords.append(int(k) % r)
        out[label] = coords
    return out


def cmd_nonsc(d: Document, args) -> dict:
    twist = _twist(d)
    try:
        rep = nonsc_sequence_report(d.setup, twist, jobs=args.jobs)
    except HypothesisError:
        raise
    except ValueError as exc:
        raise InputError("twist", str(exc)) from None
    return {
        "group": str(d.setup.group),
        "genus": d.setup.genus,
        "pi1": group_json(rep.pi1),
        "gamma": group_json(rep.gamma),
        "delta": [{"label": l, "value": list(v)} for l, v in rep.delta],
        "terms": [{"name": t.name, "group": group_json(t.group) if t.group is not None else None,
                   "rank": t.rank, "note": t.note} for t in rep.terms],
        "brauer_order_bounds": [rep.brauer_order_lower_bound, rep.brauer_order_upper_bound],
        "determined_up_to_extension": rep.determined_up_to_extension,
        "warnings": list(rep.warnings),
    }


def cmd_stack(d: Document, args) -> dict:
    r = stack_brauer(d.setup, twisted=bool(d.raw.get("twist")))
    return {"group": str(d.setup.group), "covered": r.covered, "trivial": r.trivial,
            "statement": r.statement, "hypothesis": r.hypothesis}


COMMANDS: dict[str, Callable[[Document, argparse.Namespace], dict]] = {
    "brauer": cmd_brauer,
    "levi": cmd_levi,
    "picard": cmd_picard,
    "index": cmd_index,
    "schubert": cmd_schubert,
    "components": cmd_components,
    "nonsc": cmd_nonsc,
    "stack": cmd_stack,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parahoric-brauer", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "brauer": "Brauer group of the regularly stable moduli space",
        "levi": "residue root system and character lattice at each point",
        "picard": "ranks and orders along the Picard exact sequence",
        "index": "Dynkin index of the representation in the document",
        "schubert": "Schubert cells of the parahoric affine flag variety",
        "components": "component group Maps(R, pi_1(G))",
        "nonsc": "six-term sequence terms for non-simply-connected G",
        "stack": "Brauer group of the moduli stack (cited vanishing)",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("file", help="setup document (YAML or JSON); '-' reads stdin")
        p.add_argument("--json-compact", action="store_true", help="single-line JSON output")
        p.add_argument("--point", metavar="LABEL", help="restrict per-point output to one point")
        p.add_argument("--jobs", type=int, default=1, metavar="N", help="threads for per-point work")
        if name == "schubert":
            p.add_argument("--length", type=int, metavar="L", help="length bound for the cell series")
            p.add_argument("--facet", metavar="NODES", help="comma-separated affine nodes of the parahoric")
        if name == "components":
            p.add_argument("--enumerate", action="store_true", help="list every element")
    return parser


def render(report: dict, compact: bool) -> str:
    if compact:
        return json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True)


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    args = build_parser().parse_args(argv)
    try:
        if args.jobs < 1:
            raise InputError("--jobs", "must be >= 1")
        if args.file == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError("file", str(exc)) from None
        doc = load_setup(parse_document(text))
        report = {"command": args.command, **COMMANDS[args.command](doc, args)}
    except HypothesisError as exc:
        return EXIT_HYPOTHESIS, "", f"hypothesis violated: {exc}\n"
    except InputError as exc:
        return EXIT_INPUT, "", f"invalid input: {exc}\n"
    except ValueError as exc:
        return EXIT_INPUT, "", f"invalid input: {exc}\n"
    return EXIT_OK, render(report, args.json_compact) + "\n", "".join(f"warning: {w}\n" for w in report.get("warnings", []))


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
