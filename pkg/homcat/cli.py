"""Command line front end: ``python -m homcat <verb> ...``.

Exit codes: 0 every law holds, 1 a law fails (the first witness is printed),
2 malformed input or an unmet precondition, 3 an internal invariant broke,
4 a size bound was exceeded.
"""
from __future__ import annotations
from pathlib import Path
from typing import Callable, Optional, Sequence
import argparse
import json
import logging
import sys

import numpy as np
from pydantic import BaseModel, ValidationError

from .config import configure_logging, settings
from .errors import HomcatError, PreconditionError, StructuralError
from .models.schemas import (AxiomVerdict, BilinearSpec, HomGroupSpec, HomModuleSpec, HomRingSpec)
from .services import catalog
from .services.free_homgroup import reduce_request
from .services.group_ring import TwistedGroupRing
from .services.homgroup import (FiniteHomGroup, check_hom_group, direct_product, hom_group_of_homomorphisms)
from .services.homring import (FiniteHomRing, check_hom_ring, compatible_ring, endomorphism_hom_ring, twist_ring)
from .services.hommodule import (FiniteHomModule, check_module, hom_ring_simplicity, semisimple_decomposition)
from .services.structure import SubSet, abelianization, normal_lattice, quotient
from .services.tensor import is_hom_bilinear, tensor_oracle, tensor_abelianized, universal_property_check
from .utils.parsing import parse_tree

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION = 0, 1


# ---------------------------------------------------------------- input

def _read_json(source: str) -> dict:
    path = Path(source)
    if not path.is_file():
        raise StructuralError(f"{source}: no such file or catalog entry")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}")


def _validated(model: type[BaseModel], data: object, source: str) -> BaseModel:
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise StructuralError(f"{source}: {where}: {first['msg']}")


def _from_catalog(source: str, kind: str) -> bool:
    return not Path(source).exists() and source in catalog.names(kind)


def load_group(source: str) -> FiniteHomGroup:
    if _from_catalog(source, "group"):
        return catalog.group(source)
    return FiniteHomGroup.from_spec(_validated(HomGroupSpec, _read_json(source), source))


def _ring_from(data: object, source: str) -> FiniteHomRing:
    if isinstance(data, str):
        return load_ring(data)
    return FiniteHomRing.from_spec(_validated(HomRingSpec, data, source))


def load_ring(source: str) -> FiniteHomRing:
    if _from_catalog(source, "ring"):
        return catalog.ring(source)
    return _ring_from(_read_json(source), source)


def load_module(source: str) -> FiniteHomModule:
    if _from_catalog(source, "module"):
        return catalog.module(source)
    spec = _validated(HomModuleSpec, _read_json(source), source)
    ring = spec.ring
    if isinstance(ring, str) and not _from_catalog(ring, "ring"):
        # relative ring paths resolve next to the module file
        ring = str(Path(source).parent / ring)
    return FiniteHomModule.from_spec(spec, _ring_from(ring, source))


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise StructuralError(f"expected a comma separated list of integers, got {text!r}")


# ---------------------------------------------------------------- output

def _emit(args: argparse.Namespace, lines: Sequence[str], payload: object) -> None:
    if args.format in ("text", "both"):
        for line in lines:
            print(line)
    if args.format in ("json", "both"):
        print(json.dumps(payload, indent=2, ensure_ascii=False, default=str))


def _verdict_lines(verdicts: Sequence[AxiomVerdict], indent: str = "  ") -> list[str]:
    lines = []
    for v in verdicts:
        line = f"{indent}{v.name}: {v.status}"
        if v.witness is not None:
            line += f" at {v.witness}"
        if v.note:
            line += f" ({v.note})"
        lines.append(line)
    return lines


def _outcome(failures: Sequence[AxiomVerdict]) -> tuple[int, list[str]]:
    if not failures:
        return EXIT_OK, ["PASS"]
    first = failures[0]
    return EXIT_VIOLATION, [f"FAIL {first.name} witness {first.witness}"]


def _dump(obj: BaseModel) -> dict:
    return obj.model_dump(mode="json", by_alias=True)


# ---------------------------------------------------------------- verbs

def run_reduce(args: argparse.Namespace) -> int:
    tree = parse_tree(args.tree)
    response = reduce_request(tree, strict=args.strict, strategy=args.strategy)
    lines = []
    if args.trace:
        lines += [f"{s.rule}@{s.position}: {s.before} → {s.after}" for s in response.steps]
    lines.append(response.canonical if args.canonical else response.normal_form)
    _emit(args, lines, _dump(response))
    return EXIT_OK


def run_check(args: argparse.Namespace) -> int:
    if args.kind == "group":
        G = load_group(args.file)
        report = check_hom_group(G)
        lines = [f"{G!r}"] + _verdict_lines(report.axioms + report.derived)
        code, tail = _outcome([v for v in report.axioms if v.failed])
    elif args.kind == "ring":
        A = load_ring(args.file)
        if args.type is not None and args.type != A.ring_type:
            A = FiniteHomRing.from_tables(A.add, A.mul, A.alpha, A.beta, A.zero, A.one, args.type, A.add_inv,
                                          A.name)
        report = check_hom_ring(A)
        lines = [f"{A!r}", "additive:"] + _verdict_lines(report.additive.axioms)
        lines += ["ring:"] + _verdict_lines(report.axioms + report.derived)
        code, tail = _outcome([v for v in report.additive.axioms + report.axioms if v.failed])
    elif args.kind == "module":
        M = load_module(args.file)
        report = check_module(M, args.side)
        lines = [f"{M!r}", "additive:"] + _verdict_lines(report.additive.axioms)
        lines += ["module:"] + _verdict_lines(report.axioms + report.derived)
        code, tail = _outcome([v for v in report.additive.axioms + report.axioms if v.failed])
    else:
        spec = _validated(BilinearSpec, _read_json(args.file), args.file)
        A, B, C = (FiniteHomGroup.from_spec(s) for s in (spec.A, spec.B, spec.C))
        report = is_hom_bilinear(A, B, C, spec.f)
        lines = _verdict_lines(report.identities + report.lemmas)
        code, tail = _outcome([v for v in report.identities if v.failed])
    _emit(args, lines + tail, _dump(report))
    return code


def _constructed(args: argparse.Namespace, obj: FiniteHomGroup | FiniteHomRing | FiniteHomModule) -> int:
    _emit(args, [f"{obj!r}"], _dump(obj.to_spec()))
    return EXIT_OK


def run_construct(args: argparse.Namespace) -> int:
    target, inputs = args.target, args.inputs

    def need(count: int) -> None:
        if len(inputs) != count:
            raise PreconditionError(f"construct {target} takes {count} input(s), got {len(inputs)}")

    if target == "catalog":
        if not inputs:
            _emit(args, catalog.names(), {"names": catalog.names()})
            return EXIT_OK
        need(1)
        entry = catalog.describe(inputs[0])
        _emit(args, [f"{catalog.lookup(inputs[0])!r}"], entry)
        return EXIT_OK
    if target == "product":
        need(2)
        return _constructed(args, direct_product(load_group(inputs[0]), load_group(inputs[1])))
    if target == "hom":
        need(2)
        return _constructed(args, hom_group_of_homomorphisms(load_group(inputs[0]), load_group(inputs[1]))[0])
    if target == "quotient":
        need(1)
        if args.subset is None:
            raise PreconditionError("construct quotient needs --subset")
        G = load_group(inputs[0])
        return _constructed(args, quotient(G, SubSet.of(G, _int_list(args.subset))).group)
    if target == "compatible-ring":
        need(1)
        return _constructed(args, compatible_ring(load_ring(inputs[0])))
    if target == "end-ring":
        need(1)
        return _constructed(args, endomorphism_hom_ring(load_group(inputs[0]))[0])
    if target == "twist-ring":
        need(1)
        if args.alpha is None:
            raise PreconditionError("construct twist-ring needs --alpha")
        alpha = _int_list(args.alpha)
        beta = _int_list(args.beta) if args.beta is not None else alpha
        return _constructed(args, twist_ring(load_ring(inputs[0]), alpha, beta, args.type or 1))
    # group-ring
    need(1)
    G = load_group(inputs[0])
    if not G.regular or not (G.alpha == np.arange(G.n)).all():
        raise PreconditionError("group rings are built from a group, i.e. a Hom-group with identity twist")
    sigma = _int_list(args.sigma) if args.sigma is not None else list(range(G.n))
    ring = TwistedGroupRing(G.mul, sigma, args.p, name=f"F{args.p}{G.name or 'G'}")
    return _constructed(args, ring.materialize(args.type or 1))


def _certified_group(source: str, args: argparse.Namespace) -> Optional[FiniteHomGroup]:
    G = load_group(source)
    report = check_hom_group(G)
    if not report.passed:
        _emit(args, _outcome(report.failures)[1], _dump(report))
        return None
    return G


def _lattice(args: argparse.Namespace, source: str) -> int:
    G = _certified_group(source, args)
    if G is None:
        return EXIT_VIOLATION
    report, _ = normal_lattice(G)
    lines = [f"{G!r}", f"status: {report.status}", f"normal: {report.normal}", f"maximal: {report.maximal}",
             f"simple: {report.is_simple}"]
    if report.finding:
        lines.append(f"finding: {report.finding}")
    _emit(args, lines, _dump(report))
    return EXIT_OK


def _tensor(args: argparse.Namespace, inputs: Sequence[str]) -> int:
    if len(inputs) != 2:
        raise PreconditionError(f"tensor takes two Hom-groups, got {len(inputs)}")
    A, B = (_certified_group(s, args) for s in inputs)
    if A is None or B is None:
        return EXIT_VIOLATION
    cand = tensor_abelianized(A, B) if args.abelianized else tensor_oracle(A, B)
    targets = [load_group(t) for t in (args.targets or ["z2", "z3"])]
    verdicts = universal_property_check(cand, targets)
    lines = [f"candidate {cand.tag}: order {cand.order}" + (f", factors {cand.factors}" if cand.factors else "")]
    lines += [f"  {v.target}: {v.status}" + (f" {v.witness}" if v.witness else "") for v in verdicts]
    payload = {"candidate": cand.tag, "order": cand.order, "factors": cand.factors,
               "verdicts": [_dump(v) for v in verdicts]}
    _emit(args, lines, payload)
    return EXIT_VIOLATION if any(v.status == "violated" for v in verdicts) else EXIT_OK


def run_lattice(args: argparse.Namespace) -> int:
    return _lattice(args, args.file)


def run_tensor(args: argparse.Namespace) -> int:
    return _tensor(args, args.inputs)


def run_report(args: argparse.Namespace) -> int:
    target, inputs = args.target, args.inputs
    if target == "lattice":
        return _lattice(args, inputs[0])
    if target == "tensor":
        return _tensor(args, inputs)
    if target == "abelianize":
        G = _certified_group(inputs[0], args)
        if G is None:
            return EXIT_VIOLATION
        report = abelianization(G).to_report()
        _emit(args, [f"{G!r}", f"[G,G] = {report.commutator_subgroup}", f"quotient order {report.quotient_order}"],
              _dump(report))
        return EXIT_OK
    if target == "simplicity":
        A = load_ring(inputs[0])
        check = check_hom_ring(A)
        if not check.passed:
            _emit(args, _outcome(check.failures)[1], _dump(check))
            return EXIT_VIOLATION
        report = hom_ring_simplicity(A)
        lines = [f"{A!r}", f"status: {report.status}", f"simple: {report.is_simple}",
                 f"semisimple: {report.is_semisimple}"] + ([f"note: {report.note}"] if report.note else [])
        _emit(args, lines, _dump(report))
        return EXIT_OK
    # decompose
    M = load_module(inputs[0])
    check = check_module(M, "left")
    if not check.passed:
        _emit(args, _outcome(check.failures)[1], _dump(check))
        return EXIT_VIOLATION
    report = semisimple_decomposition(M)
    lines = [f"{M!r}", f"generator {report.generator}, orbit length {report.orbit_length}",
             f"summands: {report.summands}", f"direct: {report.direct}, covers: {report.covers}"]
    _emit(args, lines, _dump(report))
    return EXIT_OK if report.direct and report.covers else EXIT_VIOLATION


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "both"], default="text")
    common.add_argument("--log-level", default=None, help=f"defaults to {settings.log_level}")

    parser = argparse.ArgumentParser(prog="homcat", description="Hom-groups, Hom-rings and their modules")
    verbs = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, handler: Callable[[argparse.Namespace], int], help: str) -> argparse.ArgumentParser:
        sub = verbs.add_parser(name, parents=[common], help=help)
        sub.set_defaults(handler=handler)
        return sub

    p = verb("reduce", run_reduce, "normal form of a tree in the free regular Hom-group")
    p.add_argument("tree")
    p.add_argument("--strict", action="store_true",
                   help="apply only the eight literal redex shapes (LAL, RAL, LDL, RDL, DL1 to DL4), no GEN rules")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--strategy", default="leftmost", help="leftmost, rightmost or random:SEED")
    p.add_argument("--canonical", action="store_true", help="print the left-comb canonical form")

    p = verb("check", run_check, "verify the axioms of a structure")
    p.add_argument("kind", choices=["group", "ring", "module", "bilinear"])
    p.add_argument("file", help="JSON file or catalog name")
    p.add_argument("--type", type=int, choices=[1, 2], default=None)
    p.add_argument("--side", choices=["left", "right", "bi"], default=None)

    p = verb("construct", run_construct, "build a structure and print its JSON")
    p.add_argument("target", choices=["catalog", "product", "hom", "quotient", "compatible-ring", "end-ring",
                                      "twist-ring", "group-ring"])
    p.add_argument("inputs", nargs="*")
    p.add_argument("--subset", help="members of the normal Hom-subgroup, e.g. 0,3")
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--sigma", help="group endomorphism for group-ring")
    p.add_argument("-p", type=int, default=2, help="coefficient prime for group-ring")
    p.add_argument("--type", type=int, choices=[1, 2], default=None)

    p = verb("lattice", run_lattice, "normal Hom-subgroup lattice")
    p.add_argument("file")

    for name, handler in (("tensor", run_tensor), ("report", run_report)):
        p = verb(name, handler, "tensor product candidates" if name == "tensor" else "structural reports")
        if name == "report":
            p.add_argument("target", choices=["lattice", "abelianize", "tensor", "simplicity", "decompose"])
        p.add_argument("inputs", nargs="+")
        which = p.add_mutually_exclusive_group()
        which.add_argument("--oracle", action="store_true", help="presentation-based candidate (default)")
        which.add_argument("--paper", "--abelianized", dest="abelianized", action="store_true",
                           help="product of the abelianizations")
        p.add_argument("--target", dest="targets", action="append", default=None,
                       help="target Hom-group for the universal property, repeatable")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except HomcatError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {json.dumps(exc.witness, default=str)}", file=sys.stderr)
        return exc.exit_code
