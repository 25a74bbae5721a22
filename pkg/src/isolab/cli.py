"""Command-line front end.

Thin adapters only: parse JSON, dispatch to the computational modules,
emit a deterministic report.  Exit codes: 0 success, 1 input validation
failure, 2 a mathematical check failed, 3 internal error.

Reports echo the orientation sign in use; the environment variable
ISOLAB_SEED, when set, overrides --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Mapping

from .exact_algebra import InternalError, UniPoly, ValidationError
from . import lie_isogeny as li
from . import spectral_base as sb
from . import covers_prym as cp
from . import moduli_invariants as mi
from . import serialize as ser
from .verify import run_all

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CHECK_FAILED = 2
EXIT_INTERNAL = 3

_MISSING = object()


class _Input:
    """Field-path-aware accessor over a parsed JSON document."""

    def __init__(self, doc: Any, path: str = ""):
        if not isinstance(doc, Mapping):
            raise ValidationError(f"{path or 'input'}: expected a JSON object")
        self.doc = doc
        self.path = path

    def _fail(self, field: str, message: str):
        where = f"{self.path}.{field}" if self.path else field
        raise ValidationError(f"{where}: {message}")

    def raw(self, field: str, default=_MISSING):
        if field not in self.doc:
            if default is not _MISSING:
                return default
            self._fail(field, "missing required field")
        return self.doc[field]

    def poly(self, field: str, var: str = "z") -> UniPoly:
        try:
            return ser.poly_from_json(self.raw(field), var=var)
        except ValidationError as exc:
            self._fail(field, str(exc))

    def matrix(self, field: str):
        try:
            return ser.matrix_from_json(self.raw(field))
        except ValidationError as exc:
            self._fail(field, str(exc))

    def integer(self, field: str) -> int:
        value = self.raw(field)
        if isinstance(value, bool) or not isinstance(value, int):
            try:
                return int(str(value))
            except ValueError:
                self._fail(field, "expected an integer")
        return value

    def text(self, field: str) -> str:
        return str(self.raw(field))

    def fiber(self, field: str) -> cp.FiberModel:
        try:
            return ser.fiber_from_json(self.raw(field))
        except ValidationError as exc:
            self._fail(field, str(exc))

    def divisor(self, field: str, kind: str) -> cp.Divisor:
        try:
            return ser.divisor_from_json(self.raw(field), kind)
        except ValidationError as exc:
            self._fail(field, str(exc))


def _load_document(args) -> _Input:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ValidationError(f"cannot read input file: {exc}") from exc
    try:
        return _Input(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"input is not valid JSON: {exc}") from exc


def _emit(args, payload: dict) -> None:
    envelope = {"command": args.command_path, "orientation": args.orientation, **payload}
    print(json.dumps(envelope, sort_keys=True, indent=2))


# -- iso ----------------------------------------------------------------------


def cmd_iso_apply(args) -> int:
    doc = _load_document(args)
    which = doc.text("map")
    if which == "iso2":
        result = li.iso2_group(doc.matrix("a1"), doc.matrix("a2"))
    elif which == "d_iso2":
        result = li.d_iso2(doc.matrix("a1"), doc.matrix("a2"))
    elif which == "iso3":
        result = li.iso3_group(doc.matrix("a"))
    elif which == "d_iso3":
        result = li.d_iso3(doc.matrix("a"))
    else:
        raise ValidationError("map: expected one of iso2, iso3, d_iso2, d_iso3")
    _emit(args, {"result": ser.matrix_to_json(result)})
    return EXIT_OK


def cmd_iso_alpha(args) -> int:
    doc = _load_document(args)
    adot = doc.matrix("a")
    alpha = li.alpha_block(adot)
    higgs = li.build_block_higgs_so33(adot)
    _emit(
        args,
        {
            "alpha": ser.matrix_to_json(alpha),
            "block_field": ser.matrix_to_json(higgs.as_matrix()),
        },
    )
    return EXIT_OK


def cmd_iso_hodge(args) -> int:
    doc = _load_document(args)
    gram = doc.matrix("q")
    split = li.hodge_split(li.QuadraticForm(gram), orientation=args.orientation)
    _emit(
        args,
        {
            "star": ser.matrix_to_json(split.star),
            "plus_basis": [[ser.scalar_to_json(c) for c in v] for v in split.plus_basis],
            "minus_basis": [[ser.scalar_to_json(c) for c in v] for v in split.minus_basis],
            "q_plus": ser.matrix_to_json(split.q_plus.gram),
            "q_minus": ser.matrix_to_json(split.q_minus.gram),
        },
    )
    return EXIT_OK


# -- base ---------------------------------------------------------------------


def cmd_base_map_so4(args) -> int:
    doc = _load_document(args)
    pair = sb.BaseSL2Pair(doc.poly("a1"), doc.poly("a2"))
    result = sb.so4_base(pair, sign=args.orientation)
    _emit(
        args,
        {
            "b1": ser.poly_to_json(result.b1),
            "pf": ser.poly_to_json(result.pf),
            "quartic": ser.poly_to_json(result.quartic()),
        },
    )
    return EXIT_OK


def cmd_base_map_so6(args) -> int:
    doc = _load_document(args)
    base = sb.BaseSL4(doc.poly("a2"), doc.poly("a3"), doc.poly("a4"))
    result = sb.so6_base(base, sign=args.orientation)
    _emit(
        args,
        {
            "b1": ser.poly_to_json(result.b1),
            "b2": ser.poly_to_json(result.b2),
            "pf": ser.poly_to_json(result.pf),
            "sextic": ser.poly_to_json(result.sextic()),
        },
    )
    return EXIT_OK


def cmd_base_oracle(args) -> int:
    doc = _load_document(args)
    kind = doc.text("kind")
    if kind == "so4":
        pair = sb.BaseSL2Pair(doc.poly("a1"), doc.poly("a2"))
        curve = sb.so4_oracle(pair)
        matches = curve == sb.so4_base(pair, sign=args.orientation).quartic()
    elif kind == "so6":
        base = sb.BaseSL4(doc.poly("a2"), doc.poly("a3"), doc.poly("a4"))
        curve = sb.so6_oracle(base)
        matches = curve == sb.so6_base(base, sign=args.orientation).sextic()
    else:
        raise ValidationError("kind: expected so4 or so6")
    _emit(args, {"curve": ser.poly_to_json(curve), "matches_base_map": matches})
    return EXIT_OK if matches else EXIT_CHECK_FAILED


def cmd_base_genericity(args) -> int:
    doc = _load_document(args)
    base = sb.BaseSL4(doc.poly("a2"), doc.poly("a3"), doc.poly("a4"))
    report = sb.genericity_report(base)
    _emit(
        args,
        {
            "gcd_a3_vs_a2sq_minus_a4": ser.poly_to_json(report.gcd_loose),
            "gcd_a3_vs_a2sq_minus_4a4": ser.poly_to_json(report.gcd_tight),
            "jacobian_full_rank": report.jacobian_full_rank,
            "generic": report.generic,
            "witness": report.witness,
            "notes": list(report.notes),
        },
    )
    return EXIT_OK


# -- cover --------------------------------------------------------------------


def cmd_cover_product(args) -> int:
    doc = _load_document(args)
    pf = cp.fiber_product(doc.fiber("fiber1"), doc.fiber("fiber2"))
    inv = pf.product_involution()
    _emit(
        args,
        {
            "product": ser.pair_fiber_to_json(pf),
            "involution": [
                {"from": list(k), "to": list(v)} for k, v in sorted(inv.items())
            ],
        },
    )
    return EXIT_OK


def cmd_cover_sym(args) -> int:
    doc = _load_document(args)
    fiber = doc.fiber("fiber")
    pf = cp.self_product_minus_diagonal(fiber)
    sym = cp.symmetrize(pf)
    _emit(
        args,
        {
            "self_product": ser.pair_fiber_to_json(pf),
            "symmetrized": ser.sym_fiber_to_json(sym),
        },
    )
    return EXIT_OK


def cmd_cover_ramcheck(args) -> int:
    doc = _load_document(args)
    fiber = doc.fiber("fiber")
    ok, ledger = cp.ramification_check(fiber)
    rendered = {}
    for name, div in ledger.items():
        kind = "sym" if name == "sym_cover_ramification" else (
            "point" if name == "base_ramification" else "ordered"
        )
        rendered[name] = ser.divisor_to_json(div, kind)
    _emit(args, {"identity_holds": ok, "ledger": rendered})
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# -- divisor ------------------------------------------------------------------


def cmd_divisor_push(args) -> int:
    doc = _load_document(args)
    fiber = doc.fiber("fiber")
    divisor = doc.divisor("divisor", "point")
    pushed = cp.correspondence_push(divisor, fiber)
    _emit(args, {"divisor": ser.divisor_to_json(pushed, "sym")})
    return EXIT_OK


def _norm_context(doc: _Input, covering: str):
    if covering == "pi":
        return doc.fiber("fiber"), doc.divisor("divisor", "point")
    if covering == "sigma":
        fiber = doc.fiber("fiber")
        sym = cp.symmetrize(cp.self_product_minus_diagonal(fiber))
        return sym, doc.divisor("divisor", "sym")
    if covering == "sigma4":
        pf = cp.fiber_product(doc.fiber("fiber1"), doc.fiber("fiber2"))
        return pf, doc.divisor("divisor", "ordered")
    raise ValidationError("covering: expected pi, sigma, or sigma4")


def cmd_divisor_norm(args) -> int:
    doc = _load_document(args)
    covering = doc.text("covering")
    carrier, divisor = _norm_context(doc, covering)
    result = cp.norm(divisor, carrier, covering)
    kind = {"pi": "point", "sigma": "orbit", "sigma4": "orbit"}[covering]
    _emit(args, {"norm": ser.divisor_to_json(result, kind), "vanishes": result.is_zero})
    return EXIT_OK


def cmd_divisor_prym_test(args) -> int:
    doc = _load_document(args)
    covering = doc.text("covering")
    entries = doc.raw("entries")
    if not isinstance(entries, list):
        raise ValidationError("entries: expected an array of {fiber(s), divisor} objects")
    family = []
    for idx, entry in enumerate(entries):
        sub = _Input(entry, path=f"entries[{idx}]")
        family.append(_norm_context(sub, covering))
    verdict = cp.prym_test(family, covering)
    _emit(args, {"prym": verdict, "fibers_checked": len(family)})
    return EXIT_OK if verdict else EXIT_CHECK_FAILED


# -- invariants ---------------------------------------------------------------


def cmd_invariants_map(args) -> int:
    doc = _load_document(args)
    t = mi.toledo_map(mi.ToledoPair(doc.integer("d1"), doc.integer("d2"), doc.integer("g")))
    _emit(args, {"c1": t.d1, "c2": t.d2})
    return EXIT_OK


def cmd_invariants_mw(args) -> int:
    doc = _load_document(args)
    pair = mi.ToledoPair(doc.integer("d1"), doc.integer("d2"), doc.integer("g"))
    verdict = mi.milnor_wood_check(pair, doc.text("group"))
    _emit(args, {"within_bounds": verdict})
    return EXIT_OK


def cmd_invariants_lift(args) -> int:
    doc = _load_document(args)
    group = doc.text("group")
    if group == "so22":
        label = mi.ToledoPair(doc.integer("c1"), doc.integer("c2"), doc.integer("g"))
    else:
        label = (doc.integer("b1"), doc.integer("b2"))
    _emit(args, {"lifts": mi.liftable(label, group)})
    return EXIT_OK


def cmd_invariants_count(args) -> int:
    doc = _load_document(args)
    report = mi.preimage_count(doc.text("isogeny"), doc.integer("g"))
    _emit(
        args,
        {
            "stated": report.stated,
            "proof_count": report.proof_count,
            "enumerated": report.enumerated,
            "discrepancy": report.discrepancy,
            "note": report.note,
        },
    )
    return EXIT_OK


def cmd_invariants_census(args) -> int:
    doc = _load_document(args)
    group = doc.text("group")
    census = mi.component_census(group, doc.integer("g"))
    if group == "so33":
        payload = {
            "labels": [list(l) for l in census.labels],
            "image_labels": [list(l) for l in census.image_labels],
            "hitchin_components_source": census.hitchin_components_source,
            "hitchin_components_target": census.hitchin_components_target,
            "total_components": census.total_components,
        }
    else:
        payload = {
            "bound": census.bound,
            "labels": [list(l) for l in census.labels],
            "image_labels": [list(l) for l in census.image_labels],
        }
    _emit(args, payload)
    return EXIT_OK


# -- higgs --------------------------------------------------------------------


def cmd_higgs_assemble_so22(args) -> int:
    doc = _load_document(args)
    result = mi.assemble_so22(
        doc.integer("n1_degree"),
        doc.integer("n2_degree"),
        doc.poly("beta1"),
        doc.poly("gamma1"),
        doc.poly("beta2"),
        doc.poly("gamma2"),
    )
    _emit(
        args,
        {
            "alpha": ser.matrix_to_json(result.higgs.alpha),
            "field": ser.matrix_to_json(result.higgs.as_matrix()),
            "m1_degree": result.m1_degree,
            "m2_degree": result.m2_degree,
            "b1": ser.poly_to_json(result.base.b1),
            "pf": ser.poly_to_json(result.base.pf),
            "quartic": ser.poly_to_json(result.quartic),
        },
    )
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def cmd_verify_all(args) -> int:
    report = run_all(seed=args.seed, samples=args.samples)
    if args.format == "json":
        payload = report.to_json()
        payload["command"] = args.command_path
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        width = max(len(r.name) for r in report.results)
        print(f"seed {report.seed}; {report.orientation}")
        for r in report.results:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark}  {r.name.ljust(width)}  {r.detail}")
        print("all checks passed" if report.passed else "CHECKS FAILED")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


# -- wiring -------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, with_input: bool = True):
    if with_input:
        parser.add_argument("--input", help="path to a JSON input document (default: stdin)")
    parser.add_argument(
        "--orientation",
        type=int,
        choices=(1, -1),
        default=1,
        help="orientation sign used wherever a Pfaffian or determinant trivialization enters",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isolab",
        description="exact computations for the rank-2 and rank-3 orthogonal isogenies",
    )
    top = parser.add_subparsers(dest="group", required=True)

    groups = {
        "iso": (("apply", cmd_iso_apply), ("alpha", cmd_iso_alpha), ("hodge", cmd_iso_hodge)),
        "base": (
            ("map-so4", cmd_base_map_so4),
            ("map-so6", cmd_base_map_so6),
            ("oracle", cmd_base_oracle),
            ("genericity", cmd_base_genericity),
        ),
        "cover": (
            ("product", cmd_cover_product),
            ("sym", cmd_cover_sym),
            ("ramcheck", cmd_cover_ramcheck),
        ),
        "divisor": (
            ("push", cmd_divisor_push),
            ("norm", cmd_divisor_norm),
            ("prym-test", cmd_divisor_prym_test),
        ),
        "invariants": (
            ("map", cmd_invariants_map),
            ("mw", cmd_invariants_mw),
            ("lift", cmd_invariants_lift),
            ("count", cmd_invariants_count),
            ("census", cmd_invariants_census),
        ),
        "higgs": (("assemble-so22", cmd_higgs_assemble_so22),),
    }
    for group_name, commands in groups.items():
        sub = top.add_parser(group_name).add_subparsers(dest="command", required=True)
        for cmd_name, handler in commands:
            cmd_parser = sub.add_parser(cmd_name)
            _add_common(cmd_parser)
            cmd_parser.set_defaults(handler=handler, command_path=f"{group_name} {cmd_name}")

    verify = top.add_parser("verify").add_subparsers(dest="command", required=True)
    verify_all = verify.add_parser("all")
    _add_common(verify_all, with_input=False)
    verify_all.add_argument("--seed", type=int, default=0)
    verify_all.add_argument(
        "--samples", type=int, default=None, help="override per-check sample counts"
    )
    verify_all.set_defaults(handler=cmd_verify_all, command_path="verify all")
    verify_all.set_defaults(format="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "seed"):
        env_seed = os.environ.get("ISOLAB_SEED")
        if env_seed is not None:
            try:
                args.seed = int(env_seed)
            except ValueError:
                print("error: ISOLAB_SEED must be an integer", file=sys.stderr)
                return EXIT_VALIDATION
    try:
        return args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports, not raises
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
