"""Command-line front end.

Subcommands:
    scc        build a standard cycle structure and optionally emit it as JSON
    verify     run braid / morphism checks on a tensor file
    ops-check  run the operator identity suite for given parameters
    classify   report the classification row of a tensor file
    family     build classified families (currently: nonroot)
    fixtures   emit the built-in n = 3 fixtures

Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or parse
errors.  Rationals are written "a/b" (or "a"); JSON documents carry
"schema": 1.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .errors import QcycleError, ParseError, ValidationError
from .series import parse_rational
from .standard import StandardCycleParams, build_standard_cycle
from .tensor import QCycleStructure, is_coalgebra_morphism
from .solution import (
    build_solution,
    check_braid_full,
    check_braid_on_map,
    check_braid_reduced,
    is_coalgebra_endomorphism,
)
from .operators import build_context, identity_suite
from .families import NonRootFamilyInput, build_nonroot_family, classify, fixtures_n3

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _parse_rational_list(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    return [parse_rational(part.strip()) for part in text.split(",")]


def _load_structure(path: str) -> QCycleStructure:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read tensor file {path}: {exc}") from exc
    return QCycleStructure.from_payload(payload)


def _emit_json(path: str, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _cmd_scc(args) -> int:
    params = StandardCycleParams.from_tail(
        args.n, args.v0, _parse_rational_list(args.params)
    )
    bundle = build_standard_cycle(params)
    structure = QCycleStructure.involutive(bundle.tensor)
    report = check_braid_reduced(structure)
    print(f"standard cycle: n={args.n} v0={args.v0} params={args.params!r}")
    print(f"braid (reduced): {'pass' if report else 'FAIL'}")
    if args.emit_json:
        payload = structure.to_payload()
        payload.update(
            {
                "v0": params.degree,
                "params": {str(v): str(c) for v, c in params.coeffs},
                "f": bundle.row.to_payload(),
                "g": bundle.column.to_payload(),
                "G": bundle.table.to_payload(),
            }
        )
        _emit_json(args.emit_json, payload)
        print(f"wrote {args.emit_json}")
    return EXIT_OK if report else EXIT_CHECK_FAILED


def _cmd_verify(args) -> int:
    structure = _load_structure(args.tensor)
    results = {}
    for name, tensor in (("p", structure.p), ("d", structure.d)):
        results[f"morphism_{name}"] = bool(is_coalgebra_morphism(tensor))
    reduced = check_braid_reduced(structure)
    results["braid_reduced"] = bool(reduced)
    if args.full:
        results["braid_full"] = bool(check_braid_full(structure))
    if args.solution:
        try:
            smap = build_solution(structure)
            results["solution_braid"] = check_braid_on_map(smap)
            results["solution_coalgebra_endo"] = is_coalgebra_endomorphism(smap)
            results["solution_bijective"] = smap.determinant() != 0
            results["solution_involutive"] = smap.compose(smap).is_identity()
        except QcycleError as exc:
            results["solution_braid"] = False
            print(f"solution construction failed: {exc}")
    ok = all(v for k, v in results.items() if k != "solution_involutive")
    for key, value in results.items():
        if key == "solution_involutive":
            print(f"{key}: {value}")
        else:
            print(f"{key}: {'pass' if value else 'FAIL'}")
    if not reduced and reduced.violations:
        for v in reduced.violations[:5]:
            print(f"  violation family={v[0]} (i,j,k)=({v[1]},{v[2]},{v[3]}) lhs={v[5]} rhs={v[6]}")
    if args.report_json:
        _emit_json(args.report_json, {"schema": 1, "results": results})
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_ops_check(args) -> int:
    params = StandardCycleParams.from_tail(
        args.n, args.v0, _parse_rational_list(args.params)
    )
    bundle = build_standard_cycle(params)
    ctx = build_context(bundle, order=args.n + args.pad)
    report = identity_suite(ctx, rng=random.Random(args.seed))
    for line in report.lines():
        print(line)
    print(f"identity suite: {'all pass' if report.ok else 'FAILURES PRESENT'}")
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _cmd_classify(args) -> int:
    structure = _load_structure(args.tensor)
    verdict = classify(structure)
    print(f"row: {verdict.row.value}")
    print(f"status: {verdict.status}")
    print(f"notes: {verdict.notes}")
    return EXIT_OK


def _cmd_family(args) -> int:
    if args.kind != "nonroot":
        raise ValidationError(f"unknown family kind: {args.kind}")
    lambdas = _parse_rational_list(args.lambdas)
    inp = NonRootFamilyInput(args.n, lambdas, parse_rational(args.mu))
    structure = build_nonroot_family(inp)
    report = check_braid_reduced(structure)
    print(f"nonroot family: n={args.n} lambda_1={lambdas[0]} mu={inp.mu}")
    print(f"braid (reduced): {'pass' if report else 'FAIL'}")
    print(f"involutive: {structure.is_involutive()}")
    if args.emit_json:
        _emit_json(args.emit_json, structure.to_payload())
        print(f"wrote {args.emit_json}")
    return EXIT_OK if report else EXIT_CHECK_FAILED


def _cmd_fixtures(args) -> int:
    if args.n != 3:
        raise ValidationError("fixtures are defined for n = 3 only")
    out_dir = Path(args.emit)
    out_dir.mkdir(parents=True, exist_ok=True)
    for index, fixture in enumerate(fixtures_n3()):
        path = out_dir / f"{fixture.name}_{index}.json"
        payload = fixture.structure.to_payload()
        payload["parameters"] = {k: str(v) for k, v in fixture.parameters.items()}
        _emit_json(str(path), payload)
        print(f"wrote {path}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcycle",
        description="exact construction and verification of q-cycle coalgebra structures",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scc", help="build a standard cycle structure")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v0", type=int, required=True)
    p.add_argument("--params", default="", help='comma list "p_{v0+1},...,p_{n-1}" (p_{v0} is 1)')
    p.add_argument("--emit-json", dest="emit_json")
    p.set_defaults(handler=_cmd_scc)

    p = sub.add_parser("verify", help="verify a tensor file")
    p.add_argument("--tensor", required=True)
    p.add_argument("--full", action="store_true", help="also run the all-levels braid check")
    p.add_argument("--solution", action="store_true", help="build the solution map and check it")
    p.add_argument("--report-json", dest="report_json")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("ops-check", help="run the operator identity suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v0", type=int, required=True)
    p.add_argument("--params", default="")
    p.add_argument("--pad", type=int, default=2, help="extra truncation beyond n (default 2)")
    p.add_argument("--seed", type=int, default=20240)
    p.set_defaults(handler=_cmd_ops_check)

    p = sub.add_parser("classify", help="classification row of a tensor file")
    p.add_argument("--tensor", required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("family", help="build a classified family")
    p.add_argument("kind", choices=["nonroot"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambdas", required=True, help='comma list "lambda_1,...,lambda_{n-1}"')
    p.add_argument("--mu", required=True)
    p.add_argument("--emit-json", dest="emit_json")
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("fixtures", help="emit the built-in n = 3 fixtures")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--emit", required=True, help="output directory")
    p.set_defaults(handler=_cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QcycleError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
