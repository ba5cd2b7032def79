"""Command line interface.

Exit codes: 0 feasible (or verification passed), 2 infeasible, 1 malformed
input or error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal
from pathlib import Path
from typing import Any, TextIO

from . import report
from .certify import (
    DEFAULT_ENUM_LIMIT,
    DEFAULT_SUBSET_LIMIT,
    check_condition_alpha,
    check_condition_beta,
    enumerate_feasible_trees,
)
from .errors import LimitExceeded
from .generate import random_instance
from .instance import (
    Instance,
    MalformedInstance,
    dumps_instance,
    loads_instance,
    parse_instance,
    scale_weights,
)
from .solve import solve

EXIT_FEASIBLE = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_MISMATCH = 3


class _Failure(Exception):
    def __init__(self, reason: str, code: int = EXIT_ERROR) -> None:
        super().__init__(reason)
        self.code = code


def _read_instance(path: str) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInstance(f"cannot read {path}: {exc.strerror}") from exc
    return loads_instance(text)


def _emit(out: TextIO, args: argparse.Namespace, instance: Instance | None, doc: dict[str, Any]) -> int:
    if args.output == "dot" and instance is not None:
        out.write(report.to_dot(instance, doc))
    else:
        out.write(report.dumps(doc))
    return {"feasible": EXIT_FEASIBLE, "infeasible": EXIT_INFEASIBLE}.get(doc["status"], EXIT_ERROR)


def cmd_solve(args: argparse.Namespace, out: TextIO) -> int:
    instance = _read_instance(args.instance)
    doc = report.solve_doc(instance, solve(instance))
    if args.certify:
        failed = [c for c in report.verify_doc(instance, doc) if not c.ok]
        if failed:
            raise _Failure("self-verification failed: " + "; ".join(c.detail for c in failed))
    return _emit(out, args, instance, doc)


def _condition_json(cert: Any) -> dict[str, Any]:
    if cert is None:
        return {"holds": True}
    return {"holds": False, "S": list(cert.witness_set), "lhs": cert.lhs, "rhs": cert.rhs}


def cmd_check_conditions(args: argparse.Namespace, out: TextIO) -> int:
    instance = _read_instance(args.instance)
    g, bounds = instance.graph, instance.bounds
    alpha = check_condition_alpha(g, bounds, args.limit_subset)
    beta = check_condition_beta(g, bounds, args.limit_subset)
    first = alpha or beta
    doc: dict[str, Any] = {"status": "feasible" if first is None else "infeasible"}
    doc["conditions"] = {"alpha": _condition_json(alpha), "beta": _condition_json(beta)}
    if first is not None:
        doc["certificate"] = first.to_json()
    return _emit(out, args, instance, doc)


def cmd_oracle(args: argparse.Namespace, out: TextIO) -> int:
    instance = _read_instance(args.instance)
    verdict = enumerate_feasible_trees(
        instance.graph, instance.bounds, instance.weights, args.limit_enum, args.limit_subset
    )
    return _emit(out, args, instance, report.oracle_doc(instance, verdict))


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    try:
        doc = json.loads(Path(args.result).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise _Failure(f"cannot read result {args.result}: {exc}") from exc
    try:
        instance = _read_instance(args.instance)
    except MalformedInstance as exc:
        ok = isinstance(doc, dict) and doc.get("status") == "malformed"
        checks = [report.Check("malformed", ok, "" if ok else f"instance is malformed: {exc}")]
    else:
        checks = report.verify_doc(instance, doc)
    ok = all(c.ok for c in checks)
    out.write(
        report.dumps({"ok": ok, "checks": [{"check": c.name, "ok": c.ok, "detail": c.detail} for c in checks]})
    )
    return EXIT_FEASIBLE if ok else EXIT_MISMATCH


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    try:
        instance, reached = random_instance(
            args.n,
            seed=args.seed,
            m=args.m,
            edge_prob=args.edge_prob,
            stable_size=args.stable_size,
            alpha_max=args.alpha_max,
            beta_max=args.beta_max,
            weight_range=tuple(args.weight_range),
            connected=args.connected,
        )
    except ValueError as exc:
        raise _Failure(str(exc)) from exc
    if reached < args.stable_size:
        print(f"note: stable set has size {reached}, below the requested {args.stable_size}", file=sys.stderr)
    out.write(dumps_instance(instance))
    return EXIT_FEASIBLE


def cmd_scale(args: argparse.Namespace, out: TextIO) -> int:
    try:
        data = json.loads(Path(args.instance).read_text(encoding="utf-8"), parse_float=Decimal)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInstance(f"cannot read {args.instance}: {exc}") from exc
    out.write(dumps_instance(parse_instance(scale_weights(data, args.scale))))
    return EXIT_FEASIBLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit-subset", type=int, default=argparse.SUPPRESS,
                        help=f"exhaustive limit on constrained vertices (default {DEFAULT_SUBSET_LIMIT})")
    common.add_argument("--limit-enum", type=int, default=argparse.SUPPRESS,
                        help=f"exhaustive limit on vertices for tree enumeration (default {DEFAULT_ENUM_LIMIT})")
    common.add_argument("--output", choices=("json", "dot"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="boundtree",
        description="Spanning trees with degree bounds on a stable vertex set.",
    )
    parser.add_argument("--limit-subset", type=int, default=DEFAULT_SUBSET_LIMIT)
    parser.add_argument("--limit-enum", type=int, default=DEFAULT_ENUM_LIMIT)
    parser.add_argument("--output", choices=("json", "dot"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="find a cheapest feasible tree or a certificate")
    p.add_argument("instance")
    p.add_argument("--certify", action="store_true", help="re-verify the result before printing it")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check-conditions", parents=[common], help="evaluate both counting conditions exhaustively")
    p.add_argument("instance")
    p.set_defaults(func=cmd_check_conditions)

    p = sub.add_parser("oracle", parents=[common], help="brute force over all spanning trees")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="re-check a result file against its instance")
    p.add_argument("instance")
    p.add_argument("result")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="print a random instance")
    p.add_argument("--n", type=int, required=True)
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--m", type=int)
    size.add_argument("--edge-prob", type=float)
    p.add_argument("--stable-size", type=int, default=0)
    p.add_argument("--alpha-max", type=int, default=1)
    p.add_argument("--beta-max", type=int, default=3)
    p.add_argument("--weight-range", type=int, nargs=2, metavar=("LO", "HI"), default=(0, 0))
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("scale", parents=[common], help="convert decimal weights to integers by an exact factor")
    p.add_argument("instance")
    p.add_argument("--scale", required=True, help="decimal factor, e.g. 100")
    p.set_defaults(func=cmd_scale)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except MalformedInstance as exc:
        out.write(report.dumps(report.malformed_doc(str(exc))))
        return EXIT_ERROR
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
