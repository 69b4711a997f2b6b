"""Command-line interface. Every subcommand prints one JSON report.

Exit codes: 0 when all checks pass, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Callable

from . import catalyst, families, hierarchy, synth
from .circuit import Circuit, parse, to_exact, to_tableau
from .errors import MismatchError, NotNilpotent, PauliPeriodError
from .f2linalg import F2Matrix, nilpotency_index
from .pauli import pauli_periodicity, predicted_cu_level


def _budget_default() -> int:
    env = os.environ.get("PAULIPERIOD_BUDGET")
    return int(env) if env else hierarchy.DEFAULT_BUDGET


def _read_circuit(path: str) -> Circuit:
    if path == "-":
        return parse(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


class _Failed(Exception):
    """A report was produced but one of its checks failed."""


def cmd_analyze(args) -> dict:
    c = _read_circuit(args.circuit)
    t = to_tableau(c)
    n_mat = t.f + F2Matrix.identity(2 * c.width)
    try:
        nil = nilpotency_index(n_mat)
    except NotNilpotent:
        nil = None
    m = pauli_periodicity(t)
    pred = predicted_cu_level(t)
    return {
        "width": c.width,
        "gates": len(c),
        "m": m,
        "pauli_periodic": m is not None,
        "predicted_cu_level": pred.level if pred else None,
        "strict": pred.strict if pred else None,
        "unipotent": nil is not None,
        "nilpotency_index": nil,
        "bound": families.periodicity_bound(c.width),
    }


def cmd_level(args) -> dict:
    c = _read_circuit(args.circuit)
    v = hierarchy.exact_level(to_exact(c), args.cap, args.budget)
    return {
        "level": v.level,
        "above_cap": v.above_cap,
        "cap": v.cap,
        "witness": list(v.witness) if v.witness is not None else None,
        "leaves": v.leaves,
    }


def cmd_verify_jump(args) -> dict:
    c = _read_circuit(args.circuit)
    try:
        return hierarchy.verify_controlled_jump(c, args.cap, args.budget).as_dict()
    except MismatchError as exc:
        raise _Failed(str(exc)) from exc


def cmd_family(args) -> str:
    return families.FAMILIES[args.name](args.n).serialize()


def cmd_synth(args) -> dict:
    c = _read_circuit(args.circuit)
    out, report = synth.synth_jumped(c)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out.serialize())
    result = report.as_dict()
    result["circuit"] = out.serialize()
    if not report.verified:
        raise _Failed(json.dumps(result))
    return result


def cmd_search(args) -> dict:
    seed = args.seed_pos if args.seed_pos is not None else args.seed
    report = families.search_max_periodicity(args.n, args.trials, seed).as_dict()
    if not report["passed"]:
        raise _Failed(json.dumps(report))
    return report


def cmd_catalyst(args) -> dict:
    c = _read_circuit(args.circuit)
    target = catalyst.StateVector.random(c.width, seed=args.seed)
    state, prob = catalyst.prepare_catalyst(c, args.k, target)
    kick = catalyst.kickback(state, c, args.k).as_dict()
    result = {"k": args.k, "success_prob": prob, "kickback": kick}
    if not kick["passed"]:
        raise _Failed(json.dumps(result))
    return result


def cmd_appendix_check(args) -> dict:
    report = families.appendix_check(args.n).as_dict()
    if not report["passed"]:
        raise _Failed(json.dumps(report))
    return report


COMMANDS: dict[str, Callable] = {
    "analyze": cmd_analyze,
    "level": cmd_level,
    "verify-jump": cmd_verify_jump,
    "family": cmd_family,
    "synth": cmd_synth,
    "search": cmd_search,
    "catalyst": cmd_catalyst,
    "appendix-check": cmd_appendix_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=6, help="highest hierarchy level probed")
    common.add_argument("--budget", type=int, default=None, help="oracle leaf budget")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--pretty", action="store_true", help="indent JSON output")

    parser = argparse.ArgumentParser(prog="pauliperiod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("analyze", "periodicity and predicted controlled level"),
        ("level", "exact hierarchy level of a circuit"),
        ("verify-jump", "check the controlled gate sits at level m + 2"),
        ("synth", "Clifford+T circuit for the controlled circuit"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("circuit", nargs="?", default="-", help="circuit file, '-' for stdin")
        if name == "synth":
            p.add_argument("-o", "--output", help="also write the circuit to this file")

    p = sub.add_parser("family", parents=[common], help="print a family circuit")
    p.add_argument("name", choices=sorted(families.FAMILIES))
    p.add_argument("n", type=int)

    p = sub.add_parser("search", parents=[common], help="random periodicity search")
    p.add_argument("n", type=int)
    p.add_argument("trials", type=int)
    p.add_argument("seed_pos", type=int, nargs="?", default=None, metavar="seed")

    p = sub.add_parser("catalyst", parents=[common], help="prepare a catalyst and kick back")
    p.add_argument("circuit")
    p.add_argument("k", type=int)

    p = sub.add_parser("appendix-check", parents=[common], help="closed-form sch(n) matrix check")
    p.add_argument("n", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = _budget_default()
    indent = 2 if args.pretty else None
    start = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
    except _Failed as exc:
        print(json.dumps({"subcommand": args.command, "error": "CheckFailed", "message": str(exc)}, indent=indent))
        return 1
    except (PauliPeriodError, ValueError, OSError) as exc:
        print(
            json.dumps({"subcommand": args.command, "error": type(exc).__name__, "message": str(exc)}, indent=indent),
            file=sys.stderr,
        )
        return 2
    if isinstance(result, str):
        sys.stdout.write(result)
        return 0
    inputs = {k: v for k, v in vars(args).items() if k not in ("command", "pretty")}
    report = {
        "subcommand": args.command,
        "inputs": inputs,
        "results": result,
        "timing_s": round(time.perf_counter() - start, 6),
    }
    print(json.dumps(report, indent=indent))
    return 0


if __name__ == "__main__":
    sys.exit(main())
