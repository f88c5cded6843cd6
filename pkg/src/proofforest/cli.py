"""Command-line front end.

Exit codes: 0 success (``prove``: provable; ``verify``: all checks pass),
1 negative outcome, 2 malformed input, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import sys

from .formula import ParseError, format_sequent, parse_sequent
from .gfp_calc import (
    InternalInvariantError,
    fin_term_to_dict,
    format_fin_term,
    synthesize,
    synthesize_horn,
)
from .forest import approx_equal, expand_solution, forest_to_dot, format_forest, interp_unfold
from .lambda_bar import alpha_key, format_term, parse_term, typecheck
from .oracle import bfs_prove
from .search import count_proofs, enumerate_proofs, member, provable

SIZE_METRIC_HELP = (
    "term size = number of term constructors "
    "(each lambda and each application node counts 1)"
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proofforest",
        description=(
            "Compute and query the complete proof-search space of sequents "
            "of implicational intuitionistic logic."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="print the finitary solution-space term")
    solve.add_argument("sequent")
    solve.add_argument("--horn", action="store_true", help="use the Horn-fragment map")
    solve.add_argument("--format", choices=("text", "json"), default="text")

    prove = sub.add_parser("prove", help="decide provability (exit 0/1)")
    prove.add_argument("sequent")

    enum = sub.add_parser("enumerate", help="list finite proofs, one per line")
    enum.add_argument("sequent")
    enum.add_argument("--max-size", type=int, required=True, help=SIZE_METRIC_HELP)
    enum.add_argument("--limit", type=int, default=None)

    count = sub.add_parser("count", help="count finite proofs up to a size bound")
    count.add_argument("sequent")
    count.add_argument("--max-size", type=int, required=True, help=SIZE_METRIC_HELP)

    expand = sub.add_parser("expand", help="print a depth-bounded forest approximant")
    expand.add_argument("sequent")
    expand.add_argument("--depth", type=int, required=True)
    expand.add_argument("--dot", metavar="FILE", default=None, help="also write DOT output")

    check = sub.add_parser("check", help="membership of a candidate proof term")
    check.add_argument("sequent")
    check.add_argument("--term", required=True)

    verify = sub.add_parser(
        "verify",
        help="check expansion/interpretation depth equality (and optionally the oracle)",
    )
    verify.add_argument("sequent")
    verify.add_argument("--depth", type=int, required=True)
    verify.add_argument("--oracle", action="store_true")
    verify.add_argument("--max-size", type=int, default=10, help=SIZE_METRIC_HELP)

    return parser


def _cmd_solve(args) -> int:
    sequent = parse_sequent(args.sequent)
    term = synthesize_horn(sequent) if args.horn else synthesize(sequent)
    if args.format == "json":
        payload = {
            "schema": 1,
            "command": "solve",
            "sequent": format_sequent(sequent),
            "horn": args.horn,
            "term": fin_term_to_dict(term),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(format_fin_term(term))
    return 0


def _cmd_prove(args) -> int:
    sequent = parse_sequent(args.sequent)
    if provable(sequent):
        print("provable")
        return 0
    print("unprovable")
    return 1


def _cmd_enumerate(args) -> int:
    sequent = parse_sequent(args.sequent)
    for term in enumerate_proofs(sequent, args.max_size, args.limit):
        print(format_term(term))
    return 0


def _cmd_count(args) -> int:
    sequent = parse_sequent(args.sequent)
    print(count_proofs(sequent, args.max_size))
    return 0


def _cmd_expand(args) -> int:
    sequent = parse_sequent(args.sequent)
    approx = expand_solution(sequent, args.depth)
    print(format_forest(approx))
    if args.dot is not None:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(forest_to_dot(approx) + "\n")
    return 0


def _cmd_check(args) -> int:
    sequent = parse_sequent(args.sequent)
    candidate = parse_term(args.term)
    verdict = member(sequent.context, candidate, synthesize(sequent))
    types = typecheck(sequent.context, candidate) == sequent.goal
    if verdict != types:
        raise InternalInvariantError(
            "membership verdict disagrees with the typing relation"
        )
    print("member" if verdict else "not a member")
    return 0


def _cmd_verify(args) -> int:
    sequent = parse_sequent(args.sequent)
    if args.depth < 1:
        raise ValueError("--depth must be at least 1")
    term = synthesize(sequent)
    ok = True
    depth_ok = all(
        approx_equal(expand_solution(sequent, d), interp_unfold(term, d))
        for d in range(1, args.depth + 1)
    )
    ok &= depth_ok
    print(f"depth equality (1..{args.depth}): {'PASS' if depth_ok else 'FAIL'}")
    if args.oracle:
        engine = {alpha_key(t) for t in enumerate_proofs(sequent, args.max_size)}
        reference = {alpha_key(t) for t in bfs_prove(sequent, args.max_size)}
        oracle_ok = engine == reference
        ok &= oracle_ok
        print(
            f"oracle agreement (size <= {args.max_size}): "
            f"{'PASS' if oracle_ok else 'FAIL'}"
        )
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


_COMMANDS = {
    "solve": _cmd_solve,
    "prove": _cmd_prove,
    "enumerate": _cmd_enumerate,
    "count": _cmd_count,
    "expand": _cmd_expand,
    "check": _cmd_check,
    "verify": _cmd_verify,
}


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InternalInvariantError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
