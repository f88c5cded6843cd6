"""Independent brute-force reference prover.

Enumerates all typable terms up to a size bound directly from the two typing
rules, with no shared logic with synthesis or search; used to cross-check the
engine.  Desk-scale only.
"""

from __future__ import annotations

from .formula import Atom, Context, Formula, Imp, Sequent, decompose
from .lambda_bar import (
    App,
    Lam,
    LambdaBarTerm,
    alpha_canonical,
    alpha_key,
    term_size,
    typecheck,
)


class OracleOverflowError(RuntimeError):
    """The enumeration produced more candidates than the explicit cap."""


def _fresh(ctx: Context) -> str:
    n = 0
    while True:
        n += 1
        name = f"v{n}"
        if name not in ctx:
            return name


def bfs_prove(
    sequent: Sequent, max_size: int, node_cap: int = 2_000_000
) -> set[LambdaBarTerm]:
    """All proofs of the sequent with size at most ``max_size``, as an
    alpha-canonical set.

    An implication goal is provable only by a lambda over its antecedent; an
    atomic goal only by fully applying a context variable whose formula
    targets that atom, with every argument proved recursively within the
    remaining size budget.  Exceeding ``node_cap`` generated candidates raises
    rather than truncating silently.
    """
    if max_size < 1:
        raise ValueError("max_size must be positive")
    produced = [0]
    memo: dict = {}

    def charge(n: int) -> None:
        produced[0] += n
        if produced[0] > node_cap:
            raise OracleOverflowError(
                f"more than {node_cap} candidate terms generated"
            )

    def prove(ctx: Context, goal: Formula, budget: int) -> tuple[LambdaBarTerm, ...]:
        if budget < 1:
            return ()
        key = (ctx.bindings, goal, budget)
        if key in memo:
            return memo[key]
        results: list[LambdaBarTerm] = []
        match goal:
            case Imp(antecedent, consequent):
                var = _fresh(ctx)
                inner_ctx = ctx.extend(var, antecedent)
                for body in prove(inner_ctx, consequent, budget - 1):
                    results.append(Lam(var, antecedent, body))
            case Atom(name):
                for head, formula in ctx:
                    spine, target = decompose(formula)
                    if target != name:
                        continue
                    for args in arg_tuples(ctx, spine, budget - 1):
                        results.append(App(head, args))
        charge(len(results))
        memo[key] = tuple(results)
        return memo[key]

    def arg_tuples(
        ctx: Context, spine: tuple[Formula, ...], budget: int
    ) -> list[tuple[LambdaBarTerm, ...]]:
        if not spine:
            return [()]
        first, rest = spine[0], spine[1:]
        out: list[tuple[LambdaBarTerm, ...]] = []
        for t in prove(ctx, first, budget - len(rest)):
            for more in arg_tuples(ctx, rest, budget - term_size(t)):
                out.append((t, *more))
        return out

    raw = prove(sequent.context, sequent.goal, max_size)
    canonical: dict = {}
    for t in raw:
        if typecheck(sequent.context, t) != sequent.goal:
            continue
        c = alpha_canonical(t, sequent.context.names())
        canonical[alpha_key(c)] = c
    return set(canonical.values())
