"""Depth-bounded approximants of the (possibly infinite) search forest of a
sequent: direct corecursive expansion, interpretation of finitary terms, and
equality of approximants.

An approximant is a lambda node, a finite sum of elimination alternatives, or
a suspended leaf recording the sequent whose expansion the depth budget cut
off (plus any substitution still owed to it).  Each lambda and each sum node
costs one unit of depth; both expansion and interpretation truncate on the
same metric, so they can be compared observation by observation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Mapping

from .formula import (
    Atom,
    Formula,
    Imp,
    Sequent,
    decompose,
    format_formula,
    format_sequent,
)
from .gfp_calc import FinLam, FinTerm, FpRef, Gfp, fin_term_sequent

if TYPE_CHECKING:
    from .cocontract import ContextSubst


class InterpretationError(ValueError):
    """A fixpoint reference could not be resolved against the environment."""


@dataclass(frozen=True)
class ForestLam:
    var: str
    annotation: Formula
    body: "ForestApprox"


@dataclass(frozen=True)
class ForestSum:
    """Alternatives are (head, args) pairs; the empty sum is a dead end."""

    alternatives: tuple[tuple[str, tuple["ForestApprox", ...]], ...] = ()


@dataclass(frozen=True)
class Suspended:
    """A leaf where the depth budget ran out: the recorded sequent still needs
    expanding, under the recorded substitution if one is pending."""

    sequent: Sequent
    pending: "ContextSubst | None" = None


ForestApprox = ForestLam | ForestSum | Suspended

#: Maps a fixpoint variable to its declared sequent and a producer able to
#: expand that binding to any requested depth.
Producer = Callable[[int], ForestApprox]
Environment = Mapping[str, tuple[Sequent, Producer]]


def effective_sequent(leaf: Suspended) -> Sequent:
    """The problem a suspended leaf still owes: its sequent, rewritten to the
    pending substitution's target context when one is attached."""
    if leaf.pending is None:
        return leaf.sequent
    return Sequent(leaf.pending.target, leaf.sequent.goal)


class _BinderNames:
    def __init__(self, avoid) -> None:
        self._avoid = set(avoid)
        self._n = 0

    def fresh(self) -> str:
        while True:
            self._n += 1
            name = f"z{self._n}"
            if name not in self._avoid:
                self._avoid.add(name)
                return name


def expand_solution(sequent: Sequent, depth: int) -> ForestApprox:
    """Unfold the sequent's solution space to the given observation depth.

    An implication goal becomes a lambda over a fresh variable; an atomic
    goal becomes the sum of one alternative per context declaration targeting
    that atom, recursing on the declaration's argument formulas.  A zero
    budget yields a suspended leaf for the current sequent.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    names = _BinderNames(sequent.context.names())

    def go(seq: Sequent, budget: int) -> ForestApprox:
        if budget <= 0:
            return Suspended(seq)
        match seq.goal:
            case Imp(antecedent, consequent):
                var = names.fresh()
                inner = Sequent(seq.context.extend(var, antecedent), consequent)
                return ForestLam(var, antecedent, go(inner, budget - 1))
            case Atom(goal_atom):
                alternatives = []
                for var, formula in seq.context:
                    arg_formulas, target = decompose(formula)
                    if target != goal_atom:
                        continue
                    args = tuple(
                        go(Sequent(seq.context, b), budget - 1) for b in arg_formulas
                    )
                    alternatives.append((var, args))
                return ForestSum(tuple(alternatives))
        raise TypeError(f"not a formula: {seq.goal!r}")

    return go(sequent, depth)


def interp_unfold(
    term: FinTerm, depth: int, environment: Environment | None = None
) -> ForestApprox:
    """Interpret a finitary term as a forest approximant at the given depth.

    A fixed point binds its variable to a producer that re-expands the node
    itself on demand; a reference looks its variable up, checks that the
    binder's sequent is an inessential restriction of its own, expands to the
    remaining budget, and fans the result out over the larger context.
    """
    from .cocontract import ContextSubst, cocontract_ctx, sequent_leq

    if depth < 0:
        raise ValueError("depth must be non-negative")

    def go(t: FinTerm, budget: int, env: dict) -> ForestApprox:
        if budget <= 0:
            return Suspended(fin_term_sequent(t))
        match t:
            case FinLam(var, annotation, body):
                return ForestLam(var, annotation, go(body, budget - 1, env))
            case Gfp(fpvar, sigma, alternatives):
                previous = env.get(fpvar)
                if previous is not None and previous[0] != sigma:
                    raise InterpretationError(
                        f"fixpoint variable {fpvar} bound at two different sequents"
                    )
                outer_env = dict(env)

                def producer(d: int, _node: FinTerm = t) -> ForestApprox:
                    return go(_node, d, outer_env)

                env = {**env, fpvar: (sigma, producer)}
                return ForestSum(
                    tuple(
                        (
                            alt.head,
                            tuple(go(a, budget - 1, env) for a in alt.args),
                        )
                        for alt in alternatives
                    )
                )
            case FpRef(fpvar, sigma_ref):
                entry = env.get(fpvar)
                if entry is None:
                    raise InterpretationError(
                        f"unresolvable fixpoint variable {fpvar}"
                    )
                sigma_bind, producer = entry
                if not sequent_leq(sigma_bind, sigma_ref):
                    raise InterpretationError(
                        f"{fpvar} is bound at {format_sequent(sigma_bind)}, which is "
                        f"not an inessential restriction of {format_sequent(sigma_ref)}"
                    )
                tree = producer(budget)
                if sigma_bind.context == sigma_ref.context:
                    return tree
                return cocontract_ctx(
                    ContextSubst(sigma_bind.context, sigma_ref.context), tree
                )
        raise TypeError(f"not a finitary term: {t!r}")

    env: dict = {}
    if environment:
        env.update(environment)
    return go(term, depth, env)


def _canonical(node: ForestApprox, env: dict[str, int], depth: int):
    def var_key(name: str):
        return ("b", env[name]) if name in env else ("f", name)

    match node:
        case ForestLam(var, annotation, body):
            return ("l", annotation, _canonical(body, {**env, var: depth}, depth + 1))
        case ForestSum(alternatives):
            return (
                "s",
                frozenset(
                    (var_key(head), tuple(_canonical(a, env, depth) for a in args))
                    for head, args in alternatives
                ),
            )
        case Suspended() as leaf:
            effective = effective_sequent(leaf)
            return (
                "?",
                effective.goal,
                frozenset((var_key(v), f) for v, f in effective.context),
            )
    raise TypeError(f"not a forest approximant: {node!r}")


def approx_equal(a: ForestApprox, b: ForestApprox) -> bool:
    """Equality of approximants modulo renaming of bound variables, and
    modulo order, multiplicity, and duplication of sum alternatives.
    Suspended leaves compare by the problem they still owe (goal plus
    effective context as a set of declarations)."""
    return _canonical(a, {}, 0) == _canonical(b, {}, 0)


def canonical_key(node: ForestApprox):
    """Hashable form of a forest approximant under :func:`approx_equal`."""
    return _canonical(node, {}, 0)


# --- printing ---

def format_forest(node: ForestApprox, indent: int = 0) -> str:
    pad = "  " * indent
    match node:
        case ForestLam(var, annotation, body):
            return (
                f"{pad}\\{var}:{format_formula(annotation)}.\n"
                + format_forest(body, indent + 1)
            )
        case ForestSum(alternatives):
            if not alternatives:
                return f"{pad}O"
            lines = []
            for head, args in alternatives:
                if not args:
                    lines.append(f"{pad}+ {head}")
                else:
                    lines.append(f"{pad}+ {head}<")
                    lines.extend(format_forest(a, indent + 2) for a in args)
                    lines.append(f"{pad}  >")
            return "\n".join(lines)
        case Suspended() as leaf:
            return f"{pad}?{{{format_sequent(effective_sequent(leaf))}}}"
    raise TypeError(f"not a forest approximant: {node!r}")


def forest_to_dot(node: ForestApprox, name: str = "forest") -> str:
    """Render the approximant as a DOT tree."""
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    counter = [0]

    def emit(n: ForestApprox, parent: int | None) -> None:
        counter[0] += 1
        me = counter[0]
        match n:
            case ForestLam(var, annotation, body):
                label = f"\\\\{var}:{format_formula(annotation)}"
                lines.append(f'  n{me} [label="{label}"];')
                if parent is not None:
                    lines.append(f"  n{parent} -> n{me};")
                emit(body, me)
            case ForestSum(alternatives):
                label = "O" if not alternatives else "+"
                lines.append(f'  n{me} [label="{label}"];')
                if parent is not None:
                    lines.append(f"  n{parent} -> n{me};")
                for head, args in alternatives:
                    counter[0] += 1
                    alt_id = counter[0]
                    lines.append(f'  n{alt_id} [label="{head}"];')
                    lines.append(f"  n{me} -> n{alt_id};")
                    for a in args:
                        emit(a, alt_id)
            case Suspended() as leaf:
                label = f"?{{{format_sequent(effective_sequent(leaf))}}}"
                escaped = label.replace('"', '\\"')
                lines.append(f'  n{me} [label="{escaped}"];')
                if parent is not None:
                    lines.append(f"  n{parent} -> n{me};")
            case _:
                raise TypeError(f"not a forest approximant: {n!r}")

    emit(node, None)
    lines.append("}")
    return "\n".join(lines)
