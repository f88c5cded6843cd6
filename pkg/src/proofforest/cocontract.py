"""Context extension order and co-contraction of forest approximants.

Co-contraction is contraction read bottom-up: when a context grows by
duplicate declarations of formulas it already has, every head variable of the
smaller context fans out over all carriers of its formula in the larger one.
It is defined on forest approximants, where it resolves fixpoint references
taken at a larger sequent than their binder's.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import Context, Formula, Sequent, format_context
from .gfp_calc import InternalInvariantError
from .forest import ForestApprox, ForestLam, ForestSum, Suspended


@dataclass(frozen=True)
class ContextSubst:
    """A substitution determined by a pair of contexts.

    For the fan-out walk of :func:`cocontract_ctx` the source must extend to
    the target inessentially (checked there).  Pending records on suspended
    leaves reuse the same shape with the leaf's own context as source and the
    effective context as target, which variable co-contraction may take
    outside the order.
    """

    source: Context
    target: Context


def leq(smaller: Context, larger: Context) -> bool:
    """Inessential extension: every declaration survives and no new formula
    appears."""
    return (
        smaller.binding_set() <= larger.binding_set()
        and smaller.formulas() == larger.formulas()
    )


def sequent_leq(smaller: Sequent, larger: Sequent) -> bool:
    return smaller.goal == larger.goal and leq(smaller.context, larger.context)


def fan_out(subst: ContextSubst, var: str) -> tuple[str, ...]:
    """Heads the variable maps to: every target variable declaring the same
    formula, in target declaration order; variables outside the source are
    untouched."""
    declared = subst.source.lookup(var)
    if declared is None:
        return (var,)
    return tuple(w for w, f in subst.target if f == declared)


def extend_under_binder(subst: ContextSubst, var: str, annotation: Formula) -> ContextSubst:
    """Both sides of the substitution gain the bound variable."""
    return ContextSubst(
        subst.source.extend(var, annotation), subst.target.extend(var, annotation)
    )


def _names_in(node: ForestApprox) -> set[str]:
    out: set[str] = set()
    match node:
        case ForestLam(var, _, body):
            out.add(var)
            out |= _names_in(body)
        case ForestSum(alternatives):
            for head, args in alternatives:
                out.add(head)
                for a in args:
                    out |= _names_in(a)
        case Suspended(sequent, pending):
            out |= sequent.context.names()
            if pending is not None:
                out |= pending.source.names() | pending.target.names()
    return out


def _rename_ctx(ctx: Context, ren: dict[str, str]) -> Context:
    return Context(tuple((ren.get(v, v), f) for v, f in ctx))


def _rename_free(node: ForestApprox, ren: dict[str, str]) -> ForestApprox:
    """Rename free variable occurrences, stopping at shadowing binders."""
    if not ren:
        return node
    match node:
        case ForestLam(var, annotation, body):
            inner = {k: v for k, v in ren.items() if k != var}
            return ForestLam(var, annotation, _rename_free(body, inner))
        case ForestSum(alternatives):
            return ForestSum(
                tuple(
                    (ren.get(head, head), tuple(_rename_free(a, ren) for a in args))
                    for head, args in alternatives
                )
            )
        case Suspended(sequent, pending):
            new_sequent = Sequent(_rename_ctx(sequent.context, ren), sequent.goal)
            new_pending = (
                None
                if pending is None
                else ContextSubst(
                    _rename_ctx(pending.source, ren), _rename_ctx(pending.target, ren)
                )
            )
            return Suspended(new_sequent, new_pending)
    raise TypeError(f"not a forest approximant: {node!r}")


def _fresh_binder(base: str, avoid: set[str]) -> str:
    n = 2
    while f"{base}_{n}" in avoid:
        n += 1
    return f"{base}_{n}"


def _effective_context(leaf: Suspended) -> Context:
    return leaf.sequent.context if leaf.pending is None else leaf.pending.target


def cocontract_vars(
    new_heads: list[str] | tuple[str, ...], old_head: str, node: ForestApprox
) -> ForestApprox:
    """Replace every alternative headed by ``old_head`` with one alternative
    per new head, recursing into all arguments and summands; other heads are
    untouched.  Suspended leaves record the replacement in their pending
    substitution."""
    heads = tuple(new_heads)

    def go(n: ForestApprox) -> ForestApprox:
        match n:
            case ForestLam(var, annotation, body):
                if var == old_head:
                    return n  # the binder shadows the substituted variable
                if var in heads:
                    fresh = _fresh_binder(var, _names_in(body) | set(heads) | {old_head})
                    body = _rename_free(body, {var: fresh})
                    var = fresh
                return ForestLam(var, annotation, go(body))
            case ForestSum(alternatives):
                out = []
                for head, args in alternatives:
                    new_args = tuple(go(a) for a in args)
                    if head == old_head:
                        out.extend((h, new_args) for h in heads)
                    else:
                        out.append((head, new_args))
                return ForestSum(tuple(out))
            case Suspended() as leaf:
                effective = _effective_context(leaf)
                if old_head not in effective:
                    return leaf
                rewritten: list[tuple[str, Formula]] = []
                for v, f in effective:
                    if v == old_head:
                        rewritten.extend((h, f) for h in heads)
                    else:
                        rewritten.append((v, f))
                pending = ContextSubst(leaf.sequent.context, Context(tuple(rewritten)))
                return Suspended(leaf.sequent, pending)
        raise TypeError(f"not a forest approximant: {n!r}")

    return go(node)


def cocontract_ctx(subst: ContextSubst, node: ForestApprox) -> ForestApprox:
    """Apply the context substitution to an approximant.

    Under a lambda both contexts grow by the bound variable (renaming it
    first if the target already declares it); heads declared in the source
    fan out over every target variable carrying the same formula; a suspended
    leaf composes the substitution into its pending record.
    """
    if not leq(subst.source, subst.target):
        raise ValueError(
            f"[{format_context(subst.target)} / {format_context(subst.source)}] "
            "is not an inessential extension"
        )
    return _apply_ctx(subst, node)


def _apply_ctx(subst: ContextSubst, node: ForestApprox) -> ForestApprox:
    match node:
        case ForestLam(var, annotation, body):
            if var in subst.target:
                avoid = (
                    subst.target.names() | subst.source.names() | _names_in(body)
                )
                fresh = _fresh_binder(var, set(avoid))
                body = _rename_free(body, {var: fresh})
                var = fresh
            inner = extend_under_binder(subst, var, annotation)
            return ForestLam(var, annotation, _apply_ctx(inner, body))
        case ForestSum(alternatives):
            out = []
            for head, args in alternatives:
                new_args = tuple(_apply_ctx(subst, a) for a in args)
                for w in fan_out(subst, head):
                    out.append((w, new_args))
            return ForestSum(tuple(out))
        case Suspended() as leaf:
            effective = _effective_context(leaf)
            if effective.binding_set() != subst.source.binding_set():
                raise InternalInvariantError(
                    f"suspended leaf context {{{format_context(effective)}}} does not "
                    f"match substitution source {{{format_context(subst.source)}}}"
                )
            pending = ContextSubst(leaf.sequent.context, subst.target)
            return Suspended(leaf.sequent, pending)
    raise TypeError(f"not a forest approximant: {node!r}")
