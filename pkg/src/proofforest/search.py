"""Decision procedures on top of the finitary representation: pruning dead
alternatives, provability, enumeration and counting of finite proofs,
membership of candidate terms, and productivity (existence of any member,
finite or infinite).

Finite-proof viability is a least fixed point (a finite proof must bottom
out); productivity is a greatest fixed point (infinite spines are allowed).
Enumeration and membership walk the finitary term graph lazily, expanding
fixpoint references through their binder with the head fan-out of the
accumulated context substitutions applied on the fly.
"""

from __future__ import annotations

from .cocontract import ContextSubst, extend_under_binder, fan_out, sequent_leq
from .formula import Context, Formula, Sequent
from .gfp_calc import (
    ElimAlt,
    FinLam,
    FinTerm,
    FpRef,
    Gfp,
    synthesize,
)
from .lambda_bar import (
    App,
    Lam,
    LambdaBarTerm,
    alpha_canonical,
    alpha_key,
    format_term,
    term_size,
)

# --- viability markings ---


def _sweep(term: FinTerm, marks: dict[int, bool]) -> bool:
    """Recompute every fixed point's mark once; return whether any changed.
    A mark is true iff some alternative has all its arguments viable."""

    changed = False

    def viable(t: FinTerm, scope: dict[str, int]) -> bool:
        match t:
            case FinLam(_, _, body):
                return viable(body, scope)
            case Gfp():
                return marks[id(t)]
            case FpRef(fpvar, _):
                if fpvar not in scope:
                    raise ValueError(f"unbound fixpoint variable {fpvar}")
                return marks[scope[fpvar]]
        raise TypeError(f"not a finitary term: {t!r}")

    def walk(t: FinTerm, scope: dict[str, int]) -> None:
        nonlocal changed
        match t:
            case FinLam(_, _, body):
                walk(body, scope)
            case Gfp(fpvar, _, alternatives):
                scope = {**scope, fpvar: id(t)}
                for alt in alternatives:
                    for arg in alt.args:
                        walk(arg, scope)
                new = any(
                    all(viable(arg, scope) for arg in alt.args)
                    for alt in alternatives
                )
                if new != marks[id(t)]:
                    marks[id(t)] = new
                    changed = True
            case FpRef(fpvar, _):
                if fpvar not in scope:
                    raise ValueError(f"unbound fixpoint variable {fpvar}")

    walk(term, {})
    return changed


def _mark(term: FinTerm, start: bool) -> dict[int, bool]:
    marks: dict[int, bool] = {}

    def seed(t: FinTerm) -> None:
        match t:
            case FinLam(_, _, body):
                seed(body)
            case Gfp(_, _, alternatives):
                marks[id(t)] = start
                for alt in alternatives:
                    for arg in alt.args:
                        seed(arg)
            case FpRef():
                pass

    seed(term)
    while _sweep(term, marks):
        pass
    return marks


def _core_mark(term: FinTerm, marks: dict[int, bool]) -> bool:
    while isinstance(term, FinLam):
        term = term.body
    if isinstance(term, Gfp):
        return marks[id(term)]
    raise ValueError("term has a free fixpoint variable at its spine")


def prune(term: FinTerm) -> FinTerm:
    """Drop every alternative some argument of which admits no finite proof.

    Uses the least fixed point of the viability marking, so cycles that never
    bottom out are dead; a fixed point whose alternatives all die keeps its
    binder over the empty sum.  Finite members are preserved exactly.
    """
    marks = _mark(term, start=False)

    def viable(t: FinTerm, scope: dict[str, int]) -> bool:
        match t:
            case FinLam(_, _, body):
                return viable(body, scope)
            case Gfp():
                return marks[id(t)]
            case FpRef(fpvar, _):
                return marks[scope[fpvar]]
        raise TypeError(f"not a finitary term: {t!r}")

    def rebuild(t: FinTerm, scope: dict[str, int]) -> FinTerm:
        match t:
            case FinLam(var, annotation, body):
                return FinLam(var, annotation, rebuild(body, scope))
            case Gfp(fpvar, sigma, alternatives):
                scope = {**scope, fpvar: id(t)}
                kept = tuple(
                    ElimAlt(alt.head, tuple(rebuild(a, scope) for a in alt.args))
                    for alt in alternatives
                    if all(viable(a, scope) for a in alt.args)
                )
                return Gfp(fpvar, sigma, kept)
            case FpRef():
                return t
        raise TypeError(f"not a finitary term: {t!r}")

    return rebuild(term, {})


def provable(sequent: Sequent) -> bool:
    """True iff the sequent has a finite proof."""
    term = synthesize(sequent)
    return _core_mark(term, _mark(term, start=False))


def has_any_member(term: FinTerm) -> bool:
    """True iff the represented forest has any member at all, infinite ones
    included.  Greatest fixed point: references start out viable and lose the
    mark only when every alternative of their binder dies."""
    return _core_mark(term, _mark(term, start=True))


# --- lazy views of the finitary term graph ---


class _Scope:
    """Linked binding environment; each frame also remembers the renaming in
    force and the binder's sequent in outward names."""

    __slots__ = ("name", "sequent", "node", "ren", "parent")

    def __init__(self, name, sequent, node, ren, parent):
        self.name = name
        self.sequent = sequent
        self.node = node
        self.ren = ren
        self.parent = parent


def _scope_lookup(scope: _Scope | None, name: str) -> _Scope | None:
    while scope is not None:
        if scope.name == name:
            return scope
        scope = scope.parent
    return None


def _rename_sequent(sigma: Sequent, ren: dict[str, str]) -> Sequent:
    if not ren:
        return sigma
    ctx = Context(tuple((ren.get(v, v), f) for v, f in sigma.context))
    return Sequent(ctx, sigma.goal)


def _force(term: FinTerm, scope: _Scope | None, ren: dict, chain: tuple):
    """Resolve fixpoint references down to a lambda or a fixed-point node,
    prepending the owed context substitution to the chain."""
    while isinstance(term, FpRef):
        entry = _scope_lookup(scope, term.fpvar)
        if entry is None:
            raise ValueError(f"unbound fixpoint variable {term.fpvar}")
        ref_sigma = _rename_sequent(term.sequent, ren)
        bind_sigma = entry.sequent
        if not sequent_leq(bind_sigma, ref_sigma):
            raise ValueError(
                f"{term.fpvar} referenced below its binder's sequent"
            )
        if bind_sigma.context != ref_sigma.context:
            chain = (ContextSubst(bind_sigma.context, ref_sigma.context),) + chain
        term, scope, ren = entry.node, entry.parent, entry.ren
    return term, scope, ren, chain


def _fan_chain(chain: tuple, var: str) -> tuple[str, ...]:
    names = [var]
    for subst in chain:  # innermost first
        step: list[str] = []
        for v in names:
            for w in fan_out(subst, v):
                if w not in step:
                    step.append(w)
        names = step
    return tuple(names)


def _fresh_binder(base: str, avoid: set[str]) -> str:
    n = 2
    while f"{base}_{n}" in avoid:
        n += 1
    return f"{base}_{n}"


def _under_binder(var: str, annotation: Formula, ren: dict, chain: tuple):
    """Extend every substitution in the chain with the binder, renaming the
    binder first when a substitution context already declares it."""
    avoid: set[str] = set()
    for subst in chain:
        avoid |= subst.source.names() | subst.target.names()
    out = var
    if var in avoid:
        out = _fresh_binder(var, avoid | set(ren.values()))
    if var in ren or out != var:
        ren = {**ren, var: out}
    chain = tuple(extend_under_binder(s, out, annotation) for s in chain)
    return out, ren, chain


def _alternatives(node: Gfp, scope: _Scope | None, ren: dict, chain: tuple):
    """The sum's alternatives as (head, argument views) pairs, with heads
    fanned out through the substitution chain."""
    sigma = _rename_sequent(node.sequent, ren)
    inside = _Scope(node.fpvar, sigma, node, ren, scope)
    out = []
    for alt in node.alternatives:
        head = ren.get(alt.head, alt.head)
        views = tuple((a, inside, ren, chain) for a in alt.args)
        for w in _fan_chain(chain, head):
            out.append((w, views))
    return out


# --- enumeration of finite members ---


def _generate(view, budget: int):
    if budget <= 0:
        return
    term, scope, ren, chain = _force(*view)
    if isinstance(term, FinLam):
        var, ren2, chain2 = _under_binder(term.var, term.annotation, ren, chain)
        for body in _generate((term.body, scope, ren2, chain2), budget - 1):
            yield Lam(var, term.annotation, body)
        return
    assert isinstance(term, Gfp)
    for head, arg_views in _alternatives(term, scope, ren, chain):
        if budget < 1 + len(arg_views):
            continue
        for args in _generate_args(arg_views, budget - 1):
            yield App(head, args)


def _generate_args(views, budget: int):
    if not views:
        yield ()
        return
    first, rest = views[0], views[1:]
    for t in _generate(first, budget - len(rest)):
        for more in _generate_args(rest, budget - term_size(t)):
            yield (t, *more)


def members_up_to(
    term: FinTerm,
    max_size: int,
    limit: int | None = None,
    avoid: frozenset[str] = frozenset(),
) -> list[LambdaBarTerm]:
    """All distinct finite members of the represented forest with size at most
    ``max_size``, in canonical binder names, ordered by size then by printed
    form.  ``avoid`` reserves names (typically the context's) that canonical
    binders must not shadow."""
    if max_size < 1:
        raise ValueError("max_size must be positive")
    found: dict = {}
    for raw in _generate((term, None, {}, ()), max_size):
        key = alpha_key(raw)
        if key not in found:
            found[key] = alpha_canonical(raw, avoid)
    out = sorted(found.values(), key=lambda t: (term_size(t), format_term(t)))
    if limit is not None:
        out = out[:limit]
    return out


def enumerate_proofs(
    sequent: Sequent, max_size: int, limit: int | None = None
) -> list[LambdaBarTerm]:
    """All finite proofs of the sequent with size at most ``max_size`` (at
    most ``limit`` of them), smallest first.  Every returned term typechecks
    at the goal."""
    fin = prune(synthesize(sequent))
    return members_up_to(fin, max_size, limit, avoid=sequent.context.names())


def count_proofs(sequent: Sequent, max_size: int) -> int:
    """Number of distinct finite proofs with size at most ``max_size``."""
    return len(enumerate_proofs(sequent, max_size))


# --- membership of finite candidates ---


def member(ctx: Context, candidate: LambdaBarTerm, term: FinTerm) -> bool:
    """Check a finite candidate against the forest the finitary term denotes,
    unfolding only along the candidate.

    Lambda matches lambda with the same annotation; an application matches a
    sum iff some alternative has the same head (through the binder pairing)
    and every argument is a member recursively.  A candidate that rebinds a
    visible variable is rejected, matching the typing relation.
    """

    def walk(cand, view, pairing: dict[str, str], visible: frozenset[str]) -> bool:
        node, scope, ren, chain = _force(*view)
        if isinstance(node, FinLam):
            if not isinstance(cand, Lam):
                return False
            if cand.annotation != node.annotation or cand.var in visible:
                return False
            var, ren2, chain2 = _under_binder(node.var, node.annotation, ren, chain)
            return walk(
                cand.body,
                (node.body, scope, ren2, chain2),
                {**pairing, var: cand.var},
                visible | {cand.var},
            )
        assert isinstance(node, Gfp)
        if not isinstance(cand, App):
            return False
        for head, arg_views in _alternatives(node, scope, ren, chain):
            if pairing.get(head, head) != cand.head:
                continue
            if len(arg_views) != len(cand.args):
                continue
            if all(
                walk(a, v, pairing, visible)
                for a, v in zip(cand.args, arg_views)
            ):
                return True
        return False

    return walk(candidate, (term, None, {}, ()), {}, ctx.names())
