"""Finitary terms with formal greatest-fixed-point binders, and the synthesis
maps that turn any sequent into a closed finitary representation of its
complete search space.

Fixpoint variables are annotated with the sequent at their binding site and
may be referenced at larger sequents (inessential extensions); the
interpretation in :mod:`proofforest.forest` resolves the gap by co-contraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .formula import (
    Atom,
    Context,
    Formula,
    Imp,
    Sequent,
    decompose,
    format_formula,
    format_sequent,
    is_horn_sequent,
    parse_formula,
    subformula_closure,
)


class InternalInvariantError(RuntimeError):
    """An internal invariant was violated; this signals an implementation bug,
    never bad user input."""


@dataclass(frozen=True)
class FinLam:
    var: str
    annotation: Formula
    body: "FinTerm"

    def __str__(self) -> str:
        return format_fin_term(self)


@dataclass(frozen=True)
class ElimAlt:
    """One elimination alternative: a head variable applied to subspaces."""

    head: str
    args: tuple["FinTerm", ...] = ()

    def __str__(self) -> str:
        return _format_alt(self)


@dataclass(frozen=True)
class Gfp:
    """Greatest fixed point over a sum of alternatives.  Zero alternatives is
    the canonical spelling of the empty sum (a dead end)."""

    fpvar: str
    sequent: Sequent
    alternatives: tuple[ElimAlt, ...] = ()

    def __str__(self) -> str:
        return format_fin_term(self)


@dataclass(frozen=True)
class FpRef:
    """Reference to a fixpoint variable, annotated with the sequent at the
    reference site (at least as large as the binder's)."""

    fpvar: str
    sequent: Sequent

    def __str__(self) -> str:
        return format_fin_term(self)


FinTerm = FinLam | Gfp | FpRef


@dataclass(frozen=True)
class SynthesisStats:
    """Peak number of distinct stripped sequents accumulated along any branch,
    and the closure bound it must stay under."""

    peak_accumulator: int
    bound: int


class _FreshNames:
    def __init__(self, avoid: Iterable[str]) -> None:
        self._avoid = set(avoid)
        self._var = 0
        self._fp = 0

    def term_var(self) -> str:
        while True:
            self._var += 1
            name = f"z{self._var}"
            if name not in self._avoid:
                self._avoid.add(name)
                return name

    def fp_var(self) -> str:
        self._fp += 1
        return f"X{self._fp}"


def measure(formulas: Iterable[Formula]) -> int:
    """Number of stripped sequents over the subformula closure: a * 2**k for a
    closure with ``a`` atoms and ``k`` formulas.  Bounds synthesis recursion."""
    closure = subformula_closure(formulas)
    atoms = sum(1 for f in closure if isinstance(f, Atom))
    return atoms * 2 ** len(closure)


def _wrap_lams(binders: list[tuple[str, Formula]], core: FinTerm) -> FinTerm:
    for var, annotation in reversed(binders):
        core = FinLam(var, annotation, core)
    return core


def synthesize(sequent: Sequent) -> FinTerm:
    """Closed finitary representation of the sequent's full solution space.

    Decompose the goal as ``A1 -> .. -> An -> p`` and extend the context with
    fresh binders for the antecedents.  If some accumulated fixpoint
    declaration ``(X : Theta |- q)`` satisfies ``p = q``, ``Theta`` a sub-context
    of the unextended context, and ``Theta`` declaring the same formula set as
    the extended context, emit a back-reference to ``X``; otherwise open a new
    fixed point whose alternatives range over the extended context's
    declarations targeting ``p``, recursing on their argument sequents.
    """
    return synthesize_with_stats(sequent)[0]


def synthesize_with_stats(sequent: Sequent) -> tuple[FinTerm, SynthesisStats]:
    bound = measure(set(sequent.context.formulas()) | {sequent.goal})
    names = _FreshNames(sequent.context.names())
    peak = 0

    def rec(
        seq: Sequent,
        accumulator: tuple[tuple[str, Sequent], ...],
        stripped_seen: frozenset,
    ) -> FinTerm:
        nonlocal peak
        spine, head = decompose(seq.goal)
        binders: list[tuple[str, Formula]] = []
        delta = seq.context
        for antecedent in spine:
            var = names.term_var()
            binders.append((var, antecedent))
            delta = delta.extend(var, antecedent)
        sigma = Sequent(delta, Atom(head))

        gamma_bindings = seq.context.binding_set()
        delta_formulas = delta.formulas()
        for fpvar, declared in accumulator:
            if (
                declared.goal == sigma.goal
                and declared.context.binding_set() <= gamma_bindings
                and declared.context.formulas() == delta_formulas
            ):
                return _wrap_lams(binders, FpRef(fpvar, sigma))

        stripped = sigma.stripped()
        if stripped in stripped_seen:
            raise InternalInvariantError(
                f"stripped sequent repeated while synthesizing {format_sequent(sigma)}"
            )
        stripped_seen = stripped_seen | {stripped}
        if len(stripped_seen) > bound:
            raise InternalInvariantError(
                f"synthesis accumulator exceeded its bound of {bound}"
            )
        peak = max(peak, len(stripped_seen))

        fpvar = names.fp_var()
        accumulator = accumulator + ((fpvar, sigma),)
        alternatives: list[ElimAlt] = []
        for var, formula in delta:
            arg_formulas, target = decompose(formula)
            if target != head:
                continue
            args = tuple(
                rec(Sequent(delta, b), accumulator, stripped_seen)
                for b in arg_formulas
            )
            alternatives.append(ElimAlt(var, args))
        return _wrap_lams(binders, Gfp(fpvar, sigma, tuple(alternatives)))

    term = rec(sequent, (), frozenset())
    if free_fpvars(term):
        raise InternalInvariantError("synthesized term has free fixpoint variables")
    return term, SynthesisStats(peak, bound)


def synthesize_horn(sequent: Sequent) -> FinTerm:
    """Synthesis specialised to Horn sequents: fixpoint variables are indexed
    by goal atoms and the context never changes, so no co-contraction is ever
    needed in the interpretation."""
    if not is_horn_sequent(sequent):
        raise ValueError(f"not a Horn sequent: {format_sequent(sequent)}")
    ctx = sequent.context
    assert isinstance(sequent.goal, Atom)

    def rec(atom: str, declared: tuple[str, ...]) -> FinTerm:
        sigma = Sequent(ctx, Atom(atom))
        if atom in declared:
            return FpRef(f"X_{atom}", sigma)
        declared = declared + (atom,)
        alternatives: list[ElimAlt] = []
        for var, formula in ctx:
            arg_atoms, target = decompose(formula)
            if target != atom:
                continue
            args = tuple(rec(a.name, declared) for a in arg_atoms)  # type: ignore[union-attr]
            alternatives.append(ElimAlt(var, args))
        return Gfp(f"X_{atom}", sigma, tuple(alternatives))

    return rec(sequent.goal.name, ())


def free_fpvars(term: FinTerm) -> frozenset[str]:
    match term:
        case FinLam(_, _, body):
            return free_fpvars(body)
        case Gfp(fpvar, _, alternatives):
            out: frozenset[str] = frozenset()
            for alt in alternatives:
                for arg in alt.args:
                    out |= free_fpvars(arg)
            return out - {fpvar}
        case FpRef(fpvar, _):
            return frozenset({fpvar})
    raise TypeError(f"not a finitary term: {term!r}")


def well_formed(term: FinTerm) -> bool:
    """Check that every fixpoint reference is bound, and that the binder's
    sequent is an inessential restriction of the reference's."""
    from .cocontract import sequent_leq  # deferred: cocontract depends on forest

    def go(t: FinTerm, env: dict[str, Sequent]) -> bool:
        match t:
            case FinLam(_, _, body):
                return go(body, env)
            case Gfp(fpvar, sigma, alternatives):
                env = {**env, fpvar: sigma}
                return all(go(arg, env) for alt in alternatives for arg in alt.args)
            case FpRef(fpvar, sigma):
                declared = env.get(fpvar)
                return declared is not None and sequent_leq(declared, sigma)
        raise TypeError(f"not a finitary term: {t!r}")

    return go(term, {})


def fin_term_sequent(term: FinTerm) -> Sequent:
    """The sequent a finitary term answers, reconstructed structurally.

    Fixed points and references carry theirs; a lambda removes its binder
    from the body's context and prepends the annotation to the goal.
    """
    match term:
        case Gfp(_, sigma, _) | FpRef(_, sigma):
            return sigma
        case FinLam(var, annotation, body):
            inner = fin_term_sequent(body)
            if inner.context.lookup(var) != annotation:
                raise ValueError(
                    f"binder {var}:{format_formula(annotation)} not declared in the body's context"
                )
            remaining = Context(
                tuple((v, f) for v, f in inner.context if v != var)
            )
            return Sequent(remaining, Imp(annotation, inner.goal))
    raise TypeError(f"not a finitary term: {term!r}")


def fin_alpha_key(term: FinTerm):
    """Hashable key identifying a finitary term up to renaming of term binders
    and of fixpoint variables; sums of alternatives compare as sets."""

    def ctx_key(ctx: Context, env: dict[str, int]):
        return tuple(
            (("b", env[v]) if v in env else ("f", v), f) for v, f in ctx
        )

    def seq_key(sigma: Sequent, env: dict[str, int]):
        return (ctx_key(sigma.context, env), sigma.goal)

    def go(t: FinTerm, env: dict[str, int], fpenv: dict[str, int], depth: int):
        match t:
            case FinLam(var, annotation, body):
                return ("l", annotation, go(body, {**env, var: depth}, fpenv, depth + 1))
            case Gfp(fpvar, sigma, alternatives):
                fpenv = {**fpenv, fpvar: len(fpenv)}
                alts = frozenset(
                    (
                        ("b", env[alt.head]) if alt.head in env else ("f", alt.head),
                        tuple(go(a, env, fpenv, depth) for a in alt.args),
                    )
                    for alt in alternatives
                )
                return ("g", seq_key(sigma, env), alts)
            case FpRef(fpvar, sigma):
                ref = fpenv[fpvar] if fpvar in fpenv else ("free", fpvar)
                return ("r", ref, seq_key(sigma, env))
        raise TypeError(f"not a finitary term: {t!r}")

    return go(term, {}, {}, 0)


def fin_alpha_equal(a: FinTerm, b: FinTerm) -> bool:
    return fin_alpha_key(a) == fin_alpha_key(b)


# --- printing and JSON ---

def _format_alt(alt: ElimAlt) -> str:
    if not alt.args:
        return alt.head
    return f"{alt.head}<{', '.join(format_fin_term(a) for a in alt.args)}>"


def format_fin_term(term: FinTerm) -> str:
    match term:
        case FinLam(var, annotation, body):
            return f"\\{var}:{format_formula(annotation)}. {format_fin_term(body)}"
        case Gfp(fpvar, sigma, alternatives):
            body = " + ".join(_format_alt(a) for a in alternatives) if alternatives else "O"
            return f"gfp {fpvar} @ {{{format_sequent(sigma)}}}. {body}"
        case FpRef(fpvar, sigma):
            return f"{fpvar} @ {{{format_sequent(sigma)}}}"
    raise TypeError(f"not a finitary term: {term!r}")


def _sequent_to_dict(sigma: Sequent) -> dict:
    return {
        "context": [[v, format_formula(f)] for v, f in sigma.context],
        "goal": format_formula(sigma.goal),
    }


def _sequent_from_dict(data: dict) -> Sequent:
    context = Context(tuple((v, parse_formula(f)) for v, f in data["context"]))
    return Sequent(context, parse_formula(data["goal"]))


def fin_term_to_dict(term: FinTerm) -> dict:
    match term:
        case FinLam(var, annotation, body):
            return {
                "node": "lam",
                "var": var,
                "annotation": format_formula(annotation),
                "body": fin_term_to_dict(body),
            }
        case Gfp(fpvar, sigma, alternatives):
            return {
                "node": "gfp",
                "fpvar": fpvar,
                "sequent": _sequent_to_dict(sigma),
                "alternatives": [
                    {"head": a.head, "args": [fin_term_to_dict(x) for x in a.args]}
                    for a in alternatives
                ],
            }
        case FpRef(fpvar, sigma):
            return {"node": "fpref", "fpvar": fpvar, "sequent": _sequent_to_dict(sigma)}
    raise TypeError(f"not a finitary term: {term!r}")


def fin_term_from_dict(data: dict) -> FinTerm:
    match data["node"]:
        case "lam":
            return FinLam(
                data["var"],
                parse_formula(data["annotation"]),
                fin_term_from_dict(data["body"]),
            )
        case "gfp":
            return Gfp(
                data["fpvar"],
                _sequent_from_dict(data["sequent"]),
                tuple(
                    ElimAlt(a["head"], tuple(fin_term_from_dict(x) for x in a["args"]))
                    for a in data["alternatives"]
                ),
            )
        case "fpref":
            return FpRef(data["fpvar"], _sequent_from_dict(data["sequent"]))
    raise ValueError(f"unknown node kind {data['node']!r}")
