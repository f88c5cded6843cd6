"""Finite cut-free proof terms and their typing relation.

Terms are lambda abstractions with annotated binders and applications of a
head variable to a finite argument list; an application with no arguments
is printed as the bare variable.  The checker below is the reference typing
for everything else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import (
    Atom,
    Context,
    Formula,
    Imp,
    Scanner,
    decompose,
    format_formula,
    is_horn,
    scan_formula,
)


@dataclass(frozen=True)
class Lam:
    var: str
    annotation: Formula
    body: "LambdaBarTerm"

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class App:
    head: str
    args: tuple["LambdaBarTerm", ...] = ()

    def __str__(self) -> str:
        return format_term(self)


LambdaBarTerm = Lam | App


def typecheck(ctx: Context, term: LambdaBarTerm) -> Formula | None:
    """Return the unique type of ``term`` in ``ctx``, or None if it has none.

    A lambda checks under the extended context; an application ``x<t1,..,tk>``
    checks at atom p iff x is declared at ``B1->..->Bk->p`` and each ``ti``
    checks at ``Bi``.  Rebinding a declared variable never types.
    """
    match term:
        case Lam(var, annotation, body):
            if var in ctx:
                return None
            inner = typecheck(ctx.extend(var, annotation), body)
            return None if inner is None else Imp(annotation, inner)
        case App(head, args):
            declared = ctx.lookup(head)
            if declared is None:
                return None
            spine, target = decompose(declared)
            if len(spine) != len(args):
                return None
            for arg, expected in zip(args, spine):
                if typecheck(ctx, arg) != expected:
                    return None
            return Atom(target)
    raise TypeError(f"not a term: {term!r}")


def typecheck_horn(ctx: Context, term: LambdaBarTerm) -> str | None:
    """Typing restricted to the Horn fragment; returns the goal atom's name.

    Requires a Horn context and a lambda-free term (raises ValueError
    otherwise); agrees with :func:`typecheck` on that fragment.
    """
    for _, formula in ctx:
        if not is_horn(formula):
            raise ValueError(f"context formula {format_formula(formula)} is not Horn")

    def check(t: LambdaBarTerm) -> str | None:
        match t:
            case Lam():
                raise ValueError("Horn checking applies to lambda-free terms only")
            case App(head, args):
                declared = ctx.lookup(head)
                if declared is None:
                    return None
                spine, target = decompose(declared)
                if len(spine) != len(args):
                    return None
                for arg, expected in zip(args, spine):
                    got = check(arg)
                    if got is None or Atom(got) != expected:
                        return None
                return target
        raise TypeError(f"not a term: {t!r}")

    return check(term)


def term_size(term: LambdaBarTerm) -> int:
    """Number of term constructors: each lambda and each application count 1."""
    match term:
        case Lam(_, _, body):
            return 1 + term_size(body)
        case App(_, args):
            return 1 + sum(term_size(a) for a in args)
    raise TypeError(f"not a term: {term!r}")


def term_depth(term: LambdaBarTerm) -> int:
    match term:
        case Lam(_, _, body):
            return 1 + term_depth(body)
        case App(_, args):
            return 1 + max((term_depth(a) for a in args), default=0)
    raise TypeError(f"not a term: {term!r}")


def free_vars(term: LambdaBarTerm) -> frozenset[str]:
    match term:
        case Lam(var, _, body):
            return free_vars(body) - {var}
        case App(head, args):
            out = frozenset({head})
            for a in args:
                out |= free_vars(a)
            return out
    raise TypeError(f"not a term: {term!r}")


def alpha_key(term: LambdaBarTerm):
    """Hashable key identifying the term up to renaming of bound variables."""

    def go(t: LambdaBarTerm, env: dict[str, int], depth: int):
        match t:
            case Lam(var, annotation, body):
                return ("l", annotation, go(body, {**env, var: depth}, depth + 1))
            case App(head, args):
                head_key = ("b", env[head]) if head in env else ("f", head)
                return ("a", head_key, tuple(go(a, env, depth) for a in args))
        raise TypeError(f"not a term: {t!r}")

    return go(term, {}, 0)


def alpha_equal(a: LambdaBarTerm, b: LambdaBarTerm) -> bool:
    return alpha_key(a) == alpha_key(b)


def alpha_canonical(term: LambdaBarTerm, avoid: frozenset[str] = frozenset()) -> LambdaBarTerm:
    """Rename binders to ``x1, x2, ...`` in traversal order, skipping ``avoid``
    and the term's free variables.  Alpha-equal terms map to the same result
    when given the same ``avoid`` set."""
    taken = set(avoid) | set(free_vars(term))
    counter = 0

    def fresh() -> str:
        nonlocal counter
        while True:
            counter += 1
            name = f"x{counter}"
            if name not in taken:
                taken.add(name)
                return name

    def go(t: LambdaBarTerm, ren: dict[str, str]) -> LambdaBarTerm:
        match t:
            case Lam(var, annotation, body):
                new = fresh()
                return Lam(new, annotation, go(body, {**ren, var: new}))
            case App(head, args):
                return App(ren.get(head, head), tuple(go(a, ren) for a in args))
        raise TypeError(f"not a term: {t!r}")

    return go(term, {})


# --- concrete syntax: \x:A. t for lambdas, x<t1,...,tk> for applications ---

def scan_term(scanner: Scanner) -> LambdaBarTerm:
    if scanner.try_lit("\\"):
        var = scanner.ident()
        scanner.expect(":")
        annotation = scan_formula(scanner)
        scanner.expect(".")
        return Lam(var, annotation, scan_term(scanner))
    head = scanner.ident()
    if not scanner.try_lit("<"):
        return App(head)
    if scanner.try_lit(">"):
        return App(head)
    args = [scan_term(scanner)]
    while scanner.try_lit(","):
        args.append(scan_term(scanner))
    scanner.expect(">")
    return App(head, tuple(args))


def parse_term(text: str) -> LambdaBarTerm:
    scanner = Scanner(text)
    term = scan_term(scanner)
    scanner.expect_end()
    return term


def format_term(term: LambdaBarTerm) -> str:
    match term:
        case Lam(var, annotation, body):
            return f"\\{var}:{format_formula(annotation)}. {format_term(body)}"
        case App(head, args):
            if not args:
                return head
            return f"{head}<{', '.join(format_term(a) for a in args)}>"
    raise TypeError(f"not a term: {term!r}")
