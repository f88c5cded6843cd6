"""Deterministic random generators and the shared sequent corpus."""

from __future__ import annotations

import random

from proofforest import (
    App,
    Atom,
    Context,
    Formula,
    Imp,
    Lam,
    LambdaBarTerm,
    Sequent,
    parse_sequent,
)

ATOMS = ("p", "q", "r")
CTX_VARS = ("a", "b", "c")

# Named sequents exercised throughout: the worked examples plus small extras.
CORPUS: dict[str, Sequent] = {
    name: parse_sequent(text)
    for name, text in {
        "identity": "|- p->p",
        "church": "|- (p->p)->p->p",
        "peirce": "|- ((p->q)->p)->p",
        "dn_peirce": "|- ((((p->q)->p)->p)->q)->q",
        "horn_p": "x:p->q->p, y:q->p->q, z:p |- p",
        "horn_q": "x:p->q->p, y:q->p->q, z:p |- q",
        "duplicates": "a:p->p, b:p->p |- (p->p)->p",
        "swap": "|- (p->q->r)->q->p->r",
        "empty_atom": "|- p",
        "mixed": "a:(p->q)->p, b:p |- q->p",
    }.items()
}


def formula(rng: random.Random, max_depth: int = 3, atoms=ATOMS) -> Formula:
    if max_depth <= 0 or rng.random() < 0.45:
        return Atom(rng.choice(atoms))
    return Imp(formula(rng, max_depth - 1, atoms), formula(rng, max_depth - 1, atoms))


def horn_formula(rng: random.Random, atoms=ATOMS) -> Formula:
    result: Formula = Atom(rng.choice(atoms))
    for _ in range(rng.randrange(0, 4)):
        result = Imp(Atom(rng.choice(atoms)), result)
    return result


def context(rng: random.Random, max_size: int = 3, max_depth: int = 3, atoms=ATOMS) -> Context:
    ctx = Context()
    for i in range(rng.randrange(0, max_size + 1)):
        ctx = ctx.extend(CTX_VARS[i], formula(rng, max_depth, atoms))
    return ctx


def sequent(rng: random.Random, max_depth: int = 3, atoms=ATOMS) -> Sequent:
    n_atoms = atoms[: rng.randrange(1, len(atoms) + 1)]
    return Sequent(context(rng, 3, max_depth, n_atoms), formula(rng, max_depth, n_atoms))


def horn_sequent(rng: random.Random, atoms=ATOMS) -> Sequent:
    ctx = Context()
    for i in range(rng.randrange(0, 4)):
        ctx = ctx.extend(CTX_VARS[i], horn_formula(rng, atoms))
    return Sequent(ctx, Atom(rng.choice(atoms)))


def leq_pair(rng: random.Random) -> tuple[Context, Context]:
    """A random context and an inessential extension of it (possibly equal)."""
    smaller = context(rng, 3)
    larger = smaller
    if len(smaller):
        for k in range(rng.randrange(0, 3)):
            _, f = rng.choice(smaller.bindings)
            larger = larger.extend(f"d{k + 1}", f)
    return smaller, larger


def mutate(rng: random.Random, term: LambdaBarTerm, ctx: Context) -> LambdaBarTerm:
    """A structural mutation of a term; usually breaks typability."""
    heads = list(ctx.names()) or ["w"]

    def go(t: LambdaBarTerm) -> LambdaBarTerm:
        if rng.random() < 0.4:
            match t:
                case Lam(var, _, body):
                    return Lam(var, formula(rng, 2), body)
                case App(_, args):
                    return App(rng.choice(heads), args)
        match t:
            case Lam(var, annotation, body):
                return Lam(var, annotation, go(body))
            case App(head, args):
                if not args:
                    return App(head, (App(head),))
                i = rng.randrange(len(args))
                return App(head, args[:i] + (go(args[i]),) + args[i + 1 :])
        raise TypeError

    return go(term)
