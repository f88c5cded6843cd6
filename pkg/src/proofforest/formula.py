"""Implicational formulas, contexts, and sequents.

Formulas are built from lowercase atoms with a single right-associative
arrow.  A context is an ordered list of variable declarations ``x:A`` in
which no variable occurs twice; a sequent pairs a context with a goal
formula.  Everything here is immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class ParseError(ValueError):
    """Malformed concrete syntax; ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Imp:
    antecedent: "Formula"
    consequent: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Atom | Imp


@dataclass(frozen=True)
class Context:
    """Ordered variable declarations.  Declaration order is kept for
    deterministic output; semantic comparisons go through :meth:`binding_set`
    and :meth:`formulas`."""

    bindings: tuple[tuple[str, Formula], ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for var, _ in self.bindings:
            if var in seen:
                raise ValueError(f"variable {var!r} declared twice in context")
            seen.add(var)

    def lookup(self, var: str) -> Formula | None:
        for name, formula in self.bindings:
            if name == var:
                return formula
        return None

    def extend(self, var: str, formula: Formula) -> "Context":
        return Context(self.bindings + ((var, formula),))

    def names(self) -> frozenset[str]:
        return frozenset(var for var, _ in self.bindings)

    def formulas(self) -> frozenset[Formula]:
        """The set of declared formulas, forgetting variables and order."""
        return frozenset(formula for _, formula in self.bindings)

    def binding_set(self) -> frozenset[tuple[str, Formula]]:
        return frozenset(self.bindings)

    def __iter__(self) -> Iterator[tuple[str, Formula]]:
        return iter(self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def __contains__(self, var: str) -> bool:
        return self.lookup(var) is not None

    def __str__(self) -> str:
        return format_context(self)


@dataclass(frozen=True)
class Sequent:
    context: Context
    goal: Formula

    def stripped(self) -> "StrippedSequent":
        """Forget variable names: the pair (set of context formulas, goal atom)."""
        if not isinstance(self.goal, Atom):
            raise ValueError(f"cannot strip sequent with non-atomic goal {self.goal}")
        return StrippedSequent(self.context.formulas(), self.goal.name)

    def __str__(self) -> str:
        return format_sequent(self)


@dataclass(frozen=True)
class StrippedSequent:
    formulas: frozenset[Formula]
    goal_atom: str


def decompose(formula: Formula) -> tuple[tuple[Formula, ...], str]:
    """Split a formula into its antecedent spine and its head atom.

    Every formula reads uniquely as ``A1 -> ... -> An -> p`` with ``n >= 0``;
    the result is ``((A1, ..., An), p)``.
    """
    prefix: list[Formula] = []
    while isinstance(formula, Imp):
        prefix.append(formula.antecedent)
        formula = formula.consequent
    return tuple(prefix), formula.name


def recompose(prefix: Iterable[Formula], head: str) -> Formula:
    """Inverse of :func:`decompose`."""
    result: Formula = Atom(head)
    for antecedent in reversed(tuple(prefix)):
        result = Imp(antecedent, result)
    return result


def is_horn(formula: Formula) -> bool:
    """True iff every antecedent on the spine is an atom."""
    prefix, _ = decompose(formula)
    return all(isinstance(a, Atom) for a in prefix)


def is_horn_sequent(sequent: Sequent) -> bool:
    """True iff every context formula is Horn and the goal is an atom."""
    return isinstance(sequent.goal, Atom) and all(
        is_horn(f) for _, f in sequent.context
    )


def subformula_closure(formulas: Iterable[Formula]) -> frozenset[Formula]:
    closure: set[Formula] = set()
    stack = list(formulas)
    while stack:
        f = stack.pop()
        if f in closure:
            continue
        closure.add(f)
        if isinstance(f, Imp):
            stack.append(f.antecedent)
            stack.append(f.consequent)
    return frozenset(closure)


# --- concrete syntax ---

_IDENT = re.compile(r"[a-z][a-zA-Z0-9_]*")


class Scanner:
    """Cursor over an input string with whitespace skipping."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def try_lit(self, lit: str) -> bool:
        self.skip_ws()
        if self.text.startswith(lit, self.pos):
            self.pos += len(lit)
            return True
        return False

    def expect(self, lit: str) -> None:
        if not self.try_lit(lit):
            raise ParseError(f"expected {lit!r}", self.pos)

    def expect_end(self) -> None:
        if not self.at_end():
            raise ParseError(f"unexpected trailing input {self.text[self.pos:]!r}", self.pos)

    def ident(self) -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if m is None:
            raise ParseError("expected an identifier", self.pos)
        self.pos = m.end()
        return m.group()


def scan_formula(scanner: Scanner) -> Formula:
    left = _atom_or_paren(scanner)
    if scanner.try_lit("->"):
        return Imp(left, scan_formula(scanner))
    return left


def _atom_or_paren(scanner: Scanner) -> Formula:
    if scanner.try_lit("("):
        inner = scan_formula(scanner)
        scanner.expect(")")
        return inner
    return Atom(scanner.ident())


def parse_formula(text: str) -> Formula:
    scanner = Scanner(text)
    formula = scan_formula(scanner)
    scanner.expect_end()
    return formula


def scan_context(scanner: Scanner, *, terminator: str | None = None) -> Context:
    bindings: list[tuple[str, Formula]] = []
    if scanner.at_end() or (terminator is not None and scanner.try_lit(terminator)):
        return Context()
    while True:
        var = scanner.ident()
        scanner.expect(":")
        bindings.append((var, scan_formula(scanner)))
        if scanner.try_lit(","):
            continue
        if terminator is not None:
            scanner.expect(terminator)
        break
    try:
        return Context(tuple(bindings))
    except ValueError as exc:
        raise ParseError(str(exc), scanner.pos) from None


def parse_context(text: str) -> Context:
    scanner = Scanner(text)
    context = scan_context(scanner)
    scanner.expect_end()
    return context


def parse_sequent(text: str) -> Sequent:
    """Parse ``x:A, y:B |- C``; the context may be empty (``|- C``)."""
    scanner = Scanner(text)
    context = scan_context(scanner, terminator="|-")
    goal = scan_formula(scanner)
    scanner.expect_end()
    return Sequent(context, goal)


def format_formula(formula: Formula) -> str:
    """Print with the fewest parentheses; the arrow associates to the right."""
    match formula:
        case Atom(name):
            return name
        case Imp(antecedent, consequent):
            left = format_formula(antecedent)
            if isinstance(antecedent, Imp):
                left = f"({left})"
            return f"{left}->{format_formula(consequent)}"
    raise TypeError(f"not a formula: {formula!r}")


def format_context(context: Context) -> str:
    return ", ".join(f"{var}:{format_formula(f)}" for var, f in context)


def format_sequent(sequent: Sequent) -> str:
    goal = format_formula(sequent.goal)
    if not sequent.context.bindings:
        return f"|- {goal}"
    return f"{format_context(sequent.context)} |- {goal}"
