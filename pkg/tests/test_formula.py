import pytest
from hypothesis import given, strategies as st

from proofforest import (
    Atom,
    Context,
    Imp,
    ParseError,
    decompose,
    format_formula,
    format_sequent,
    is_horn,
    is_horn_sequent,
    parse_context,
    parse_formula,
    parse_sequent,
    recompose,
    subformula_closure,
)

P, Q = Atom("p"), Atom("q")

atoms = st.builds(Atom, st.from_regex(r"[a-z][a-zA-Z0-9_]{0,4}", fullmatch=True))
formulas = st.recursive(atoms, lambda f: st.builds(Imp, f, f), max_leaves=24)


def test_parse_smallest_implication():
    assert parse_formula("p->p") == Imp(P, P)


def test_parse_peirce():
    assert parse_formula("((p->q)->p)->p") == Imp(Imp(Imp(P, Q), P), P)


def test_parse_church_type():
    assert parse_formula("(p->p)->p->p") == Imp(Imp(P, P), Imp(P, P))


def test_arrow_is_right_associative():
    assert parse_formula("p->q->p") == Imp(P, Imp(Q, P))


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_formula("p ->")
    assert exc.value.position == 4
    with pytest.raises(ParseError):
        parse_formula("(p->q")
    with pytest.raises(ParseError):
        parse_formula("p q")
    with pytest.raises(ParseError):
        parse_formula("P")


@given(formulas)
def test_parse_print_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@given(formulas)
def test_decompose_recompose(f):
    prefix, head = decompose(f)
    assert recompose(prefix, head) == f


def test_decompose_examples():
    assert decompose(P) == ((), "p")
    assert decompose(parse_formula("a1->a2->p")) == (
        (Atom("a1"), Atom("a2")),
        "p",
    )
    prefix, head = decompose(parse_formula("((p->q)->p)->p"))
    assert head == "p"
    assert [format_formula(f) for f in prefix] == ["(p->q)->p"]
    # printing the decomposition and re-parsing it recovers the original
    rebuilt = "->".join(
        [f"({format_formula(f)})" for f in prefix] + [head]
    )
    assert parse_formula(rebuilt) == parse_formula("((p->q)->p)->p")


def test_is_horn():
    assert is_horn(parse_formula("p->q->p"))
    assert not is_horn(parse_formula("(p->q)->p"))
    assert is_horn(P)


@given(formulas)
def test_is_horn_iff_atomic_spine(f):
    prefix, _ = decompose(f)
    assert is_horn(f) == all(isinstance(a, Atom) for a in prefix)


def test_is_horn_sequent():
    assert is_horn_sequent(parse_sequent("x:p->q->p, y:q->p->q, z:p |- p"))
    assert not is_horn_sequent(parse_sequent("|- (p->p)->p->p"))
    assert not is_horn_sequent(parse_sequent("x:(p->q)->p |- p"))


def test_context_rejects_duplicates():
    with pytest.raises(ValueError):
        Context((("x", P), ("x", Q)))
    with pytest.raises(ParseError):
        parse_context("x:p, x:q")


def test_context_lookup_and_extend():
    ctx = parse_context("x:p, y:p->q")
    assert ctx.lookup("y") == Imp(P, Q)
    assert ctx.lookup("w") is None
    assert "x" in ctx and "w" not in ctx
    assert ctx.extend("w", Q).names() == {"x", "y", "w"}
    assert ctx.formulas() == {P, Imp(P, Q)}


def test_sequent_round_trip():
    for text in ("|- p", "x:p |- q", "x:p, y:(p->q)->p |- p->p"):
        assert format_sequent(parse_sequent(text)) == text


def test_sequent_stripped():
    s = parse_sequent("x:p, y:p |- p")
    assert s.stripped().formulas == {P}
    assert s.stripped().goal_atom == "p"
    with pytest.raises(ValueError):
        parse_sequent("|- p->p").stripped()


def test_subformula_closure():
    closure = subformula_closure([parse_formula("((p->q)->p)->p")])
    assert {format_formula(f) for f in closure} == {
        "p",
        "q",
        "p->q",
        "(p->q)->p",
        "((p->q)->p)->p",
    }


def test_printing_minimizes_parentheses():
    for text in ("p->q->p", "(p->q)->p", "((p->q)->p)->p", "(p->p)->p->p"):
        assert format_formula(parse_formula(text)) == text
