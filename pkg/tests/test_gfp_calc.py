import random

import pytest

import randgen
from proofforest import (
    Atom,
    Context,
    ElimAlt,
    FinLam,
    FpRef,
    Gfp,
    InternalInvariantError,
    Sequent,
    approx_equal,
    fin_alpha_equal,
    fin_term_from_dict,
    fin_term_sequent,
    fin_term_to_dict,
    format_fin_term,
    free_fpvars,
    interp_unfold,
    measure,
    parse_context,
    parse_formula,
    parse_sequent,
    synthesize,
    synthesize_horn,
    synthesize_with_stats,
    well_formed,
)

P, Q = Atom("p"), Atom("q")


def test_synthesize_church_shape():
    term = synthesize(parse_sequent("|- (p->p)->p->p"))
    ctx = parse_context("f:p->p, x:p")
    sigma = Sequent(ctx, P)
    expected = FinLam(
        "f",
        parse_formula("p->p"),
        FinLam(
            "x",
            P,
            Gfp(
                "X",
                sigma,
                (ElimAlt("f", (FpRef("X", sigma),)), ElimAlt("x")),
            ),
        ),
    )
    assert fin_alpha_equal(term, expected)


def test_synthesize_peirce_shape():
    term = synthesize(parse_sequent("|- ((p->q)->p)->p"))
    outer_ctx = parse_context("x:(p->q)->p")
    inner_ctx = parse_context("x:(p->q)->p, z:p")
    expected = FinLam(
        "x",
        parse_formula("(p->q)->p"),
        Gfp(
            "Y",
            Sequent(outer_ctx, P),
            (
                ElimAlt(
                    "x",
                    (FinLam("z", P, Gfp("Z", Sequent(inner_ctx, Q), ())),),
                ),
            ),
        ),
    )
    assert fin_alpha_equal(term, expected)


def test_synthesize_horn_example_shape():
    s = parse_sequent("x:p->q->p, y:q->p->q, z:p |- p")
    term = synthesize_horn(s)
    sp = Sequent(s.context, P)
    sq = Sequent(s.context, Q)
    expected = Gfp(
        "Xp",
        sp,
        (
            ElimAlt(
                "x",
                (
                    FpRef("Xp", sp),
                    Gfp("Xq", sq, (ElimAlt("y", (FpRef("Xq", sq), FpRef("Xp", sp))),)),
                ),
            ),
            ElimAlt("z"),
        ),
    )
    assert fin_alpha_equal(term, expected)


def test_synthesize_horn_trivial_and_empty_rule_sets():
    s = parse_sequent("z:p |- p")
    assert fin_alpha_equal(
        synthesize_horn(s), Gfp("X", Sequent(s.context, P), (ElimAlt("z"),))
    )
    s2 = parse_sequent("x:q->p |- p")
    sq = Sequent(s2.context, Q)
    expected = Gfp(
        "Xp", Sequent(s2.context, P), (ElimAlt("x", (Gfp("Xq", sq, ()),)),)
    )
    assert fin_alpha_equal(synthesize_horn(s2), expected)


def test_synthesize_horn_rejects_non_horn():
    with pytest.raises(ValueError):
        synthesize_horn(parse_sequent("|- (p->p)->p->p"))
    with pytest.raises(ValueError):
        synthesize_horn(parse_sequent("x:(p->q)->p |- p"))


def test_free_fpvars():
    sigma = Sequent(Context(), P)
    assert free_fpvars(FpRef("X", sigma)) == {"X"}
    assert free_fpvars(Gfp("X", sigma, (ElimAlt("x", (FpRef("X", sigma),)),))) == set()


def test_synthesized_terms_are_closed_and_well_formed():
    rng = random.Random(31)
    for _ in range(150):
        term = synthesize(randgen.sequent(rng))
        assert free_fpvars(term) == frozenset()
        assert well_formed(term)
    for s in randgen.CORPUS.values():
        term = synthesize(s)
        assert free_fpvars(term) == frozenset()
        assert well_formed(term)


def test_well_formed_rejects_bad_references():
    sigma = Sequent(parse_context("x:p"), P)
    bigger = Sequent(parse_context("x:p, y:q"), P)
    assert not well_formed(FpRef("X", sigma))
    # binder below the reference is required, not above
    assert not well_formed(Gfp("X", bigger, (ElimAlt("x", (FpRef("X", sigma),)),)))


def test_measure_examples():
    assert measure([P]) == 2
    assert measure([parse_formula("p->p")]) == 4
    assert measure([parse_formula("((p->q)->p)->p")]) == 64


def test_termination_guard_peak_under_bound():
    rng = random.Random(5)
    for _ in range(120):
        _, stats = synthesize_with_stats(randgen.sequent(rng))
        assert 0 < stats.peak_accumulator <= stats.bound


def test_horn_and_general_synthesis_interpret_alike():
    rng = random.Random(17)
    for _ in range(60):
        s = randgen.horn_sequent(rng)
        horn = synthesize_horn(s)
        general = synthesize(s)
        for d in (1, 3, 5):
            assert approx_equal(interp_unfold(horn, d), interp_unfold(general, d))


def test_alternatives_have_distinct_profiles():
    def walk(t):
        match t:
            case FinLam(_, _, body):
                walk(body)
            case Gfp(_, _, alternatives):
                profiles = [
                    (a.head, tuple(fin_term_sequent(x) for x in a.args))
                    for a in alternatives
                ]
                assert len(profiles) == len(set(profiles))
                for a in alternatives:
                    for x in a.args:
                        walk(x)
            case FpRef():
                pass

    for s in randgen.CORPUS.values():
        walk(synthesize(s))


def test_fin_term_sequent_peels_binders():
    s = parse_sequent("|- (p->p)->p->p")
    term = synthesize(s)
    assert fin_term_sequent(term) == s


def test_format_fin_term_spells_empty_sum_as_O():
    term = synthesize(parse_sequent("|- ((p->q)->p)->p"))
    text = format_fin_term(term)
    assert "gfp" in text and "}. O" in text
    assert "@ {" in text


def test_json_round_trip():
    for s in randgen.CORPUS.values():
        term = synthesize(s)
        assert fin_term_from_dict(fin_term_to_dict(term)) == term


def test_internal_error_is_a_hard_error():
    assert issubclass(InternalInvariantError, RuntimeError)
