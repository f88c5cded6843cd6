import random

import pytest

import randgen
from proofforest import (
    App,
    Lam,
    OracleOverflowError,
    Sequent,
    alpha_key,
    bfs_prove,
    decompose,
    parse_sequent,
    parse_term,
    typecheck,
)


def test_bfs_peirce_empty():
    assert bfs_prove(randgen.CORPUS["peirce"], 20) == set()


def test_bfs_identity_unique():
    got = bfs_prove(randgen.CORPUS["identity"], 5)
    assert {alpha_key(t) for t in got} == {alpha_key(parse_term("\\x:p. x"))}


def test_bfs_horn_single_solution():
    got = bfs_prove(randgen.CORPUS["horn_p"], 10)
    assert {alpha_key(t) for t in got} == {alpha_key(App("z"))}


def test_bfs_results_typecheck():
    rng = random.Random(67)
    for _ in range(80):
        s = randgen.sequent(rng)
        for t in bfs_prove(s, 8):
            assert typecheck(s.context, t) == s.goal


def test_bfs_closed_under_inversion():
    # peeling the outer constructor of any proof lands on proofs of the
    # premise sequents, which the oracle finds again
    rng = random.Random(91)
    seen = 0
    while seen < 40:
        s = randgen.sequent(rng)
        for t in bfs_prove(s, 8):
            match t:
                case Lam(var, annotation, body):
                    premise = Sequent(s.context.extend(var, annotation), s.goal.consequent)
                    assert alpha_key(body) in {
                        alpha_key(u) for u in bfs_prove(premise, 8)
                    }
                case App(head, args):
                    spine, _ = decompose(s.context.lookup(head))
                    for arg, b in zip(args, spine):
                        premise = Sequent(s.context, b)
                        assert alpha_key(arg) in {
                            alpha_key(u) for u in bfs_prove(premise, 8)
                        }
            seen += 1


def test_bfs_overflow_is_loud():
    s = parse_sequent("a:p->p, b:p->p, c:p |- p")
    with pytest.raises(OracleOverflowError):
        bfs_prove(s, 12, node_cap=10)


def test_bfs_rejects_nonpositive_bound():
    with pytest.raises(ValueError):
        bfs_prove(randgen.CORPUS["identity"], 0)
