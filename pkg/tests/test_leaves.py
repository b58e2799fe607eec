"""Decorated subexpressions: Bruhat strolls, defect grading, path dominance,
and the diagrammatic character."""

import itertools
import json

import pytest

from coxkit.coxeter import CoxeterMatrix, build_ball
from coxkit.hecke import HeckeElt
from coxkit.laurent import LaurentPoly, V
from coxkit.leaves import (char_of_word, decorate, double_path_dom_leq,
                           enumerate_subexprs, graded_rank, is_antispherical,
                           path_dom_leq, subexprs_to_json)
from coxkit.parabolic import NElt


@pytest.fixture
def a2():
    return build_ball(CoxeterMatrix.from_type("A2"), 10)


@pytest.fixture
def aff():
    return build_ball(CoxeterMatrix.from_type("affA1"), 12)


def test_decorations_on_ss(a2):
    top = decorate(a2, (0, 0), (1, 1))
    assert top.decorations == ("U1", "D1")
    assert top.defect == 0
    assert top.endpoint == a2.identity
    low = decorate(a2, (0, 0), (0, 0))
    assert low.decorations == ("U0", "U0")
    assert low.defect == 2
    assert decorate(a2, (0, 0), (1, 0)).decorations == ("U1", "D0")


def test_stroll_is_recorded(a2):
    d = decorate(a2, (0, 1, 0), (1, 1, 0))
    assert [x.word for x in d.stroll] == [(), (0,), (0, 1), (0, 1)]
    assert d.endpoint == a2.product_of_word((0, 1))


def test_bit_length_must_match(a2):
    with pytest.raises(ValueError):
        decorate(a2, (0, 1), (1,))


def test_antispherical_examples(a2, aff):
    I = frozenset({0})
    # first letter s with I = {s}: already e*s leaves the quotient
    assert not is_antispherical(a2, decorate(a2, (0,), (0,)), I)
    assert is_antispherical(a2, decorate(a2, (1,), (1,)), I)
    # affA1, word (t,s,t): bits (1,0,0) stays in the quotient throughout
    d = decorate(aff, (1, 0, 1), (1, 0, 0))
    assert is_antispherical(aff, d, I)
    assert not is_antispherical(aff, decorate(aff, (1, 0, 1), (0, 0, 0)), I)


def test_enumerate_counts_and_filtering(a2):
    word = (0, 1, 0)
    assert len(enumerate_subexprs(a2, word)) == 8
    at_s = enumerate_subexprs(a2, word, endpoint=a2.product_of_word((0,)))
    assert sorted(d.bits for d in at_s) == [(0, 0, 1), (1, 0, 0)]
    I = frozenset({0})
    anti = enumerate_subexprs(a2, word, I=I)
    assert all(is_antispherical(a2, d, I) for d in anti)


def test_path_dominance(a2):
    word = (0, 1)
    top = decorate(a2, word, (1, 1))
    bot = decorate(a2, word, (0, 0))
    assert path_dom_leq(a2, bot, top)
    assert not path_dom_leq(a2, top, bot)
    # (1,0) and (0,1) end at s and t: incomparable
    a = decorate(a2, word, (1, 0))
    b = decorate(a2, word, (0, 1))
    assert not path_dom_leq(a2, a, b)
    assert not path_dom_leq(a2, b, a)
    assert double_path_dom_leq(a2, (bot, bot), (top, top))
    with pytest.raises(ValueError):
        path_dom_leq(a2, a, decorate(a2, (1, 0), (1, 0)))


def test_graded_rank_examples(a2):
    word = (0, 1, 0)
    assert graded_rank(a2, word, a2.product_of_word(word), frozenset()) == \
        LaurentPoly.const(1)
    # two subexpressions reach s: (1,0,0) with U1,U0,D0 (defect 0) and
    # (0,0,1) with U0,U0,U1 (defect 2)
    assert graded_rank(a2, word, a2.product_of_word((0,)), frozenset()) == \
        LaurentPoly.const(1) + LaurentPoly.v(2)
    assert graded_rank(a2, word, a2.identity, frozenset({0})) == \
        LaurentPoly.zero()


def test_char_of_word_affine(aff):
    I = frozenset({0})
    word = (1, 0, 1)
    got = char_of_word(aff, word, I)
    want = NElt(aff, I, {
        aff.product_of_word((1, 0, 1)): LaurentPoly.const(1),
        aff.product_of_word((1, 0)): V,
        aff.product_of_word((1,)): LaurentPoly.const(1),
        aff.identity: V,
    })
    assert got == want


@pytest.mark.parametrize("name,cap", [("A2", 8), ("B2", 10), ("affA1", 10)])
def test_char_matches_module_action(name, cap):
    ball = build_ball(CoxeterMatrix.from_type(name), cap)
    words = [(), (0,), (1, 0), (0, 1, 0), (1, 1), (0, 1, 0, 1)]
    for r in range(ball.rank + 1):
        for I in itertools.combinations(range(ball.rank), r):
            I = frozenset(I)
            for word in words:
                assert char_of_word(ball, word, I) == \
                    NElt.unit(ball, I).mul_b_word(word)


def test_defect_counts_match_hecke_product(a2):
    # with I empty, graded ranks are the standard-basis coefficients of
    # b_{s_1} ... b_{s_m}
    word = (0, 1, 0, 1)
    h = HeckeElt.unit(a2).mul_b_word(word)
    for x in a2.elements:
        assert graded_rank(a2, word, x, frozenset()) == h.coeff(x)


def test_json_export(a2):
    recs = json.loads(subexprs_to_json(enumerate_subexprs(a2, (0, 1))))
    assert len(recs) == 4
    top = next(r for r in recs if r["bits"] == [1, 1])
    assert top["decorations"] == ["U1", "U1"]
    assert top["endpoint"] == [0, 1]
    assert top["defect"] == 0
    assert top["stroll"] == [[], [0], [0, 1]]
