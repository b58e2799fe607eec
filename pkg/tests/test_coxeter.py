"""Coxeter system engine: ball enumeration, descents, Bruhat order,
parabolic quotients, exact root action."""

import itertools
import random

import pytest

from coxkit.coxeter import INF, CoxeterMatrix, build_ball
from coxkit.errors import NotFinitaryError, UsageError


def ball_of(name, cap):
    return build_ball(CoxeterMatrix.from_type(name), cap)


# -- matrices -------------------------------------------------------------------

def test_matrix_validation():
    with pytest.raises(UsageError):
        CoxeterMatrix(((1, 3), (2, 1)))  # not symmetric
    with pytest.raises(UsageError):
        CoxeterMatrix(((2, 3), (3, 1)))  # bad diagonal
    with pytest.raises(UsageError):
        CoxeterMatrix(((1, 1), (1, 1)))  # off-diagonal < 2


def test_matrix_json_roundtrip():
    m = CoxeterMatrix.from_type("affA1")
    again = CoxeterMatrix.from_json(m.to_json())
    assert again == m
    assert again.entries[0][1] is INF


# -- ball sizes -----------------------------------------------------------------

def test_ball_sizes():
    assert len(ball_of("A2", 10)) == 6
    assert len(build_ball(CoxeterMatrix(((1,),)), 5)) == 2
    assert len(ball_of("affA1", 4)) == 9
    assert len(ball_of("A3", 6)) == 24
    assert len(ball_of("B3", 9)) == 48
    assert len(ball_of("H3", 15)) == 120


def test_shortlex_canonical_words():
    ball = ball_of("A2", 10)
    words = sorted(x.word for x in ball.elements)
    assert ((), (0,), (0, 1), (0, 1, 0), (1,), (1, 0)) == tuple(words)


# -- descents -------------------------------------------------------------------

def test_right_descends_examples():
    ball = ball_of("A2", 10)
    e = ball.identity
    s, t = 0, 1
    st = ball.product_of_word((s, t))
    assert not ball.right_descends(e, s)
    assert not ball.right_descends(st, s)
    assert ball.right_descends(st, t)


@pytest.mark.parametrize("name,cap", [("A3", 6), ("B3", 9), ("affA2", 8)])
def test_descent_agrees_with_length(name, cap):
    ball = ball_of(name, cap)
    rng = random.Random(17)
    elts = list(ball.elements)
    for _ in range(2000):
        x = rng.choice(elts)
        s = rng.randrange(ball.rank)
        xs = ball.right(x, s)
        if xs is None:
            continue
        assert ball.right_descends(x, s) == (xs.length < x.length)


@pytest.mark.parametrize("name,cap", [("A3", 6), ("B3", 9), ("H3", 10), ("affA1", 12)])
def test_root_dichotomy(name, cap):
    # every x(alpha_s) has all coordinate signs >= 0 or all <= 0
    ball = ball_of(name, cap)
    for x in ball.elements:
        for s in range(ball.rank):
            signs = {ball.root_sign(ball.root_image(x, s))}
            assert signs <= {1, -1}


# -- Bruhat order -----------------------------------------------------------------

def subword_leq(ball, y, x):
    """Brute-force oracle: y <= x iff some subword of a reduced word of x
    multiplies out to y with length l(y)."""
    word = x.word
    for bits in itertools.product((0, 1), repeat=len(word)):
        sub = tuple(s for s, b in zip(word, bits) if b)
        if len(sub) != y.length:
            continue
        if ball.product_of_word(sub) == y:
            return True
    return False


def test_bruhat_examples():
    ball = ball_of("A2", 10)
    s = ball.product_of_word((0,))
    t = ball.product_of_word((1,))
    sts = ball.product_of_word((0, 1, 0))
    for x in ball.elements:
        assert ball.bruhat_leq(ball.identity, x)
    assert ball.bruhat_leq(s, sts)
    assert not ball.bruhat_leq(s, t)


@pytest.mark.parametrize("name,cap", [("A2", 6), ("B2", 8), ("A3", 6)])
def test_bruhat_matches_subword_criterion(name, cap):
    ball = ball_of(name, cap)
    for y in ball.elements:
        for x in ball.elements:
            assert ball.bruhat_leq(y, x) == subword_leq(ball, y, x)


# -- parabolic quotients ------------------------------------------------------------

def test_is_min_rep_examples():
    ball = ball_of("A2", 10)
    s = ball.product_of_word((0,))
    t = ball.product_of_word((1,))
    for I in (frozenset(), frozenset({0}), frozenset({0, 1})):
        assert ball.is_min_rep(ball.identity, I)
    assert ball.is_min_rep(t, frozenset({0}))
    assert not ball.is_min_rep(s, frozenset({0}))


def test_coset_decompose_examples():
    ball = ball_of("A2", 10)
    I = frozenset({0})
    st = ball.product_of_word((0, 1))
    u, x = ball.coset_decompose(st, I)
    assert u.word == (0,) and x.word == (1,)
    for w in ball.elements:
        u, x = ball.coset_decompose(w, I)
        assert ball.is_min_rep(x, I)
        assert u.length + x.length == w.length
        assert ball.product_of_word(x.word, start=u) == w
    t = ball.product_of_word((1,))
    assert ball.coset_decompose(t, I) == (ball.identity, t)


def test_parabolic_test_examples():
    ball = ball_of("A2", 10)
    I = frozenset({0})
    t = ball.product_of_word((1,))
    ts = ball.product_of_word((1, 0))
    assert ball.parabolic_test(t, 0, I) == ("in_quotient", None)
    assert ball.parabolic_test(ts, 1, I) == ("exits_via", 0)
    assert ball.parabolic_test(ball.identity, 0, I) == ("exits_via", 0)
    with pytest.raises(UsageError):
        ball.parabolic_test(ball.product_of_word((0,)), 1, I)


@pytest.mark.parametrize("name,cap", [("A3", 6), ("B3", 9), ("affA1", 12)])
def test_parabolic_property_agreement(name, cap):
    # the root-theoretic verdict must agree with the combinatorial one;
    # parabolic_test asserts this internally, so exercising it suffices
    ball = ball_of(name, cap)
    for r in range(ball.rank + 1):
        for I in itertools.combinations(range(ball.rank), r):
            I = frozenset(I)
            for x in ball.min_reps(I):
                for s in range(ball.rank):
                    if ball.right(x, s) is None:
                        continue
                    verdict, via = ball.parabolic_test(x, s, I)
                    assert (verdict == "exits_via") == (via is not None)


def test_min_rep_counts_a2():
    ball = ball_of("A2", 10)
    assert len(ball.min_reps(frozenset({0}))) == 3
    assert len(ball.min_reps(frozenset({0, 1}))) == 1


def test_longest_element():
    ball = ball_of("A2", 10)
    assert ball.longest_element(frozenset()) == ball.identity
    assert ball.longest_element(frozenset({0, 1})).word == (0, 1, 0)
    aff = ball_of("affA1", 8)
    with pytest.raises(NotFinitaryError):
        aff.longest_element(frozenset({0, 1}))


def test_subgroup_elements():
    ball = ball_of("A3", 6)
    assert len(ball.subgroup_elements(frozenset({0, 1}))) == 6
    assert len(ball.subgroup_elements(frozenset())) == 1
