"""Subexpression combinatorics for expressions (not necessarily reduced words).

A 01-sequence e for a word (s_1, ..., s_m) walks a Bruhat stroll
x_i = x_{i-1} s_i^{e_i}.  Each index gets a decoration: letter U if
x_{i-1} s_i > x_{i-1}, else D, followed by the digit e_i.  The defect
statistic #U0 - #D0 grades the light-leaf basis; summed over subexpressions
with fixed endpoint it reproduces the standard-basis coefficients of
b_{s_1} ... b_{s_m}.
"""

from __future__ import annotations

import json

from .errors import CapError
from .laurent import LaurentPoly
from .parabolic import NElt


class DecoratedSubexpr:
    __slots__ = ("word", "bits", "stroll", "decorations", "defect", "endpoint")

    def __init__(self, word, bits, stroll, decorations):
        self.word = tuple(word)
        self.bits = tuple(bits)
        self.stroll = stroll
        self.decorations = tuple(decorations)
        self.defect = sum(1 for d in decorations if d == "U0") \
            - sum(1 for d in decorations if d == "D0")
        self.endpoint = stroll[-1]

    def __eq__(self, other):
        return isinstance(other, DecoratedSubexpr) and other.word == self.word \
            and other.bits == self.bits

    def __hash__(self):
        return hash((self.word, self.bits))

    def __repr__(self):
        return "DecoratedSubexpr(word=%r, bits=%r, defect=%d)" % (
            self.word, self.bits, self.defect)

    def to_record(self):
        return {
            "bits": list(self.bits),
            "stroll": [list(x.word) for x in self.stroll],
            "decorations": list(self.decorations),
            "defect": self.defect,
            "endpoint": list(self.endpoint.word),
        }


def decorate(ball, word, bits):
    if len(word) != len(bits):
        raise ValueError("bit sequence length must match the word")
    x = ball.identity
    stroll = [x]
    decorations = []
    for s, e in zip(word, bits):
        xs = ball.right(x, s)
        if xs is None:
            raise CapError("Bruhat stroll leaves the group ball")
        up = xs.length > x.length
        decorations.append(("U" if up else "D") + str(e))
        if e:
            x = xs
        stroll.append(x)
    return DecoratedSubexpr(word, bits, stroll, decorations)


def is_antispherical(ball, d, I):
    """True iff every step satisfies x_k s_{k+1} in ^IW."""
    I = frozenset(I)
    for k, s in enumerate(d.word):
        xs = ball.right(d.stroll[k], s)
        if not ball.is_min_rep(xs, I):
            return False
    return True


def enumerate_subexprs(ball, word, I=None, endpoint=None):
    """All subexpressions of word in lexicographic bit order with 1 < 0.

    With I given, restricts to I-antispherical ones (pruning whole subtrees
    as soon as some x_k s_{k+1} leaves ^IW).  With endpoint given, filters
    on the final stroll element.
    """
    I = frozenset(I) if I is not None else None
    out = []

    def rec(k, x, bits):
        if k == len(word):
            d = decorate(ball, word, bits)
            if endpoint is None or d.endpoint == endpoint:
                out.append(d)
            return
        s = word[k]
        xs = ball.right(x, s)
        if xs is None:
            raise CapError("Bruhat stroll leaves the group ball")
        if I is not None and not ball.is_min_rep(xs, I):
            return
        rec(k + 1, xs, bits + (1,))
        rec(k + 1, x, bits + (0,))

    rec(0, ball.identity, ())
    return out


def path_dom_leq(ball, e, f):
    """Path dominance: every stroll element of e is Bruhat-below that of f."""
    if e.word != f.word:
        raise ValueError("path dominance compares subexpressions of one word")
    return all(ball.bruhat_leq(a, b) for a, b in zip(e.stroll, f.stroll))


def double_path_dom_leq(ball, pair1, pair2):
    e1, f1 = pair1
    e2, f2 = pair2
    return path_dom_leq(ball, e1, e2) and path_dom_leq(ball, f1, f2)


def graded_rank(ball, word, x, I):
    """Sum of v^defect over I-antispherical subexpressions with endpoint x."""
    poly = LaurentPoly.zero()
    for d in enumerate_subexprs(ball, word, I=I, endpoint=x):
        poly = poly + LaurentPoly.v(d.defect)
    return poly


def char_of_word(ball, word, I):
    """The diagrammatic character: sum of graded_rank(word, x) n_x over x.

    Equals n_e b_{s_1} ... b_{s_m} computed through the module action.
    """
    I = frozenset(I)
    coeffs = {}
    for d in enumerate_subexprs(ball, word, I=I):
        x = d.endpoint
        coeffs[x] = coeffs.get(x, LaurentPoly.zero()) + LaurentPoly.v(d.defect)
    return NElt(ball, I, coeffs)


def subexprs_to_json(subexprs):
    return json.dumps([d.to_record() for d in subexprs], indent=2)
