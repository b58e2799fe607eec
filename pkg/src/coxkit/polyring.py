"""Polynomial rings attached to a Coxeter system.

R is the symmetric algebra over K = Z[theta] on the simple roots alpha_s
(each of degree 2), carrying the reflection action of W and the Demazure
operators.  R_I is the quotient killing {alpha_s : s in I}; Q_I additionally
inverts the images of roots not supported on I.  Fractions keep their
denominators as formal multisets of roots (no gcd reduction); equality is
tested by cross-multiplication.
"""

from __future__ import annotations

from .errors import CoxkitError, RingParameterError
from .scalars import CycInt, CycRat


class NotInvertibleError(CoxkitError):
    """A root supported inside I cannot be inverted in Q_I."""


class PolyRing:
    """Context object: the ring R for one Coxeter system (one ball)."""

    def __init__(self, ball):
        self.ball = ball
        self.rank = ball.rank
        self.ring = ball.ring
        self._zero_mono = (0,) * self.rank
        self._action_memo = {}

    # -- constructors ------------------------------------------------------

    def zero(self):
        return Poly(self, {})

    def const(self, c):
        if isinstance(c, int):
            c = self.ring.embed(c)
        return Poly(self, {self._zero_mono: c})

    def one(self):
        return self.const(1)

    def alpha(self, s):
        mono = tuple(1 if t == s else 0 for t in range(self.rank))
        return Poly(self, {mono: self.ring.one()})

    def linear(self, coords):
        """The linear form sum coords[t] * alpha_t."""
        out = {}
        for t, c in enumerate(coords):
            if isinstance(c, int):
                c = self.ring.embed(c)
            if not c.is_zero():
                mono = tuple(1 if u == t else 0 for u in range(self.rank))
                out[mono] = c
        return Poly(self, out)

    # -- W-action and Demazure operators ------------------------------------

    def root_coords(self, x, s):
        """Coordinates of x(alpha_s) in the simple-root basis."""
        return self.ball.root_image(x, s)

    def w_action(self, w, f):
        """Substitute alpha_s -> w(alpha_s) throughout f."""
        if w.length == 0:
            return f
        images = self._action_memo.get(w.idx)
        if images is None:
            images = [self.linear(self.root_coords(w, s)) for s in range(self.rank)]
            self._action_memo[w.idx] = images
        out = self.zero()
        for mono, c in f.coeffs.items():
            term = self.const(c)
            for s, k in enumerate(mono):
                for _ in range(k):
                    term = term * images[s]
            out = out + term
        return out

    def s_action(self, s, f):
        return self.w_action(self.ball.product_of_word((s,)), f)

    def demazure(self, s, f):
        """partial_s(f) = (f - s(f)) / alpha_s; the quotient is exact."""
        g = f - self.s_action(s, f)
        out = {}
        for mono, c in g.coeffs.items():
            assert mono[s] > 0, "Demazure numerator not divisible by alpha_s"
            lowered = mono[:s] + (mono[s] - 1,) + mono[s + 1:]
            out[lowered] = c
        return Poly(self, out)

    # -- the quotient R_I -----------------------------------------------------

    def reduce_mod_I(self, f, I):
        """Image of f in R_I: kill every monomial touching a variable in I."""
        if not I:
            return f
        out = {m: c for m, c in f.coeffs.items() if not any(m[s] for s in I)}
        return Poly(self, out)

    def reduce_root_mod_I(self, coords, I):
        """Image of a root's coordinate vector in R_I; must stay nonzero."""
        out = tuple(self.ring.zero() if s in I else self._embed(c)
                    for s, c in enumerate(coords))
        if all(c.is_zero() for c in out):
            raise NotInvertibleError("root supported inside I is not invertible in Q_I")
        return out

    def _embed(self, c):
        return self.ring.embed(c) if isinstance(c, int) else c

    def qi_invert_root(self, coords, I):
        """1 / (image of the root) as a Q_I fraction."""
        root = self.reduce_root_mod_I(coords, I)
        return QCoeff(self, self.one(), (root,))

    def qi_const(self, f):
        return QCoeff(self, f, ())


class Poly:
    """Element of R: map from exponent monomials to K coefficients."""

    __slots__ = ("pr", "coeffs")

    def __init__(self, pr, coeffs):
        self.pr = pr
        self.coeffs = {m: c for m, c in coeffs.items() if not c.is_zero()}

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            got = out.get(m)
            out[m] = c if got is None else got + c
        return Poly(self.pr, out)

    def __neg__(self):
        return Poly(self.pr, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, CycInt)):
            other = self.pr.const(other)
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                got = out.get(m)
                out[m] = c if got is None else got + c
        return Poly(self.pr, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Poly) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return all(not any(m) for m in self.coeffs)

    def constant(self):
        return self.coeffs.get(self.pr._zero_mono, self.pr.ring.zero())

    def degree(self):
        """Degree with deg(alpha_s) = 2; None for the zero polynomial."""
        if not self.coeffs:
            return None
        return max(2 * sum(m) for m in self.coeffs)

    def is_homogeneous(self):
        degs = {2 * sum(m) for m in self.coeffs}
        return len(degs) <= 1

    def lead(self):
        """(monomial, coefficient) at the lexicographically largest monomial."""
        m = max(self.coeffs)
        return m, self.coeffs[m]

    def evaluate(self, point):
        """Evaluate at integer coordinates alpha_s = point[s], in K."""
        total = self.pr.ring.zero()
        for m, c in self.coeffs.items():
            term = c
            for s, k in enumerate(m):
                for _ in range(k):
                    term = term * point[s]
            total = total + term
        return total

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, reverse=True):
            c = self.coeffs[m]
            vars_ = "*".join(
                ("a%d" % (s + 1)) + ("" if k == 1 else "^%d" % k)
                for s, k in enumerate(m) if k)
            body = repr(c) if not vars_ else (
                vars_ if c == 1 else "(%r)*%s" % (c, vars_))
            parts.append(body)
        return " + ".join(parts)


class QCoeff:
    """num / (product of root images): an element of Q_I.

    The denominator is a formal sorted tuple of root coordinate vectors
    (each already reduced mod I and nonzero).  No gcd reduction is done;
    equality cross-multiplies.
    """

    __slots__ = ("pr", "num", "den")

    def __init__(self, pr, num, den=()):
        self.pr = pr
        self.num = num
        if num.coeffs:
            self.den = tuple(sorted((tuple(r) for r in den), key=_root_key))
        else:
            self.den = ()

    def den_poly(self):
        out = self.pr.one()
        for root in self.den:
            out = out * self.pr.linear(root)
        return out

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return QCoeff(self.pr, self.num + other.num, self.den)
        # cancel the common denominator roots, multiset-wise
        common, rest1, rest2 = _multiset_split(self.den, other.den)
        num = self.num * _root_product(self.pr, rest2) \
            + other.num * _root_product(self.pr, rest1)
        return QCoeff(self.pr, num, common + rest1 + rest2)

    def __neg__(self):
        return QCoeff(self.pr, -self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            other = QCoeff(self.pr, other)
        return QCoeff(self.pr, self.num * other.num, self.den + other.den)

    def div_root(self, root):
        """Divide by an (already reduced, nonzero) root coordinate vector."""
        return QCoeff(self.pr, self.num, self.den + (tuple(root),))

    def __eq__(self, other):
        if not isinstance(other, QCoeff):
            return NotImplemented
        common, rest1, rest2 = _multiset_split(self.den, other.den)
        return self.num * _root_product(self.pr, rest2) \
            == other.num * _root_product(self.pr, rest1)

    def __hash__(self):
        raise TypeError("QCoeff is unhashable (equality is semantic)")

    def constant_value(self):
        """The element c of Frac(K) with self == c, or None if non-constant."""
        if self.num.is_zero():
            return CycRat(self.pr.ring, (0,) * self.pr.ring.deg)
        den = self.den_poly()
        _, nl = self.num.lead()
        _, dl = den.lead()
        if self.num * dl == den * nl:
            return CycRat.from_cycint(nl) / CycRat.from_cycint(dl)
        return None

    def evaluate(self, point):
        """Value at integer coordinates, as a CycRat; denominator must not vanish."""
        den = self.den_poly().evaluate(point)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return CycRat.from_cycint(self.num.evaluate(point)) / CycRat.from_cycint(den)

    def to_record(self):
        return {"num": repr(self.num),
                "den_roots": [[repr(c) for c in root] for root in self.den]}

    def __repr__(self):
        if not self.den:
            return repr(self.num)
        return "(%r) / (%r)" % (self.num, self.den_poly())


def _root_key(root):
    return tuple(c.coeffs for c in root)


def _multiset_split(den1, den2):
    """(common, den1-only, den2-only) as sorted tuples."""
    common = []
    rest1 = list(den1)
    rest2 = list(den2)
    for r in den1:
        if r in rest2:
            rest1.remove(r)
            rest2.remove(r)
            common.append(r)
    return tuple(common), tuple(rest1), tuple(rest2)


def _root_product(pr, roots):
    out = pr.one()
    for r in roots:
        out = out * pr.linear(r)
    return out
