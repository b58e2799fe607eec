"""Spherical (M) and antispherical (N) modules over the Hecke algebra.

Both modules have a standard basis indexed by the minimal coset
representatives ^IW.  The b_s action has three cases:

    n_x b_s = n_{xs} + v n_x          xs in ^IW, xs > x
              n_{xs} + v^{-1} n_x     xs in ^IW, xs < x
              0   (N)  /  (v + v^{-1}) m_x   (M)    xs not in ^IW

The canonical bases d_x (in N) and c_x (in M) are computed by the same
self-dual induction used for the Hecke canonical basis.
"""

from __future__ import annotations

from .errors import CapError
from .hecke import Element_shortlex, HeckeElt, _acc, _selfdual_inductive
from .laurent import LaurentPoly, ONE, V, VINV

_V_PLUS_VINV = V + VINV


class ParaElt:
    """Finitely supported map ^IW -> LaurentPoly inside M or N."""

    __slots__ = ("ball", "I", "coeffs")

    spherical = False

    def __init__(self, ball, I, coeffs=None):
        self.ball = ball
        self.I = frozenset(I)
        self.coeffs = {x: p for x, p in (coeffs or {}).items() if p}

    @classmethod
    def std(cls, ball, I, x, p=ONE):
        return cls(ball, I, {x: p})

    @classmethod
    def unit(cls, ball, I):
        return cls.std(ball, I, ball.identity)

    def __eq__(self, other):
        return isinstance(other, ParaElt) and other.spherical == self.spherical \
            and other.ball is self.ball and other.I == self.I \
            and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.spherical, self.I, frozenset(self.coeffs.items())))

    def _make(self, coeffs):
        return type(self)(self.ball, self.I, coeffs)

    def __add__(self, other):
        out = dict(self.coeffs)
        for x, p in other.coeffs.items():
            out[x] = out.get(x, LaurentPoly.zero()) + p
        return self._make(out)

    def __sub__(self, other):
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, p):
        return self._make({x: q * p for x, q in self.coeffs.items()})

    def coeff(self, x):
        return self.coeffs.get(x, LaurentPoly.zero())

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs, key=Element_shortlex)

    def mul_bs(self, s):
        ball = self.ball
        out = {}
        for x, p in self.coeffs.items():
            xs = ball.right(x, s)
            if xs is None:
                raise CapError("module action leaves the group ball")
            if ball.is_min_rep(xs, self.I):
                _acc(out, xs, p)
                _acc(out, x, p * (V if xs.length > x.length else VINV))
            elif self.spherical:
                _acc(out, x, p * _V_PLUS_VINV)
        return self._make(out)

    def mul_b_word(self, word):
        n = self
        for s in word:
            n = n.mul_bs(s)
        return n

    def __repr__(self):
        if not self.coeffs:
            return "0"
        basis = "m" if self.spherical else "n"
        return " + ".join("(%s)%s[%r]" % (p, basis, x) for x, p in
                          sorted(self.coeffs.items(), key=lambda kv: Element_shortlex(kv[0])))


class NElt(ParaElt):
    spherical = False


class MElt(ParaElt):
    spherical = True


def project_pi(h, I, spherical=False):
    """Quotient map H -> N (or M): h_{ux} -> (-v)^{l(u)} n_x for u in W_I,
    x in ^IW (v^{-l(u)} m_x in the spherical case; these are the two
    eigenvalues of h_s from the quadratic relation)."""
    I = frozenset(I)
    ball = h.ball
    sign = VINV if spherical else -V
    out = {}
    for w, p in h.coeffs.items():
        u, x = ball.coset_decompose(w, I)
        _acc(out, x, p * sign ** u.length)
    cls = MElt if spherical else NElt
    return cls(ball, I, out)


def n_bar(n):
    """Bar involution on N (or M): lift each n_x to h_x, bar, project back."""
    out = type(n)(n.ball, n.I)
    for x, p in n.coeffs.items():
        barred = HeckeElt.std(n.ball, x).bar()
        out = out + project_pi(barred, n.I, spherical=n.spherical).scale(p.bar())
    return out


class ParabolicKLTable:
    """Canonical bases d_x (antispherical) or c_x (spherical) over ^IW."""

    def __init__(self, ball, I, spherical=False):
        self.ball = ball
        self.I = frozenset(I)
        self.spherical = spherical
        cls = MElt if spherical else NElt
        self._b = {ball.identity: cls.unit(ball, self.I)}

    def b(self, x):
        got = self._b.get(x)
        if got is None:
            cls = MElt if self.spherical else NElt
            got = _selfdual_inductive(self, x, cls.std(self.ball, self.I, x))
            self._b[x] = got
        return got

    d_basis = b
    c_basis = b

    def poly(self, y, x):
        return self.b(x).coeff(y)

    def descent_for_induction(self, x):
        return max(self.ball.right_descents(x))

    def mul_bs(self, elt, s):
        return elt.mul_bs(s)

    def table_rows(self, elements=None):
        """(y, x, poly) rows for x in ^IW, nonzero polynomials only."""
        if elements is None:
            elements = self.ball.min_reps(self.I)
        rows = []
        for x in sorted(elements, key=Element_shortlex):
            bx = self.b(x)
            for y in bx.support():
                rows.append((y, x, bx.coeff(y)))
        return rows


def check_deodhar(kl, ntable, y, x):
    """n_{y,x} = sum over z in W_I of (-v)^{l(z)} h_{zy,x}.

    Only z with l(z) + l(y) <= l(x) can contribute; the subgroup elements are
    enumerated inside the ball, which covers that range whenever x does.
    """
    ball = kl.ball
    rhs = LaurentPoly.zero()
    for z in ball.subgroup_elements(ntable.I):
        if z.length + y.length > x.length:
            continue
        zy = ball.product_of_word(y.word, start=z)
        rhs = rhs + (-V) ** z.length * kl.h_poly(zy, x)
    return ntable.poly(y, x) == rhs


def check_finitary(kl, mtable, y, x):
    """m_{y,x} = h_{w0 y, w0 x} for the longest element w0 of W_I."""
    ball = kl.ball
    w0 = ball.longest_element(mtable.I)
    w0y = ball.product_of_word(y.word, start=w0)
    w0x = ball.product_of_word(x.word, start=w0)
    return mtable.poly(y, x) == kl.h_poly(w0y, w0x)


def check_monotonicity(table_I, table_J, y, x):
    """n^I_{y,x} <= n^J_{y,x} coefficientwise, for J contained in I."""
    assert table_J.I <= table_I.I
    return table_I.poly(y, x).leq_coeffwise(table_J.poly(y, x))
