"""Coxeter system engine.

Elements are identified by the matrix of the reflection representation on the
|S|-dimensional space with the simple roots as a basis (pairings
<alpha_t, alpha_s^vee> = -2cos(pi/m_st), exact in K = Z[2cos(pi/N)]).  A
GroupBall enumerates all elements up to a length cap breadth first; the first
discovered reduced word of an element is its ShortLex-least one.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache

from .errors import (CapError, NotFinitaryError, ResourceError, UsageError)
from .scalars import ScalarRing

INF = math.inf


class CoxeterMatrix:
    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        rank = len(entries)
        for i, row in enumerate(entries):
            if len(row) != rank:
                raise UsageError("Coxeter matrix must be square")
            if row[i] != 1:
                raise UsageError("diagonal entries must be 1")
            for j, m in enumerate(row):
                if i != j and (m != entries[j][i] or (m is not INF and (not isinstance(m, int) or m < 2))):
                    raise UsageError("off-diagonal entries must be symmetric, >= 2 or inf")
        self.rank = rank
        self.entries = entries

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_type(name):
        """Built-in types: A n, B n, D n, H 3, I2_m, affA n (e.g. 'A3', 'I2_7')."""
        name = name.strip()
        if name.startswith("I2_"):
            m = int(name[3:])
            return CoxeterMatrix(((1, m), (m, 1)))
        for prefix in ("affA", "A", "B", "D", "H"):
            if name.startswith(prefix):
                n = int(name[len(prefix):])
                break
        else:
            raise UsageError("unknown Coxeter type %r" % name)
        if prefix == "affA":
            if n == 1:
                return CoxeterMatrix(((1, INF), (INF, 1)))
            rank = n + 1
            edges = [(i, (i + 1) % rank) for i in range(rank)]
            order = 3
        elif prefix == "A":
            rank = n
            edges = [(i, i + 1) for i in range(n - 1)]
            order = 3
        elif prefix == "B":
            if n < 2:
                raise UsageError("B n needs n >= 2")
            rank = n
            edges = [(i, i + 1) for i in range(n - 1)]
            order = 3
        elif prefix == "D":
            if n < 3:
                raise UsageError("D n needs n >= 3")
            rank = n
            edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
            order = 3
        else:  # H
            if n != 3:
                raise UsageError("only H 3 is built in")
            rank = 3
            edges = [(0, 1), (1, 2)]
            order = 3
        mat = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for a, b in edges:
            mat[a][b] = mat[b][a] = order
        if prefix == "B":
            mat[n - 2][n - 1] = mat[n - 1][n - 2] = 4
        if prefix == "H":
            mat[0][1] = mat[1][0] = 5
        return CoxeterMatrix(mat)

    @staticmethod
    def from_json(text):
        data = json.loads(text)
        rank = data["rank"]
        entries = [[INF if e == "inf" else int(e) for e in row] for row in data["entries"]]
        if len(entries) != rank:
            raise UsageError("rank does not match entry table")
        return CoxeterMatrix(entries)

    def to_json(self):
        rows = [["inf" if e is INF else e for e in row] for row in self.entries]
        return json.dumps({"rank": self.rank, "entries": rows}, sort_keys=True)

    canonical_form = to_json

    def __eq__(self, other):
        return isinstance(other, CoxeterMatrix) and other.entries == self.entries

    def __hash__(self):
        return hash(self.entries)

    # -- scalars -----------------------------------------------------------

    def ring_modulus(self):
        """N = lcm of the finite off-diagonal entries (1 if there are none)."""
        n = 1
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                m = self.entries[i][j]
                if m is not INF:
                    n = n * m // math.gcd(n, m)
        return n

    def scalar_ring(self):
        return ScalarRing(self.ring_modulus())

    def cartan(self, ring=None):
        """c[t][s] = <alpha_t, alpha_s^vee> as CycInt."""
        ring = ring or self.scalar_ring()
        two = ring.embed(2)
        return tuple(
            tuple(two if s == t else ring.cos_entry(None if self.entries[t][s] is INF
                                                    else self.entries[t][s])
                  for s in range(self.rank))
            for t in range(self.rank))


class Element:
    """An interned group element; identity and hash are per-ball."""

    __slots__ = ("ball", "idx", "word", "length", "_hash")

    def __init__(self, ball, idx, word):
        self.ball = ball
        self.idx = idx
        self.word = word
        self.length = len(word)
        self._hash = hash((id(ball), idx))

    def __eq__(self, other):
        return isinstance(other, Element) and other.ball is self.ball and other.idx == self.idx

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "<%s>" % ("".join("s%d" % (g + 1) for g in self.word) or "e")

    def shortlex_key(self):
        return (self.length, self.word)

    def inverse(self):
        return self.ball.inverse(self)

    def matrix_key(self):
        return self.ball._matrix_of(self.idx)


class GroupBall:
    """All elements of (W, S) of length <= length_cap, breadth first."""

    def __init__(self, matrix, length_cap, max_elements=2_000_000):
        self.matrix = matrix
        self.length_cap = length_cap
        self.rank = matrix.rank
        self.ring = matrix.scalar_ring()
        self.cartan = matrix.cartan(self.ring)
        self._int_mode = all(c.is_integer() for row in self.cartan for c in row)
        self._build(max_elements)
        self._inv = None
        self._bruhat_memo = {}
        self._root_memo = {}
        self._wi_memo = {}

    # -- construction ------------------------------------------------------

    def _build(self, max_elements):
        rank, d = self.rank, self.ring.deg
        if self._int_mode:
            cint = [[c.as_integer() for c in row] for row in self.cartan]
            ident = tuple(1 if i == j else 0 for j in range(rank) for i in range(rank))
        else:
            cvec = [[c.coeffs for c in row] for row in self.cartan]
            one = (1,) + (0,) * (d - 1)
            zero = (0,) * d
            ident = tuple(v for j in range(rank) for i in range(rank)
                          for v in (one if i == j else zero))
        neigh = [[t for t in range(rank) if t != s and not self.cartan[t][s].is_zero()]
                 for s in range(rank)]
        mul = self.ring._mul_coeffs

        if self._int_mode:
            def mul_key(mat, s):
                lst = list(mat)
                b = s * rank
                cs = mat[b:b + rank]
                lst[b:b + rank] = [-v for v in cs]
                for t in neigh[s]:
                    a = cint[t][s]
                    bt = t * rank
                    lst[bt:bt + rank] = [p - a * q
                                         for p, q in zip(mat[bt:bt + rank], cs)]
                return tuple(lst)
        else:
            def mul_key(mat, s):
                lst = list(mat)
                b = s * rank * d
                cs = [mat[b + u * d:b + (u + 1) * d] for u in range(rank)]
                lst[b:b + rank * d] = [-v for v in mat[b:b + rank * d]]
                for t in neigh[s]:
                    a = cvec[t][s]
                    bt = t * rank * d
                    for u in range(rank):
                        aq = mul(a, cs[u])
                        off = bt + u * d
                        lst[off:off + d] = [p - q for p, q in zip(mat[off:off + d], aq)]
                return tuple(lst)

        mats = [ident]
        index = {ident: 0}
        words = [()]
        right = [[None] * rank]
        frontier = [0]
        for _length in range(self.length_cap):
            nxt = []
            for x in frontier:
                mat = mats[x]
                for s in range(rank):
                    if right[x][s] is not None:
                        continue
                    key = mul_key(mat, s)
                    j = index.get(key)
                    if j is None:
                        j = len(mats)
                        if j > max_elements:
                            raise ResourceError("group ball exceeds element budget")
                        mats.append(key)
                        index[key] = j
                        words.append(words[x] + (s,))
                        right.append([None] * rank)
                        nxt.append(j)
                    right[x][s] = j
                    right[j][s] = x
            frontier = nxt
        # Boundary elements can still have in-ball products (their descents);
        # fill those in so length comparisons at the cap stay correct.
        for x in frontier:
            mat = mats[x]
            for s in range(rank):
                if right[x][s] is None:
                    j = index.get(mul_key(mat, s))
                    if j is not None:
                        right[x][s] = j
                        right[j][s] = x
        self._mats = mats
        self._right = right
        self.elements = [Element(self, i, w) for i, w in enumerate(words)]
        self.identity = self.elements[0]

    def _matrix_of(self, idx):
        return self._mats[idx]

    def __len__(self):
        return len(self.elements)

    # -- basic operations ----------------------------------------------------

    def gen(self, s):
        e = self.right(self.identity, s)
        if e is None:
            raise CapError("length cap 0 excludes the generators")
        return e

    def right(self, x, s):
        """x*s, or None if it falls outside the ball."""
        j = self._right[x.idx][s]
        return self.elements[j] if j is not None else None

    def right_checked(self, x, s):
        y = self.right(x, s)
        if y is None:
            raise CapError("product of length %d exceeds cap %d"
                           % (x.length + 1, self.length_cap))
        return y

    def product_of_word(self, word, start=None):
        x = start or self.identity
        for s in word:
            x = self.right_checked(x, s)
        return x

    def inverse(self, x):
        if self._inv is None:
            self._inv = {0: self.identity}
        got = self._inv.get(x.idx)
        if got is None:
            got = self.product_of_word(tuple(reversed(x.word)))
            self._inv[x.idx] = got
        return got

    def left(self, x, s):
        """s*x, or None if it falls outside the ball."""
        y = self.right(self.inverse(x), s)
        return self.inverse(y) if y is not None else None

    def right_descends_fast(self, x, s):
        y = self.right(x, s)
        return y is not None and y.length < x.length

    def left_descends_fast(self, x, s):
        y = self.left(x, s)
        return y is not None and y.length < x.length

    def right_descents(self, x):
        return [s for s in range(self.rank) if self.right_descends_fast(x, s)]

    # -- roots ---------------------------------------------------------------

    def root_image(self, x, s):
        """x(alpha_s) as a tuple of CycInt coordinates in the simple-root basis."""
        key = (x.idx, s)
        got = self._root_memo.get(key)
        if got is not None:
            return got
        ring = self.ring
        v = [ring.embed(1 if u == s else 0) for u in range(self.rank)]
        for t in reversed(x.word):
            # reflection t: v -> v - <v, alpha_t^vee> alpha_t
            pair = ring.zero()
            for u, c in enumerate(v):
                if not c.is_zero():
                    pair = pair + c * self.cartan[u][t]
            v[t] = v[t] - pair
        got = tuple(v)
        self._root_memo[key] = got
        return got

    @staticmethod
    def root_sign(root):
        """+1 / -1 for a positive / negative root, per the sign dichotomy."""
        pos = neg = False
        for c in root:
            sg = c.sign()
            pos |= sg > 0
            neg |= sg < 0
        if pos and neg:
            raise AssertionError("root with mixed coordinate signs")
        return -1 if neg else 1

    def right_descends(self, x, s):
        """The root-theoretic descent test: x(alpha_s) is a negative root."""
        return self.root_sign(self.root_image(x, s)) < 0

    # -- Bruhat order ----------------------------------------------------------

    def bruhat_leq(self, y, x):
        if y.idx == x.idx:
            return True
        key = (y.idx, x.idx)
        got = self._bruhat_memo.get(key)
        if got is None:
            if y.length >= x.length:
                got = False
            else:
                s = x.word[0]  # sx < x for the first letter of a reduced word
                sx = self.left(x, s)
                sy = self.left(y, s)
                if sy is not None and sy.length < y.length:
                    got = self.bruhat_leq(sy, sx)
                else:
                    got = self.bruhat_leq(y, sx)
            self._bruhat_memo[key] = got
        return got

    # -- parabolic structure -----------------------------------------------------

    def is_min_rep(self, x, I):
        """x in ^IW: every s in I has sx > x."""
        return all(not self.left_descends_fast(x, s) for s in I)

    def min_reps(self, I):
        I = frozenset(I)
        return [x for x in self.elements if self.is_min_rep(x, I)]

    def subgroup_elements(self, I):
        """Elements of W_I inside the ball."""
        I = frozenset(I)
        got = self._wi_memo.get(I)
        if got is None:
            got = [x for x in self.elements if all(g in I for g in x.word)]
            self._wi_memo[I] = got
        return got

    def coset_decompose(self, w, I):
        """w = u x with u in W_I, x in ^IW and lengths additive."""
        letters = []
        x = w
        while True:
            for s in I:
                if self.left_descends_fast(x, s):
                    letters.append(s)
                    x = self.left(x, s)
                    break
            else:
                break
        u = self.product_of_word(tuple(letters))
        return u, x

    def parabolic_test(self, x, s, I):
        """Root-theoretic Parabolic Property verdict for x in ^IW and s in S.

        Returns ('exits_via', r) when x(alpha_s) = alpha_r with r in I (then
        xs = rx is not in ^IW), else ('in_quotient', None).  Asserts agreement
        with the combinatorial test when xs lies in the ball.
        """
        if not self.is_min_rep(x, I):
            raise UsageError("parabolic_test requires x in ^IW")
        root = self.root_image(x, s)
        exit_r = None
        for r in I:
            if all((root[u] == (1 if u == r else 0)) for u in range(self.rank)):
                exit_r = r
                break
        xs = self.right(x, s)
        if xs is not None:
            assert self.is_min_rep(xs, I) == (exit_r is None)
            if exit_r is not None:
                assert self.left(xs, exit_r) == x  # xs = rx
        if exit_r is not None:
            return ("exits_via", exit_r)
        return ("in_quotient", None)

    def longest_element(self, I):
        x = self.identity
        while True:
            for s in I:
                y = self.right(x, s)
                if y is None:
                    raise NotFinitaryError("W_I not exhausted within length cap")
                if y.length > x.length:
                    x = y
                    break
            else:
                return x


@lru_cache(maxsize=32)
def _cached_ball(canon, cap):
    return GroupBall(CoxeterMatrix.from_json(canon), cap)


def build_ball(matrix, length_cap, max_elements=2_000_000):
    if length_cap < 0:
        raise UsageError("length cap must be >= 0")
    if max_elements == 2_000_000:
        return _cached_ball(matrix.to_json(), length_cap)
    return GroupBall(matrix, length_cap, max_elements)
