"""Sparse differential polynomials with exact rational coefficients.

Every polynomial carries a :class:`Context` (generators, commutativity, weight)
and arithmetic between different contexts raises ``ContextMismatch``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, NamedTuple, Optional

from .diffmon import (
    DEGLEX_C,
    DEGLEX_NC,
    ONE,
    DiffVar,
    GenTable,
    MonOrder,
    Word,
    cword,
    is_canonical_c,
    max_order,
)


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Context:
    table: GenTable
    commutative: bool
    weight: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def default_order(self) -> MonOrder:
        return DEGLEX_C if self.commutative else DEGLEX_NC

    def mul_words(self, u: Word, v: Word) -> Word:
        if self.commutative:
            return cword(u + v)
        return u + v


class LeadingData(NamedTuple):
    word: Word
    coeff: Fraction


def multinomial(n: int, parts: Iterable[int]) -> int:
    parts = list(parts)
    if sum(parts) != n or any(p < 0 for p in parts):
        return 0
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


class DiffPoly:
    """Finite map word -> nonzero Fraction over a fixed context."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: Context, terms=None):
        self.ctx = ctx
        clean = {}
        if terms:
            for w, c in dict(terms).items():
                w = tuple(w)
                if ctx.commutative and not is_canonical_c(w):
                    w = cword(w)
                s = clean.get(w, 0) + Fraction(c)
                if s:
                    clean[w] = s
                else:
                    clean.pop(w, None)
        self.terms = clean
        self._hash = None

    # -- constructors --

    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def const(cls, ctx, c=1):
        return cls(ctx, {ONE: c})

    @classmethod
    def monomial(cls, ctx, word: Word, c=1):
        return cls(ctx, {tuple(word): c})

    @classmethod
    def variable(cls, ctx, gen: int, order: int = 0):
        if not 0 <= gen < len(ctx.table):
            raise IndexError(f"generator rank {gen} outside table {ctx.table}")
        return cls(ctx, {(DiffVar(order, gen),): 1})

    @classmethod
    def _raw(cls, ctx, terms: dict):
        # terms already canonical with nonzero coefficients
        p = cls.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p._hash = None
        return p

    # -- basic protocol --

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {ONE: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"DiffPoly({self.to_str()!r})"

    def __str__(self):
        return self.to_str()

    def coeff(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def words(self):
        return list(self.terms)

    def sorted_terms(self, order: Optional[MonOrder] = None, reverse=True):
        order = order or self.ctx.default_order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=reverse)

    def max_order(self) -> int:
        return max((max_order(w) for w in self.terms), default=0)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    # -- arithmetic --

    def _check(self, other: "DiffPoly"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"cannot combine polynomials over {self.ctx} and {other.ctx}")

    def _coerce(self, other):
        if isinstance(other, DiffPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return DiffPoly.const(self.ctx, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return DiffPoly._raw(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly._raw(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "DiffPoly":
        c = Fraction(c)
        if not c:
            return DiffPoly.zero(self.ctx)
        return DiffPoly._raw(self.ctx, {w: c * a for w, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        self._check(other)
        mw = self.ctx.mul_words
        out = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = mw(u, v)
                s = out.get(w, 0) + a * b
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return DiffPoly._raw(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = DiffPoly.const(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def mul_word(self, left: Word = ONE, right: Word = ONE) -> "DiffPoly":
        """``left * self * right`` for words (commutative: both sides merge)."""
        mw = self.ctx.mul_words
        out = {}
        for w, c in self.terms.items():
            k = mw(mw(left, w), right)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DiffPoly._raw(self.ctx, out)

    # -- derivation --

    def derive(self) -> "DiffPoly":
        return self.derive_n(1)

    def derive_n(self, n: int) -> "DiffPoly":
        if n < 0:
            raise ValueError("derivative order must be nonnegative")
        if n == 0:
            return self
        lam, comm = self.ctx.weight, self.ctx.commutative
        out = {}
        for w, c in self.terms.items():
            for v, b in derive_word_n(w, n, lam, comm):
                s = out.get(v, 0) + c * b
                if s:
                    out[v] = s
                else:
                    out.pop(v, None)
        return DiffPoly._raw(self.ctx, out)

    # -- leading data --

    def leading(self, order: Optional[MonOrder] = None) -> LeadingData:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        order = order or self.ctx.default_order
        w = max(self.terms, key=order.key)
        return LeadingData(w, self.terms[w])

    def monic(self, order: Optional[MonOrder] = None) -> "DiffPoly":
        return self.scale(1 / self.leading(order).coeff)

    def to_str(self, order: Optional[MonOrder] = None) -> str:
        from .expr import format_poly

        return format_poly(self, order)


@lru_cache(maxsize=None)
def derive_word(w: Word, lam: Fraction, commutative: bool) -> tuple:
    """d(w) as a tuple of (word, coeff) pairs, by the recursion on the first letter."""
    if not w:
        return ()
    if len(w) == 1:
        return (((w[0].shift(),), Fraction(1)),)
    mul = cword if commutative else tuple
    head, rest = w[0], w[1:]
    dh = head.shift()
    out = {}

    def add(word, c):
        s = out.get(word, 0) + c
        if s:
            out[word] = s
        else:
            out.pop(word, None)

    add(mul((dh,) + rest), Fraction(1))
    for v, c in derive_word(rest, lam, commutative):
        add(mul((head,) + v), c)
        if lam:
            add(mul((dh,) + v), lam * c)
    return tuple(out.items())


@lru_cache(maxsize=None)
def derive_word_n(w: Word, n: int, lam: Fraction, commutative: bool) -> tuple:
    if n == 0:
        return ((w, Fraction(1)),)
    out = {}
    for v, c in derive_word_n(w, n - 1, lam, commutative):
        for u, b in derive_word(v, lam, commutative):
            s = out.get(u, 0) + c * b
            if s:
                out[u] = s
            else:
                out.pop(u, None)
    return tuple(out.items())


def derive(f: DiffPoly) -> DiffPoly:
    return f.derive()


def derive_n(f: DiffPoly, n: int) -> DiffPoly:
    return f.derive_n(n)


def leibniz_closed_2(x: DiffPoly, y: DiffPoly, n: int) -> DiffPoly:
    """d^n(xy) through the double binomial sum, without expanding d^n(xy)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x._check(y)
    lam = x.ctx.weight
    out = DiffPoly.zero(x.ctx)
    for j in range(n + 1):
        for k in range(n - j + 1):
            c = comb(n, j) * comb(n - j, k) * lam**j
            if c:
                out = out + (x.derive_n(n - k) * y.derive_n(j + k)).scale(c)
    return out


def _chains(m: int, r: int):
    """Index tuples ((j1,k1,l1), ..., (jr,kr,lr)) with j1+k1+l1 = m and
    j_t + k_t = j_{t+1} + k_{t+1} + l_{t+1}."""
    if r == 0:
        yield ()
        return
    for j in range(m + 1):
        for k in range(m - j + 1):
            l = m - j - k
            for tail in _chains(j + k, r - 1):
                yield ((j, k, l),) + tail


def leibniz_closed_multi(xs: list, n: int) -> DiffPoly:
    """d^n(x_1 ... x_{r+1}) by the multi-factor closed formula."""
    if len(xs) < 2:
        raise ValueError("need at least two factors")
    if n < 0:
        raise ValueError("n must be nonnegative")
    ctx = xs[0].ctx
    for x in xs[1:]:
        xs[0]._check(x)
    r = len(xs) - 1
    lam = ctx.weight
    out = DiffPoly.zero(ctx)
    for chain in _chains(n, r):
        coeff = Fraction(1)
        top = n
        orders = []
        for j, k, l in chain:
            coeff *= multinomial(top, (j, k, l)) * lam**j
            orders.append(top - k)
            top = j + k
        if not coeff:
            continue
        orders.append(top)
        prod = DiffPoly.const(ctx, coeff)
        for x, m in zip(xs, orders):
            prod = prod * x.derive_n(m)
        out = out + prod
    return out


def leading_of_derivative(u: Word, i: int, lam, o: MonOrder, commutative: Optional[bool] = None) -> LeadingData:
    """Closed-form leading word and coefficient of d^i(u) under a deg-lex order."""
    u = tuple(u)
    if not u:
        raise ValueError("d^i(1) vanishes and has no leading term")
    if not o.is_deglex:
        raise ValueError("closed forms hold for deg-lex orders only")
    if commutative is None:
        commutative = o.commutative
    lam = Fraction(lam)
    if commutative and not is_canonical_c(u):
        u = cword(u)
    if i == 0:
        return LeadingData(u, Fraction(1))
    if lam:
        word = tuple(a.shift(i) for a in u)
        return LeadingData(word, lam ** ((len(u) - 1) * i))
    word = (u[0].shift(i),) + u[1:]
    if commutative:
        return LeadingData(cword(word), Fraction(u.count(u[0])))
    return LeadingData(word, Fraction(1))


def hat_embed(f: DiffPoly, n: int) -> DiffPoly:
    """Substitute x -> x^(n) in a polynomial whose variables all have order 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = {}
    for w, c in f.terms.items():
        if any(a.order for a in w):
            raise ValueError("hat_embed expects a polynomial in order-0 variables")
        out[tuple(a.shift(n) for a in w)] = c
    return DiffPoly._raw(f.ctx, out)
