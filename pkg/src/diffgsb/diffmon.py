"""Differential variables, words over them, and the monomial orders.

A differential variable ``x^(n)`` is stored as ``DiffVar(order=n, gen=i)``
where ``i`` is the rank of ``x`` in the generator table. Field order matters:
plain tuple comparison of two ``DiffVar`` then compares derivative orders
first and generator ranks second, which is exactly the order on letters.

Words are plain tuples of ``DiffVar``. A noncommutative word is the letter
sequence itself. A commutative word is the multiset of its letters stored as a
tuple sorted in descending letter order, so ``x^(1)x^(0)x^(0)`` is
``(x1, x0, x0)``.
"""

from __future__ import annotations

from collections import Counter
from enum import Enum
from typing import NamedTuple, Optional, Sequence

Word = tuple  # tuple[DiffVar, ...]

ONE: Word = ()


class GenTable:
    """Ordered generator names; position is rank, first name is smallest."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if not names:
            raise ValueError("at least one generator is required")
        for n in names:
            if not isinstance(n, str) or not n:
                raise ValueError(f"invalid generator name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, GenTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"GenTable({list(self.names)!r})"

    def rank(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None


class DiffVar(NamedTuple):
    order: int
    gen: int

    def shift(self, k: int = 1) -> "DiffVar":
        return DiffVar(self.order + k, self.gen)


def var(gen: int, order: int = 0) -> DiffVar:
    if gen < 0 or order < 0:
        raise ValueError("generator rank and derivative order must be nonnegative")
    return DiffVar(order, gen)


def cmp_var(a: DiffVar, b: DiffVar) -> int:
    """-1, 0 or 1: derivative orders first, then generator rank."""
    return (a > b) - (a < b)


class OrderKind(str, Enum):
    DEGLEX_NC = "deglex-nc"
    DEGLEX_C = "deglex-c"
    LEX_C = "lex-c"


class MonOrder:
    """One of the three monomial orders, exposed through a sort key."""

    __slots__ = ("kind",)

    def __init__(self, kind: OrderKind):
        self.kind = OrderKind(kind)

    @property
    def commutative(self) -> bool:
        return self.kind is not OrderKind.DEGLEX_NC

    @property
    def is_deglex(self) -> bool:
        return self.kind is not OrderKind.LEX_C

    def key(self, w: Word):
        if self.kind is OrderKind.LEX_C:
            # ascending letters, a strict prefix is smaller
            return w[::-1]
        return (len(w), w)

    def max(self, words):
        return max(words, key=self.key)

    def __eq__(self, other):
        return isinstance(other, MonOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"MonOrder({self.kind.value})"


DEGLEX_NC = MonOrder(OrderKind.DEGLEX_NC)
DEGLEX_C = MonOrder(OrderKind.DEGLEX_C)
LEX_C = MonOrder(OrderKind.LEX_C)


def order_for(name: str, commutative: bool) -> MonOrder:
    if name == "deglex":
        return DEGLEX_C if commutative else DEGLEX_NC
    if name == "lex":
        if not commutative:
            raise ValueError("the lex order is only defined for commutative words")
        return LEX_C
    raise ValueError(f"unknown order {name!r}")


def cword(letters) -> Word:
    """Canonical commutative word from any iterable of letters."""
    return tuple(sorted(letters, reverse=True))


def is_canonical_c(w: Word) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


def exponents(w: Word) -> dict:
    """Letter -> multiplicity, in descending letter order."""
    return dict(sorted(Counter(w).items(), reverse=True))


def check_variant(w: Word, o: MonOrder) -> None:
    if o.commutative and not is_canonical_c(w):
        raise ValueError(f"{w} is not a canonical commutative word for {o}")


def cmp_word(u: Word, v: Word, o: MonOrder) -> int:
    check_variant(u, o)
    check_variant(v, o)
    ku, kv = o.key(u), o.key(v)
    return (ku > kv) - (ku < kv)


def mul_nc(u: Word, v: Word) -> Word:
    return u + v


def mul_c(u: Word, v: Word) -> Word:
    return cword(u + v)


def weight(w: Word) -> int:
    """Sum of derivative orders of the letters."""
    return sum(a.order for a in w)


def max_order(w: Word) -> int:
    return max((a.order for a in w), default=0)


def divides_nc(pat: Word, u: Word) -> list:
    """All factorizations ``u = left + pat + right``, leftmost first."""
    if not pat:
        raise ValueError("pattern must be a nonempty word")
    n, m = len(pat), len(u)
    return [(u[:i], u[i + n:]) for i in range(m - n + 1) if u[i:i + n] == pat]


def divides_c(pat: Word, u: Word) -> Optional[Word]:
    """Cofactor ``c`` with ``u = pat * c``, or None when ``pat`` does not divide."""
    rest = Counter(u)
    rest.subtract(Counter(pat))
    if any(e < 0 for e in rest.values()):
        return None
    return cword(rest.elements())


def lcm_c(u: Word, v: Word) -> Word:
    cu, cv = Counter(u), Counter(v)
    return cword((cu | cv).elements())


def overlaps_nc(p: Word, q: Word) -> list:
    """Proper overlaps ``w = p + u = v + q`` with u, v nonempty.

    Containments (one word a factor of the other) are not overlaps here; they
    are found with :func:`divides_nc`. Ordered by increasing ``|w|``.
    """
    if not p or not q:
        raise ValueError("overlap needs nonempty words")
    out = []
    for k in range(min(len(p), len(q)) - 1, 0, -1):
        if p[len(p) - k:] == q[:k]:
            out.append((p + q[k:], q[k:], p[:len(p) - k]))
    return out
