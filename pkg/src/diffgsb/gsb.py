"""Compositions, bounded Groebner-Shirshov checks, completion and bases.

All checks are bounded: derivative orders of the composed elements are capped
at ``max_order`` and ambiguity words longer than ``max_degree`` are skipped.
A passing verdict certifies "no nontrivial composition within these bounds"
and carries the bounds with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterator, Optional

from .diffmon import ONE, DiffVar, MonOrder, Word, cword, divides_c, divides_nc, lcm_c, overlaps_nc
from .diffpoly import Context, DiffPoly, hat_embed
from .rewrite import BudgetExhausted, ReductionTrace, RuleSet, StarWord, reduce, subst


class Kind(str, Enum):
    INTERSECTION = "intersection"
    INCLUSION = "inclusion"
    COMMUTATIVE = "commutative"


class PrecheckError(ValueError):
    """The relations of a presentation are not a classical GS basis."""

    def __init__(self, report: "CompositionReport"):
        super().__init__("relations fail the classical Groebner-Shirshov check")
        self.report = report


@dataclass
class CompositionReport:
    kind: Kind
    lhs: int
    rhs: int
    orders: tuple
    w: Word
    composition: DiffPoly
    normal_form: Optional[DiffPoly]
    trivial: bool
    certificate: ReductionTrace
    position: StarWord = StarWord()
    exhausted: bool = False

    @property
    def key(self):
        return (self.lhs, self.rhs, self.orders, self.kind.value, self.position)


@dataclass
class GsbVerdict:
    all_trivial: bool
    max_order: int
    max_degree: Optional[int]
    checked: int
    failures: list = field(default_factory=list)
    exhausted: bool = False


@dataclass
class Presentation:
    """Generators and order-0 relations of an algebra, plus weight and order."""

    ctx: Context
    relations: list
    order: MonOrder

    def __post_init__(self):
        if self.ctx.commutative != self.order.commutative:
            raise ValueError(f"{self.order} does not match the presentation commutativity")
        for r in self.relations:
            if r.ctx != self.ctx:
                raise ValueError("relation context differs from the presentation")
            if not r:
                raise ValueError("zero relations are not allowed")
            if r.max_order() != 0:
                raise ValueError(f"relation {r} uses derivatives; relations must be order 0")

    @property
    def table(self):
        return self.ctx.table

    @property
    def commutative(self) -> bool:
        return self.ctx.commutative

    @property
    def weight(self) -> Fraction:
        return self.ctx.weight


def _report(rs, kind, s, t, i, j, w, comp, position=StarWord()) -> CompositionReport:
    if rs.order.is_deglex:
        # guaranteed by monomiality; lex is not multiplicative and gets no such check
        key = rs.order.key
        kw = key(w)
        for m in comp.terms:
            if not key(m) < kw:
                raise AssertionError(f"composition monomial {m} is not below {w}")
    try:
        nf, trace = reduce(comp, rs)
    except BudgetExhausted as e:
        return CompositionReport(kind, s, t, (i, j), w, comp, None, False, e.partial,
                                 position, exhausted=True)
    return CompositionReport(kind, s, t, (i, j), w, comp, nf, not nf, trace, position)


def compositions(rs: RuleSet, max_order: int, max_degree: Optional[int] = None) -> Iterator[CompositionReport]:
    """All compositions between ``d^i(s)`` and ``d^j(t)`` with ``i, j <= max_order``.

    Noncommutative: intersection compositions for proper overlaps of the
    leading words, inclusion compositions when one leading word is a factor
    of the other (skipping an element against itself in place). Commutative:
    one composition per unordered pair of (element, order) whose leading words
    share a letter, at the lcm of the leading words; coprime pairs are always
    trivial and are skipped. Enumeration order is deterministic.
    """
    n = len(rs.basis)
    ctx = rs.ctx
    if rs.order.commutative:
        for s in range(n):
            for t in range(s + 1):
                for i in range(max_order + 1):
                    for j in range(max_order + 1):
                        if s == t and i <= j:
                            continue
                        f, g = rs.rule(s, i), rs.rule(t, j)
                        if f is None or g is None:
                            continue
                        w = lcm_c(f.lead, g.lead)
                        if len(w) >= len(f.lead) + len(g.lead):
                            continue
                        if max_degree is not None and len(w) > max_degree:
                            continue
                        u = divides_c(f.lead, w)
                        v = divides_c(g.lead, w)
                        comp = f.poly.mul_word(u) - g.poly.mul_word(v)
                        yield _report(rs, Kind.COMMUTATIVE, s, t, i, j, w, comp, StarWord(u))
        return
    for s in range(n):
        for i in range(max_order + 1):
            f = rs.rule(s, i)
            if f is None or not f.lead:
                continue
            for t in range(n):
                for j in range(max_order + 1):
                    g = rs.rule(t, j)
                    if g is None or not g.lead:
                        continue
                    for w, u, v in overlaps_nc(f.lead, g.lead):
                        if max_degree is not None and len(w) > max_degree:
                            continue
                        comp = f.poly.mul_word(ONE, u) - g.poly.mul_word(v, ONE)
                        yield _report(rs, Kind.INTERSECTION, s, t, i, j, w, comp, StarWord(v, u))
                    if (s, i) == (t, j):
                        continue
                    if max_degree is not None and len(f.lead) > max_degree:
                        continue
                    for a, b in divides_nc(g.lead, f.lead):
                        q = StarWord(a, b)
                        comp = f.poly - subst(q, g.poly)
                        yield _report(rs, Kind.INCLUSION, s, t, i, j, f.lead, comp, q)


def check_gsb(rs: RuleSet, max_order: int = 3, max_degree: Optional[int] = 6) -> GsbVerdict:
    failures = []
    checked = 0
    exhausted = False
    for rep in compositions(rs, max_order, max_degree):
        checked += 1
        exhausted |= rep.exhausted
        if not rep.trivial:
            failures.append(rep)
    return GsbVerdict(not failures, max_order, max_degree, checked, failures, exhausted)


def lift_presentation(p: Presentation, **rule_kw) -> RuleSet:
    """Lift order-0 relations into the differential polynomial ring.

    The relations must already be a classical GS basis, checked with the same
    machinery restricted to derivative order 0.
    """
    lifted = [hat_embed(r, 0) for r in p.relations]
    rs = RuleSet(lifted, p.order, **rule_kw)
    if not lifted:
        rs.ctx = p.ctx
        return rs
    classical = check_gsb(rs, max_order=0, max_degree=None)
    if not classical.all_trivial:
        raise PrecheckError(classical.failures[0])
    return rs


@dataclass
class CompletionResult:
    basis: list
    verdict: GsbVerdict
    rounds: list  # per round, the monic elements adjoined
    rules: RuleSet

    @property
    def rounds_used(self) -> int:
        return len(self.rounds)

    @property
    def converged(self) -> bool:
        return self.verdict.all_trivial


def complete(rs: RuleSet, max_order: int = 3, max_rounds: int = 8,
             max_degree: Optional[int] = 6) -> CompletionResult:
    """Adjoin normal forms of nontrivial compositions until none remain or
    the round budget runs out."""
    rounds = []
    cur = rs
    verdict = check_gsb(cur, max_order, max_degree)
    while not verdict.all_trivial and len(rounds) < max_rounds:
        added = []
        basis = list(cur.basis)
        work = cur
        for rep in verdict.failures:
            if rep.normal_form is None:
                continue
            nf = reduce(rep.normal_form, work)[0]
            if not nf:
                continue
            nf = nf.monic(cur.order)
            basis.append(nf)
            added.append(nf)
            work = cur.with_basis(basis)
        if not added:
            break
        rounds.append(added)
        cur = work
        verdict = check_gsb(cur, max_order, max_degree)
    return CompletionResult(list(cur.basis), verdict, rounds, cur)


def letters(ctx: Context, max_ord: int) -> list:
    return [DiffVar(k, g) for k in range(max_ord + 1) for g in range(len(ctx.table))]


def enumerate_words(ctx: Context, max_degree: int, max_ord: int) -> list:
    """All words of degree <= max_degree in variables of order <= max_ord."""
    alphabet = letters(ctx, max_ord)
    out = []
    if ctx.commutative:
        desc = sorted(alphabet, reverse=True)
        for d in range(max_degree + 1):
            out.extend(combinations_with_replacement(desc, d))
    else:
        for d in range(max_degree + 1):
            out.extend(product(alphabet, repeat=d))
    return out


def pattern(lead: Word, n: int, weight, commutative: bool) -> Word:
    """Leading word of d^n applied to an order-0 word: all letters raised when
    the weight is nonzero, only the first (largest) letter otherwise."""
    if not lead or n == 0:
        return lead
    if weight:
        w = tuple(a.shift(n) for a in lead)
    else:
        w = (lead[0].shift(n),) + lead[1:]
    return cword(w) if commutative else w


def diff_irr(rs: RuleSet, max_degree: int, max_ord: int, mode: str = "auto") -> list:
    """Irreducible words within the bounds, ascending under the rule order."""
    ctx = rs.ctx
    words = enumerate_words(ctx, max_degree, max_ord)
    if mode == "auto":
        mode = "pattern" if rs.lifted and rs.order.is_deglex else "filter"
    if mode == "pattern":
        if not (rs.lifted and rs.order.is_deglex):
            raise ValueError("pattern mode needs an order-0 basis and a deg-lex order")
        pats = [pattern(f.leading(rs.order).word, n, ctx.weight, ctx.commutative)
                for f in rs.basis for n in range(max_ord + 1)]
        if ctx.commutative:
            keep = [u for u in words if all(divides_c(p, u) is None for p in pats)]
        else:
            keep = [u for u in words
                    if all(p and not divides_nc(p, u) for p in pats)]
    elif mode == "filter":
        keep = [u for u in words if rs.is_irreducible(u)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return sorted(keep, key=rs.order.key)


@dataclass(frozen=True)
class DimBounds:
    lower: int
    upper: int
    words: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def __contains__(self, n: int) -> bool:
        return self.lower <= n <= self.upper


def _insert(pivots: dict, row: dict) -> bool:
    """Gaussian elimination step keyed on the largest column; True if rank grows."""
    while row:
        p = max(row)
        c = row[p]
        piv = pivots.get(p)
        if piv is None:
            pivots[p] = {k: v / c for k, v in row.items()}
            return True
        for k, v in piv.items():
            t = row.get(k, 0) - c * v
            if t:
                row[k] = t
            else:
                row.pop(k, None)
    return False


def quotient_dim_oracle(rs: RuleSet, max_degree: int, max_ord: int,
                        word_limit: int = 20_000) -> DimBounds:
    """Brute-force dimension of the span of bounded words modulo the ideal.

    Uses no reduction: every ideal element ``q|d^k(s)`` touching the bounded
    word set V is generated explicitly. Those lying inside V span a subspace
    of ``I n V`` (giving the upper bound); projections onto V of all touching
    ones span a superspace of ``I n V`` (giving the lower bound).
    """
    ctx = rs.ctx
    words = enumerate_words(ctx, max_degree, max_ord)
    if len(words) > word_limit:
        raise OverflowError(f"{len(words)} words exceed the limit {word_limit}")
    key = rs.order.key
    col = {w: i for i, w in enumerate(sorted(words, key=key))}
    pivots = {}
    if not rs.basis:
        return DimBounds(len(words), len(words), len(words))
    # every monomial of d^k(s) has weight >= k and words in V have weight <= D*M
    kmax = max_degree * max_ord
    gens = []
    for s, f in enumerate(rs.basis):
        for k in range(kmax + 1):
            d = f.derive_n(k)
            if not d:
                continue
            small = [len(m) for m in d.terms if all(a.order <= max_ord for a in m)]
            if small:
                gens.append((d, max_degree - min(small)))
    mul = ctx.mul_words
    fit_rows, cross_rows = [], []
    for d, room in gens:
        if room < 0:
            continue
        if ctx.commutative:
            ctxs = [(c, ONE) for c in words if len(c) <= room]
        else:
            short = [w for w in words if len(w) <= room]
            ctxs = [(a, b) for a in short for b in short if len(a) + len(b) <= room]
        for a, b in ctxs:
            row = {}
            inside = True
            for m, c in d.terms.items():
                i = col.get(mul(mul(a, m), b))
                if i is None:
                    inside = False
                else:
                    row[i] = row.get(i, 0) + c
            row = {i: c for i, c in row.items() if c}
            if not row:
                continue
            (fit_rows if inside else cross_rows).append(row)
    for row in fit_rows:
        _insert(pivots, row)
    r_fit = len(pivots)
    for row in cross_rows:
        _insert(pivots, row)
    n = len(words)
    return DimBounds(n - len(pivots), n - r_fit, n)


class Status(str, Enum):
    YES = "yes"
    IRREDUCIBLE = "irreducible"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class MemberResult:
    status: Status
    normal_form: Optional[DiffPoly]
    certificate: ReductionTrace


def member_bounded(f: DiffPoly, rs: RuleSet) -> MemberResult:
    """Yes with a certificate when ``f`` reduces to zero.

    A nonzero normal form proves non-membership only when the basis passes the
    GS check at bounds covering ``f``.
    """
    try:
        nf, trace = reduce(f, rs)
    except BudgetExhausted as e:
        return MemberResult(Status.BUDGET_EXHAUSTED, None, e.partial)
    if not nf:
        return MemberResult(Status.YES, nf, trace)
    return MemberResult(Status.IRREDUCIBLE, nf, trace)
