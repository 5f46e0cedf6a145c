"""Rewriting modulo the differential ideal generated by a monic set.

A :class:`RuleSet` turns every ``d^k(s)`` (``s`` in the basis) into a rewrite
rule ``lead -> lead - d^k(s)^natural``. Rules are built on demand and cached.
Only finitely many rules can ever fire on a given word: every monomial of
``d^k(s)`` has weight (sum of derivative orders) at least ``k``, and under a
deg-lex order the leading word of ``d^k(s)`` even contains a letter of order at
least ``k``. Bounded reduction is therefore exact, not a truncation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .diffmon import ONE, MonOrder, Word, divides_c, divides_nc, max_order, weight
from .diffpoly import Context, DiffPoly


class BudgetExhausted(RuntimeError):
    """Reduction hit its step budget before reaching a normal form."""

    def __init__(self, steps: int, partial: "ReductionTrace"):
        super().__init__(f"reduction step budget exhausted after {steps} steps")
        self.steps = steps
        self.partial = partial


class StarWord(NamedTuple):
    """One-hole context ``left * [] * right``.

    In the commutative case only ``left`` is used, as the cofactor.
    """

    left: Word = ONE
    right: Word = ONE

    def apply_word(self, u: Word, ctx: Context) -> Word:
        return ctx.mul_words(ctx.mul_words(self.left, u), self.right)


def subst(q: StarWord, f: DiffPoly) -> DiffPoly:
    return f.mul_word(q.left, q.right)


class Rule(NamedTuple):
    lead: Word
    poly: DiffPoly  # monic d^k(s)


class Step(NamedTuple):
    rule: tuple  # (basis index, derivative order)
    position: StarWord
    coeff: Fraction


@dataclass
class ReductionTrace:
    source: DiffPoly
    steps: list = field(default_factory=list)
    result: Optional[DiffPoly] = None

    def replay(self, rs: "RuleSet") -> DiffPoly:
        """Recompute the normal form from the source and the recorded steps."""
        out = self.source
        for (s, k), q, c in self.steps:
            out = out - subst(q, rs.rule(s, k).poly).scale(c)
        return out


@dataclass(frozen=True)
class Policy:
    """Tie-breaking in :meth:`RuleSet.find_reduction`.

    Default: basis index ascending, then derivative order ascending, then the
    leftmost occurrence.
    """

    rule_order: Optional[tuple] = None
    k_descending: bool = False
    rightmost: bool = False

    @classmethod
    def shuffled(cls, n: int, seed: int) -> "Policy":
        idx = list(range(n))
        random.Random(seed).shuffle(idx)
        return cls(tuple(idx), k_descending=True, rightmost=True)


DEFAULT_POLICY = Policy()

DEFAULT_LEX_BUDGET = 200_000


class RuleSet:
    """Monic basis plus the lazily materialized derivative rules ``d^k(s)``."""

    def __init__(
        self,
        basis: Sequence[DiffPoly],
        order: MonOrder,
        *,
        max_order: Optional[int] = None,
        step_budget: Optional[int] = None,
        policy: Policy = DEFAULT_POLICY,
    ):
        basis = list(basis)
        if not basis:
            ctx = None
        else:
            ctx = basis[0].ctx
            for f in basis:
                f._check(basis[0])
                if not f:
                    raise ValueError("zero relations are not allowed")
            if ctx.commutative != order.commutative:
                raise ValueError(f"{order} does not match the context commutativity")
        self.ctx = ctx
        self.order = order
        self.basis = [f.monic(order) for f in basis]
        self.max_order = max_order
        if step_budget is None and not order.is_deglex:
            step_budget = DEFAULT_LEX_BUDGET
        self.step_budget = step_budget
        self.policy = policy
        self._rules = {}

    @classmethod
    def empty(cls, ctx: Context, order: MonOrder) -> "RuleSet":
        rs = cls([], order)
        rs.ctx = ctx
        return rs

    def with_basis(self, basis) -> "RuleSet":
        rs = RuleSet(basis, self.order, max_order=self.max_order,
                     step_budget=self.step_budget, policy=self.policy)
        if not basis:
            rs.ctx = self.ctx
        return rs

    def with_policy(self, policy: Policy) -> "RuleSet":
        rs = self.with_basis(self.basis)
        rs.policy = policy
        rs._rules = self._rules  # rules do not depend on the policy
        return rs

    def __len__(self):
        return len(self.basis)

    @property
    def lifted(self) -> bool:
        """True when every basis element only uses order-0 variables."""
        return all(f.max_order() == 0 for f in self.basis)

    def rule(self, s: int, k: int) -> Optional[Rule]:
        key = (s, k)
        try:
            return self._rules[key]
        except KeyError:
            pass
        d = self.basis[s].derive_n(k)
        r = None
        if d:
            lead = d.leading(self.order)
            r = Rule(lead.word, d.scale(1 / lead.coeff))
        self._rules[key] = r
        return r

    def k_bound(self, u: Word) -> int:
        """Largest derivative order of a rule that could divide ``u``."""
        k = max_order(u) if self.order.is_deglex else weight(u)
        if self.max_order is not None:
            k = min(k, self.max_order)
        return k

    def find_reduction(self, u: Word):
        """First rule ``(s, k)`` and position ``q`` with ``u = q|lead(d^k(s))``."""
        pol = self.policy
        idx = pol.rule_order if pol.rule_order is not None else range(len(self.basis))
        kb = self.k_bound(u)
        ks = range(kb, -1, -1) if pol.k_descending else range(kb + 1)
        comm = self.order.commutative
        for s in idx:
            for k in ks:
                r = self.rule(s, k)
                if r is None or len(r.lead) > len(u):
                    continue
                if comm:
                    c = divides_c(r.lead, u)
                    if c is not None:
                        return (s, k), StarWord(c)
                else:
                    occ = divides_nc(r.lead, u) if r.lead else [(u, ONE)]
                    if occ:
                        left, right = occ[-1] if pol.rightmost else occ[0]
                        return (s, k), StarWord(left, right)
        return None

    def is_irreducible(self, u: Word) -> bool:
        return self.find_reduction(u) is None


def reduce(f: DiffPoly, rs: RuleSet):
    """Normal form of ``f`` and the trace of rewrites that produced it.

    The largest remaining monomial is rewritten when reducible and moved to
    the normal form otherwise. Under a deg-lex order rewriting only creates
    smaller monomials; under lex a product can land above the rewritten word,
    in which case a monomial already in the normal form is taken back.
    """
    trace = ReductionTrace(f)
    if not rs.basis:
        trace.result = f
        return f, trace
    key = rs.order.key
    mul = f.ctx.mul_words
    work = dict(f.terms)
    nf = {}
    budget = rs.step_budget
    while work:
        m = max(work, key=key)
        c = work[m]
        hit = rs.find_reduction(m)
        if hit is None:
            nf[m] = work.pop(m)
            continue
        if budget is not None and len(trace.steps) >= budget:
            trace.result = DiffPoly(f.ctx, {**nf, **work})
            raise BudgetExhausted(len(trace.steps), trace)
        (s, k), q = hit
        trace.steps.append(Step((s, k), q, c))
        for w, a in rs.rule(s, k).poly.terms.items():
            v = mul(mul(q.left, w), q.right)
            if v in nf:
                # lex is not multiplicative, so a rewrite can land above m
                work[v] = nf.pop(v)
            t = work.get(v, 0) - c * a
            if t:
                work[v] = t
            else:
                work.pop(v, None)
    out = DiffPoly._raw(f.ctx, nf)
    trace.result = out
    return out, trace


def normal_form(f: DiffPoly, rs: RuleSet) -> DiffPoly:
    return reduce(f, rs)[0]


def is_trivial_mod(f: DiffPoly, rs: RuleSet, w: Word):
    """Whether ``f`` reduces to zero; returns ``(trivial, trace)``.

    Every monomial of ``f`` must lie strictly below ``w``. Rewrites then act
    only below ``w``, so a zero normal form certifies triviality modulo
    ``(S, w)`` and the trace is the certificate.
    """
    key = rs.order.key
    kw = key(tuple(w))
    for m in f.terms:
        if not key(m) < kw:
            raise ValueError("every monomial must be strictly below the ambiguity word")
    nf, trace = reduce(f, rs)
    return not nf, trace


def find_reduction(u: Word, rs: RuleSet):
    return rs.find_reduction(tuple(u))
