"""Shared builders and seeded random generators for the test suite."""

import random
from fractions import Fraction
from pathlib import Path

from diffgsb import (
    Context,
    DiffPoly,
    GenTable,
    Presentation,
    lift_presentation,
    order_for,
    parse_poly,
)
from diffgsb.diffmon import DiffVar, cword

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

LAMBDAS = [Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 2)]


def ctx_of(names=("x", "y"), commutative=False, lam=0):
    return Context(GenTable(names), commutative, Fraction(lam))


def pres(names, rels, commutative, lam, order="deglex"):
    ctx = ctx_of(names, commutative, lam)
    return Presentation(ctx, [parse_poly(r, ctx) for r in rels], order_for(order, commutative))


def lifted(names, rels, commutative, lam, order="deglex", **kw):
    return lift_presentation(pres(names, rels, commutative, lam, order), **kw)


def rand_word(rng, ctx, max_len=3, max_ord=2, min_len=0):
    n = rng.randint(min_len, max_len)
    w = tuple(DiffVar(rng.randint(0, max_ord), rng.randrange(len(ctx.table))) for _ in range(n))
    return cword(w) if ctx.commutative else w


def rand_coeff(rng):
    c = Fraction(rng.randint(-5, 5), rng.choice([1, 1, 1, 2, 3]))
    return c or Fraction(1)


def rand_poly(rng, ctx, terms=3, max_len=3, max_ord=2):
    out = DiffPoly.zero(ctx)
    for _ in range(rng.randint(1, terms)):
        out = out + DiffPoly.monomial(ctx, rand_word(rng, ctx, max_len, max_ord), rand_coeff(rng))
    return out


# Presentations the lifting theorems cover, with weights per variant.
# Generator lists are ascending, so the last name is the largest.
VERIFIED = [
    (("x", "y"), ["y*x - x*y - 1"], False, [0, 1, -2]),
    (("y", "x"), ["x + y + 1"], False, [0, 1, -2]),
    (("y", "x"), ["x + y + 1"], True, [0, 1, -2]),
    (("x",), ["x^2"], False, [0, 1, -2]),
    (("x",), ["x^2"], True, [1, -2]),
] + [
    (("x",), [f"x^{n} - 1"], comm, lams)
    for n in (2, 3, 4)
    for comm, lams in ((False, [0, 1, -2]), (True, [1, -2]))
]


def verified_cases():
    for names, rels, comm, lams in VERIFIED:
        for lam in lams:
            yield names, rels, comm, lam
