from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffgsb import DEGLEX_C, DEGLEX_NC, LEX_C, GenTable, cmp_var, cmp_word, order_for, var
from diffgsb.diffmon import (
    check_variant,
    cword,
    divides_c,
    divides_nc,
    exponents,
    lcm_c,
    max_order,
    mul_c,
    mul_nc,
    overlaps_nc,
    weight,
)

x = lambda k: var(0, k)  # noqa: E731
y = lambda k: var(1, k)  # noqa: E731

letters = st.builds(var, st.integers(0, 1), st.integers(0, 3))
words = st.lists(letters, max_size=5).map(tuple)
cwords = words.map(cword)


def test_gen_table():
    t = GenTable(["y", "x"])
    assert t.rank("y") == 0 and t.rank("x") == 1
    with pytest.raises(ValueError):
        GenTable(["x", "x"])
    with pytest.raises(ValueError):
        GenTable([])
    with pytest.raises(KeyError):
        t.rank("z")


def test_letter_order():
    # order first, then generator rank
    assert cmp_var(x(1), y(0)) == 1
    assert cmp_var(x(0), y(0)) == -1
    assert cmp_var(y(2), y(2)) == 0
    assert x(1) > y(0)


def test_deglex_nc():
    assert cmp_word((x(0),), (x(0), x(0)), DEGLEX_NC) == -1
    assert cmp_word((y(0), x(0)), (x(0), y(0)), DEGLEX_NC) == 1
    assert cmp_word((), (x(0),), DEGLEX_NC) == -1


def test_deglex_c_and_lex_c():
    a = cword([x(0), x(2)])
    b = cword([x(1), x(1)])
    assert a == (x(2), x(0))
    assert cmp_word(a, b, DEGLEX_C) == 1
    # lex: ascending letters compared, strict prefix smaller
    assert cmp_word((x(0),), (x(0), x(0)), LEX_C) == -1
    assert cmp_word(cword([x(1), x(1)]), cword([x(2)]), LEX_C) == -1


def test_lex_not_well_founded():
    # x^(1) > x^(0)^n for every n under lex
    for n in range(1, 8):
        assert cmp_word((x(1),), (x(0),) * n, LEX_C) == 1


def test_order_for():
    assert order_for("deglex", False) is DEGLEX_NC
    assert order_for("deglex", True) is DEGLEX_C
    assert order_for("lex", True) is LEX_C
    with pytest.raises(ValueError):
        order_for("lex", False)
    with pytest.raises(ValueError):
        order_for("grevlex", True)


def test_check_variant():
    check_variant((x(0), x(1)), DEGLEX_NC)
    with pytest.raises(ValueError):
        check_variant((x(0), x(1)), DEGLEX_C)


def test_word_helpers():
    w = (x(1), y(0), x(1))
    assert weight(w) == 2 and max_order(w) == 1 and max_order(()) == 0
    assert exponents(w) == {x(1): 2, y(0): 1}
    assert mul_nc((x(0),), (y(0),)) == (x(0), y(0))
    assert mul_c((x(0),), (y(1),)) == (y(1), x(0))


def test_divides_nc():
    u = (x(0), y(0), x(0), y(0))
    assert divides_nc((x(0), y(0)), u) == [((), (x(0), y(0))), ((x(0), y(0)), ())]
    assert divides_nc((y(1),), u) == []
    with pytest.raises(ValueError):
        divides_nc((), u)


def test_divides_c_and_lcm():
    u = cword([x(0), x(0), y(1)])
    assert divides_c(cword([x(0), y(1)]), u) == (x(0),)
    assert divides_c(cword([x(0), x(0), x(0)]), u) is None
    assert lcm_c(cword([x(0), x(0)]), cword([x(0), x(1)])) == cword([x(1), x(0), x(0)])


def test_overlaps_examples():
    xx = (x(0), x(0))
    assert overlaps_nc(xx, xx) == [((x(0),) * 3, (x(0),), (x(0),))]
    p, q = (x(0), y(0), x(0)), (y(0), x(0), y(0))
    got = overlaps_nc(p, q)
    assert [len(w) for w, _, _ in got] == [4]
    for w, u, v in got:
        assert w == p + u == v + q


def _overlap_oracle(p, q):
    out = set()
    for n in range(max(len(p), len(q)) + 1, len(p) + len(q)):
        k = len(p) + len(q) - n
        if p[len(p) - k:] == q[:k]:
            out.add((p + q[k:], q[k:], p[: len(p) - k]))
    return out


@given(words, words)
def test_overlaps_brute_force(p, q):
    if not p or not q:
        return
    assert set(overlaps_nc(p, q)) == _overlap_oracle(p, q)


@given(cwords, cwords)
def test_lcm_divisible(a, b):
    w = lcm_c(a, b)
    assert divides_c(a, w) is not None and divides_c(b, w) is not None
    assert len(w) <= len(a) + len(b)


@settings(max_examples=50)
@given(st.lists(letters, min_size=1, max_size=6, unique=True))
def test_letter_total_order(ls):
    s = sorted(ls)
    for a, b in zip(s, s[1:]):
        assert cmp_var(a, b) == -1 and cmp_var(b, a) == 1


@given(words, words, words)
def test_deglex_nc_monomial_order(u, v, w):
    # compatible with multiplication on both sides
    c = cmp_word(u, v, DEGLEX_NC)
    assert cmp_word(w + u, w + v, DEGLEX_NC) == c
    assert cmp_word(u + w, v + w, DEGLEX_NC) == c
    if u:
        assert cmp_word((), u, DEGLEX_NC) == -1


@given(cwords, cwords, cwords)
def test_deglex_c_monomial_order(u, v, w):
    c = cmp_word(u, v, DEGLEX_C)
    assert cmp_word(mul_c(u, w), mul_c(v, w), DEGLEX_C) == c
    assert cmp_word(v, u, DEGLEX_C) == -c


@given(cwords, cwords)
def test_lex_c_antisymmetric(u, v):
    assert cmp_word(v, u, LEX_C) == -cmp_word(u, v, LEX_C)


def test_lex_c_not_multiplicative():
    # 1 < x^(0) but x^(1) > x^(0)x^(1)
    assert cmp_word((), (x(0),), LEX_C) == -1
    assert cmp_word((x(1),), cword([x(0), x(1)]), LEX_C) == 1


def test_commutative_order_total_on_small_set():
    ws = {cword(p) for n in range(3) for p in permutations([x(0), x(1), y(0)], n)}
    for o in (DEGLEX_C, LEX_C):
        ranked = sorted(ws, key=o.key)
        assert len({o.key(w) for w in ranked}) == len(ranked)
