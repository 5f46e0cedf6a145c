"""Text form of differential polynomials.

Grammar::

    expr  := term (('+' | '-') term)*
    term  := unary ('*' unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' INT)*
    atom  := INT ('/' INT)? | NAME ('^(' INT ')')? | 'd' ('^' INT)? '(' expr ')'
           | '(' expr ')'

``x^(k)`` is the k-th derivative of generator ``x`` and a bare ``x`` means
``x^(0)``; ``^`` followed by an unparenthesized integer is a power. ``d(...)``
and ``d^n(...)`` apply the derivation while parsing, so ``d`` cannot be a
generator name.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .diffmon import MonOrder, Word
from .diffpoly import Context, DiffPoly


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")

RESERVED = frozenset({"d"})


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str, ctx: Context):
        self.text = text
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect_op(self, op):
        t = self.peek()
        if t[0] != "op" or t[1] != op:
            self.error(f"expected {op!r}")
        return self.take()

    def expect_int(self):
        t = self.peek()
        if t[0] != "int":
            self.error("expected an integer")
        return int(self.take()[1])

    def is_op(self, op, k=0):
        t = self.peek(k)
        return t[0] == "op" and t[1] == op

    def parse(self) -> DiffPoly:
        if self.peek()[0] == "end":
            self.error("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        out = self.term()
        while self.is_op("+") or self.is_op("-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while self.is_op("*"):
            self.take()
            out = out * self.unary()
        return out

    def unary(self):
        if self.is_op("-"):
            self.take()
            return -self.unary()
        if self.is_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        while self.is_op("^"):
            self.take()
            base = base ** self.expect_int()
        return base

    def atom(self):
        t = self.peek()
        kind, val, _ = t
        if kind == "int":
            self.take()
            num = int(val)
            if self.is_op("/") and self.peek(1)[0] == "int":
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    self.error("zero denominator", t)
                return DiffPoly.const(self.ctx, Fraction(num, den))
            return DiffPoly.const(self.ctx, num)
        if kind == "name" and val == "d":
            self.take()
            n = 1
            if self.is_op("^"):
                self.take()
                n = self.expect_int()
            self.expect_op("(")
            inner = self.expr()
            self.expect_op(")")
            return inner.derive_n(n)
        if kind == "name":
            self.take()
            try:
                gen = self.ctx.table.rank(val)
            except KeyError:
                self.error(f"unknown generator {val!r}", t)
            order = 0
            if self.is_op("^") and self.is_op("(", 1):
                self.take()
                self.take()
                order = self.expect_int()
                self.expect_op(")")
            return DiffPoly.variable(self.ctx, gen, order)
        if kind == "op" and val == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            self.error("unexpected end of expression")
        self.error(f"unexpected {val!r}")


def parse_poly(text: str, ctx: Context) -> DiffPoly:
    return _Parser(text, ctx).parse()


def format_var(a, names) -> str:
    return f"{names[a.gen]}^({a.order})"


def format_word(w: Word, names) -> str:
    if not w:
        return "1"
    return "*".join(format_var(a, names) for a in w)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: DiffPoly, order: Optional[MonOrder] = None) -> str:
    """Terms in descending order; ``+ -c`` is written ``- c``."""
    if not f:
        return "0"
    names = f.ctx.table.names
    parts = []
    for i, (w, c) in enumerate(f.sorted_terms(order)):
        neg = c < 0
        a = -c if neg else c
        if not w:
            body = _format_coeff(a)
        elif a == 1:
            body = format_word(w, names)
        else:
            body = f"{_format_coeff(a)}*{format_word(w, names)}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
