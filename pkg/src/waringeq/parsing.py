"""Text and structured formats for polynomials.

Expression grammar (whitespace is insignificant)::

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := ("+" | "-") unary | power
    power   := atom ("^" INT)?
    atom    := INT ("/" INT)? | VAR | "(" expr ")"
    VAR     := "x" INT            (x1, x2, ...; 1-based)

``^`` binds tighter than unary minus, so ``-x1^2`` is ``-(x1^2)``.  The only
division is between integer literals, which forms a rational constant.

The structured format is a JSON object::

    {"n": 2, "terms": {"3,0": "2", "1,2": "12"}}

mapping comma-separated exponent vectors to rational strings.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .scalarpoly import Poly, to_rational

_TOKEN = re.compile(r"(?:(?P<int>\d+)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    """Syntax error in a polynomial expression; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = pos
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int")), start))
        elif m.group("var") is not None:
            idx = int(m.group("idx"))
            if idx < 1:
                raise ParseError("variable indices start at x1", start, text)
            tokens.append(("var", idx, start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.n = max((v for k, v, _ in self.tokens if k == "var"), default=0)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos, self.text)

    def fail(self, message):
        raise ParseError(message, self.peek()[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.unary()
        return p

    def unary(self) -> Poly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", pos, self.text)
            p = p**val
        return p

    def atom(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "int":
            c = Fraction(val)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, den, p2 = self.take()
                if k2 != "int":
                    raise ParseError("only integer literals may be divided", p2, self.text)
                if den == 0:
                    raise ParseError("division by zero", p2, self.text)
                c = Fraction(val, den)
            return Poly.constant(c, self.n)
        if kind == "var":
            return Poly.variable(val - 1, self.n)
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected {val!r}", pos, self.text)


def parse(text: str, n: int | None = None, degree: int | None = None) -> Poly:
    """Parse an expression into a :class:`Poly`.

    ``n`` defaults to the largest variable index used; a larger ``n`` pads
    with unused variables.  With ``degree`` the result must be homogeneous of
    that degree (``ValueError`` otherwise).
    """
    parser = _Parser(text)
    p = parser.parse()
    if n is not None:
        if n < parser.n:
            raise ValueError(f"expression uses x{parser.n} but n={n}")
        if n > parser.n:
            p = Poly(n, {e + (0,) * (n - parser.n): c for e, c in p.items()})
    if degree is not None and not p.is_homogeneous(degree):
        raise ValueError(f"polynomial is not homogeneous of degree {degree}")
    return p


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def serialize(p: Poly) -> str:
    """Canonical expression text, terms in descending graded-lex order."""
    if p.is_zero():
        return "0"
    out = []
    for exps, c in p.sorted_terms():
        mono = "*".join(
            f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}" for j, e in enumerate(exps) if e
        )
        a = abs(c)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def to_structured(p: Poly) -> dict:
    return {
        "n": p.n,
        "terms": {",".join(map(str, e)): _fmt_coeff(c) for e, c in p.sorted_terms()},
    }


def from_structured(doc) -> Poly:
    """Build a Poly from the structured map (a dict or its JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict) or "terms" not in doc:
        raise ValueError("structured polynomial needs a 'terms' map")
    terms = {}
    for key, val in doc["terms"].items():
        try:
            exps = tuple(int(x) for x in str(key).split(","))
        except ValueError as exc:
            raise ValueError(f"bad exponent vector {key!r}") from exc
        terms[exps] = to_rational(val)
    n = doc.get("n")
    if n is None:
        lens = {len(e) for e in terms}
        if len(lens) > 1:
            raise ValueError("exponent vectors have unequal lengths")
        n = lens.pop() if lens else 0
    return Poly(int(n), terms)


def load_polynomial(text: str) -> Poly:
    """Accept either the structured JSON document or expression text."""
    if text.lstrip().startswith("{"):
        return from_structured(text)
    return parse(text)
