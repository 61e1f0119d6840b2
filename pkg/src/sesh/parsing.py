"""Tiny recursive-descent parser for polynomial literals with rational coefficients.

Accepts ``+ - * / ^ **``, parentheses, integer literals and the given variable
names; division is allowed only by constants.  ``p/q`` therefore parses as a
rational number.  Juxtaposition multiplies (``2th`` == ``2*th``).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

Poly = dict  # exponent tuple -> Fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolynomialSyntaxError(InputError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def _add(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if out[k] == 0:
            del out[k]
    return out


def _mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            out[k] = out.get(k, 0) + va * vb
            if out[k] == 0:
                del out[k]
    return out


class _Parser:
    def __init__(self, text: str, variables: dict[str, int], nvars: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = variables
        self.n = nvars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def const(self, c) -> Poly:
        return {(0,) * self.n: Fraction(c)} if c else {}

    def parse(self) -> Poly:
        if not self.toks:
            raise PolynomialSyntaxError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise PolynomialSyntaxError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            p = _add(p, self.term(), 1 if op == "+" else -1)
        return p

    def term(self) -> Poly:
        p = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                p = _mul(p, self.unary())
            elif (kind, val) == ("op", "/"):
                self.take()
                q = self.unary()
                if set(q) - {(0,) * self.n} or not q:
                    raise PolynomialSyntaxError(f"division by a non-constant or zero in {self.text!r}")
                p = {k: v / q[(0,) * self.n] for k, v in p.items()}
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                p = _mul(p, self.power())
            else:
                return p

    def unary(self) -> Poly:
        if self.peek() == ("op", "-"):
            self.take()
            return {k: -v for k, v in self.unary().items()}
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise PolynomialSyntaxError(f"exponent must be a nonnegative integer in {self.text!r}")
            out = self.const(1)
            for _ in range(int(val)):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return self.const(int(val))
        if kind == "var":
            if val not in self.vars:
                raise PolynomialSyntaxError(f"unknown variable {val!r} in {self.text!r}")
            e = [0] * self.n
            e[self.vars[val]] = 1
            return {tuple(e): Fraction(1)}
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise PolynomialSyntaxError(f"unbalanced parenthesis in {self.text!r}")
            return p
        raise PolynomialSyntaxError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(text: str, variables: dict[str, int], nvars: int | None = None) -> Poly:
    """Parse ``text`` into ``{exponent tuple: Fraction}``."""
    nvars = nvars if nvars is not None else max(variables.values()) + 1
    return _Parser(text, variables, nvars).parse()


UNIVARIATE_NAMES = {"t": 0, "th": 0, "theta": 0, "x": 0}


def parse_univariate(text: str) -> list[Fraction]:
    """Coefficients (constant term first) of a univariate polynomial."""
    p = parse_polynomial(text, UNIVARIATE_NAMES, 1)
    if not p:
        return [Fraction(0)]
    deg = max(k[0] for k in p)
    return [p.get((i,), Fraction(0)) for i in range(deg + 1)]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc
