"""Parser for polynomial expressions over Q(sqrt d).

Grammar: ``+ - * / ^`` (``**`` accepted for ``^``), parentheses, integer and
decimal-free rational literals, identifiers.  The identifier ``a`` is sqrt(d).
Division is only allowed by nonzero constants.
"""
from __future__ import annotations

import re
from typing import Mapping, Sequence

from .poly import MPoly
from .quad import QuadElem

__all__ = ["parse_poly", "PolySyntaxError", "SQRT_SYMBOL"]

SQRT_SYMBOL = "a"

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, n))
    return toks


class _Parser:
    def __init__(self, text, d, vars, bindings):
        self.toks = _tokenize(text)
        self.i = 0
        self.d = d
        self.vars = vars
        self.bindings = bindings

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            raise PolySyntaxError(f"expected {op!r}", t[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise PolySyntaxError("empty expression", 0)
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise PolySyntaxError(f"unexpected token {t[1]!r}", t[2])
        return v

    def expr(self):
        v = self.term()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                v = v + rhs if t[1] == "+" else v - rhs
            else:
                return v

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "*/":
                self.take()
                rhs = self.unary()
                if t[1] == "*":
                    v = v * rhs
                else:
                    if not rhs.is_constant() or not rhs:
                        raise PolySyntaxError("division by a non-constant or zero expression", t[2])
                    v = v / rhs.constant_value()
            else:
                return v

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                raise PolySyntaxError("exponent must be a nonnegative integer literal", e[2])
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return MPoly.const(val, self.vars, self.d)
        if kind == "id":
            if val in self.bindings:
                return self.bindings[val]
            if val == SQRT_SYMBOL:
                if not self.d:
                    raise PolySyntaxError("symbol 'a' needs a quadratic field (d > 1)", pos)
                return MPoly.const(QuadElem.sqrt_d(self.d), self.vars, self.d)
            if val in self.vars:
                return MPoly.var(val, self.vars, self.d)
            raise PolySyntaxError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect(")")
            return v
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", pos)
        raise PolySyntaxError(f"unexpected token {val!r}", pos)


def _scan_identifiers(text: str) -> list[str]:
    names = []
    for kind, val, _ in _tokenize(text):
        if kind == "id" and val not in names:
            names.append(val)
    return names


def parse_poly(text: str, field_d: int = 0, variables: Sequence[str] | None = None,
               bindings: Mapping[str, MPoly] | None = None) -> MPoly:
    """Parse ``text`` into an exact :class:`MPoly`.

    With ``variables=None`` every unbound identifier other than ``a`` becomes a
    variable, in order of first appearance.  Bound polynomials are re-expressed
    in the variable tuple of the result.
    """
    bindings = dict(bindings or {})
    if variables is None:
        names = [n for n in _scan_identifiers(text) if n not in bindings and n != SQRT_SYMBOL]
        for b in bindings.values():
            for v in b.vars:
                if v not in names:
                    names.append(v)
        variables = tuple(names)
    variables = tuple(variables)
    bound = {k: v.with_vars(variables) for k, v in bindings.items()}
    return _Parser(text, field_d, variables, bound).parse()
