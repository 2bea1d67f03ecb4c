"""Tiny tokenizer shared by the text parsers (coefficients, torus elements, Plücker expressions)."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


class Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            num, ident, punct = m.groups()
            if num is not None:
                self.items.append(("num", num))
            elif ident is not None:
                self.items.append(("id", ident))
            elif punct is not None and not punct.isspace():
                self.items.append(("p", punct))
        self.pos = 0

    def peek(self, offset: int = 0) -> tuple[str, str] | None:
        j = self.pos + offset
        return self.items[j] if j < len(self.items) else None

    def at(self, value: str, offset: int = 0) -> bool:
        tok = self.peek(offset)
        return tok is not None and tok[1] == value and tok[0] != "num"

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r} in {self.text!r}")

    def done(self) -> bool:
        return self.pos >= len(self.items)

    def int_(self) -> int:
        sign = 1
        while self.at("-") or self.at("+"):
            if self.take()[1] == "-":
                sign = -sign
        kind, val = self.take()
        if kind != "num":
            raise ParseError(f"expected integer, got {val!r} in {self.text!r}")
        return sign * int(val)

    def rational(self) -> Fraction:
        """``int`` or ``int/int``."""
        num = self.int_()
        if self.at("/") and self.peek(1) is not None and self.peek(1)[0] == "num":
            self.take()
            return Fraction(num, self.int_())
        return Fraction(num)

    def exponent(self) -> Fraction:
        """Exponent after ``^``: ``{r}``, ``{a/b}``, ``-r`` or ``r``."""
        if self.at("{"):
            self.take()
            value = self.rational()
            self.expect("}")
            return value
        return Fraction(self.int_())
