"""Query language for group and scheme expressions.

::

    group  := "W^" int "(" scheme ")"
            | "GW^[" int "]_" int "(" scheme ")"
            | "Whigh^[" int "]_" int "(" scheme ")"
            | "Wco^[" int "]_" int "(" scheme ")"
            | "K_" int "(" scheme ")" | "KH_" int "(" scheme ")"
    scheme := base (" x Gm" | " x C" int)*
    base   := field | "node(" field ")" | "V(" scheme ")" | "A^" int "(" scheme ")"
            | "P^" int "(" scheme ("; O(" int ")")? ")" | "X" | "Xreg"
    field  := "F" int | "Rfield" | "Cfield" | "k"

``X`` is an unspecified scheme, ``Xreg`` an unspecified regular one and
``k`` an unspecified field.  Printing an expression gives its canonical
string, and parsing that string returns the same expression.
"""

from __future__ import annotations

import re

from wittkit.wittcalc.fields import FieldDesc, FieldError
from wittkit.wittcalc.groups import Atom
from wittkit.wittcalc.schemes import (
    AffineSpace,
    Field,
    Node,
    ProjSpace,
    PuncturedAffine,
    SchemeExpr,
    Symbolic,
    VectorBundleOver,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset}: {text!r}")
        self.message = message
        self.text = text
        self.offset = offset

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.offset}^ {self.message}"


_INT = re.compile(r"-?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise ParseError(message, self.text, self.pos if pos is None else pos)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str):
        if not self.eat(s):
            self.error(f"expected {s!r}")

    def int(self) -> int:
        self.ws()
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def done(self):
        self.ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")

    # grammar ---------------------------------------------------------------

    def group(self) -> Atom:
        if self.eat("GW^["):
            r = self.int()
            self.expect("]_")
            i = self.int()
            return Atom("GW", self.paren_scheme(), r=r, i=i)
        for word, kind in (("Whigh^[", "Whigh"), ("Wco^[", "Wco")):
            if self.eat(word):
                r = self.int()
                self.expect("]_")
                i = self.int()
                return Atom(kind, self.paren_scheme(), r=r, i=i)
        if self.eat("W^"):
            r = self.int()
            return Atom("W", self.paren_scheme(), r=r)
        if self.eat("KH_"):
            return self._k("KH")
        if self.eat("K_"):
            return self._k("K")
        self.error("expected W^, GW^[, Whigh^[, Wco^[, K_ or KH_")

    def _k(self, kind: str) -> Atom:
        i = self.int()
        return Atom(kind, self.paren_scheme(), i=i)

    def paren_scheme(self) -> SchemeExpr:
        self.expect("(")
        x = self.scheme()
        self.expect(")")
        return x

    def scheme(self) -> SchemeExpr:
        x = self.base()
        while True:
            save = self.pos
            if self.eat("x"):
                if self.eat("Gm"):
                    x = PuncturedAffine(x, 1)
                    continue
                if self.eat("C"):
                    at = self.pos
                    n = self.int()
                    if n < 1:
                        self.error("C_n needs n >= 1", at)
                    x = PuncturedAffine(x, n)
                    continue
                self.error("expected Gm or C<n> after x")
            self.pos = save
            return x

    def base(self) -> SchemeExpr:
        if self.eat("node("):
            k = self.field()
            self.expect(")")
            return Node(k)
        if self.eat("V("):
            x = self.scheme()
            self.expect(")")
            return VectorBundleOver(x)
        if self.eat("A^"):
            n = self.int()
            return AffineSpace(self.paren_scheme(), n)
        if self.eat("P^"):
            at = self.pos
            n = self.int()
            if n < 0:
                self.error("P^n needs n >= 0", at)
            self.expect("(")
            x = self.scheme()
            twist = 0
            if self.eat(";"):
                self.expect("O(")
                twist = self.int()
                self.expect(")")
            self.expect(")")
            return ProjSpace(x, n, twist)
        if self.eat("Xreg"):
            return Symbolic("Xreg", True)
        if self.eat("X"):
            return Symbolic("X", None)
        return Field(self.field())

    def field(self) -> FieldDesc:
        self.ws()
        if self.eat("Rfield"):
            return FieldDesc.real_closed()
        if self.eat("Cfield"):
            return FieldDesc.quadratically_closed()
        at = self.pos
        if self.eat("F"):
            q = self.int()
            try:
                return FieldDesc.finite(q)
            except FieldError as e:
                self.error(str(e), at)
        if self.eat("k"):
            return FieldDesc.symbolic("k")
        self.error("expected a field (F<q>, Rfield, Cfield or k)")


def parse_group(text: str) -> Atom:
    p = _Parser(text)
    a = p.group()
    p.done()
    return a


def parse_scheme(text: str) -> SchemeExpr:
    p = _Parser(text)
    x = p.scheme()
    p.done()
    return x


def parse_field(text: str) -> FieldDesc:
    p = _Parser(text)
    k = p.field()
    p.done()
    return k


def print_group(a: Atom) -> str:
    return str(a)
