"""Sparse multivariate polynomials over Q or a prime field F_p."""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable


class Rationals:
    name = "Q"
    characteristic = 0

    def coerce(self, x):
        return Fraction(x)

    def inv(self, x):
        return 1 / Fraction(x)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not an odd prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        return pow(int(x), -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str):
    """'Q' or 'F<p>' / 'Fp' (p = 101)."""
    if name in ("Q", "QQ"):
        return QQ
    if name == "Fp":
        return GF(101)
    m = re.fullmatch(r"F(\d+)", name)
    if m:
        return GF(int(m.group(1)))
    raise ValueError(f"unknown base field {name!r}")


class PolyRing:
    """k[names]; polynomial exponents are tuples aligned with ``names``."""

    def __init__(self, field, names: Iterable[str]):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)

    @classmethod
    def projective(cls, n: int, field=QQ) -> "PolyRing":
        return cls(field, [f"T{i}" for i in range(n + 1)])

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}]"

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> "Poly":
        i = self.names.index(name)
        e = tuple(int(j == i) for j in range(self.nvars))
        return Poly(self, {e: 1})

    def monomials(self, degree: int) -> list[tuple[int, ...]]:
        """All exponent vectors of total degree ``degree`` (empty if negative)."""
        if degree < 0:
            return []
        if self.nvars == 0:
            return [()] if degree == 0 else []
        out = []
        for combo in combinations_with_replacement(range(self.nvars), degree):
            e = [0] * self.nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        return out

    def drop_var(self, i: int) -> "PolyRing":
        return PolyRing(self.field, self.names[:i] + self.names[i + 1:])

    def with_field(self, field) -> "PolyRing":
        return PolyRing(field, self.names)

    _term = re.compile(r"\s*([+-])?\s*([^+-]+)")

    def parse(self, text: str) -> "Poly":
        """Parse strings like ``"T0^2*T1 - 2*T2"``."""
        text = text.strip()
        if not text or text == "0":
            return self.zero()
        terms = {}
        pos = 0
        while pos < len(text):
            m = self._term.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = Fraction(sign)
            e = [0] * self.nvars
            for factor in m.group(2).split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if factor in self.names or "^" in factor:
                    name, _, power = factor.partition("^")
                    if name not in self.names:
                        raise ValueError(f"unknown variable {name!r}")
                    e[self.names.index(name)] += int(power or 1)
                else:
                    coeff *= Fraction(factor)
            e = tuple(e)
            terms[e] = terms.get(e, 0) + coeff
            pos = m.end()
        return Poly(self, terms)


class Poly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        f = ring.field
        clean = {}
        for e, c in terms.items():
            c = f.coerce(c)
            if c:
                clean[e] = c
        self.terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    # arithmetic -------------------------------------------------------------

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return not self.terms
            return self == self.ring.const(other)
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # queries ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial_term(self) -> bool:
        return len(self.terms) <= 1

    def constant(self):
        """The value when the polynomial is a constant, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        return None

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) > 1:
            return False
        return degree is None or ds == {degree}

    def substitute(self, i: int, value) -> "Poly":
        """Set variable ``i`` to a constant and drop it from the ring."""
        ring = self.ring.drop_var(i)
        value = self.ring.field.coerce(value)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k and not value:
                continue
            e2 = e[:i] + e[i + 1:]
            t[e2] = t.get(e2, 0) + c * value ** k
        return Poly(ring, t)

    def evaluate(self, point) -> object:
        f = self.ring.field
        total = f.coerce(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * f.coerce(x) ** k
            total = total + v
        return f.coerce(total)

    def change_field(self, field) -> "Poly":
        return Poly(self.ring.with_field(field), self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms.items():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.ring.names, e) if k)
            neg = isinstance(c, Fraction) and c < 0
            a = abs(c) if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            out.append(("-" if neg else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Poly({self})"
