"""Witt groups of the base fields, derived from Witt's presentation.

W(k) is generated by the classes ``<u>`` of square classes ``u`` subject to
``<1> + <-1> = 0`` and ``<a> + <b> = <a+b> + <ab(a+b)>`` whenever
``a + b != 0``.  Both relations only depend on square classes, so a field
enters through its square-class calculus: the class of ``-1`` and, for each
pair of classes, the classes that a sum of two such elements can take.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from wittkit.wittcalc.finite_field import finite_field, prime_power
from wittkit.zmodule import FgModule, ModuleMap, kernel


class FieldError(ValueError):
    """Unsupported base field."""


class FieldKind(enum.Enum):
    FINITE = "finite"
    REAL_CLOSED = "real-closed"
    QUADRATICALLY_CLOSED = "quadratically-closed"
    SYMBOLIC = "symbolic"


@dataclass(frozen=True)
class SquareClassCalculus:
    """Square classes ``0..m-1`` forming a group under ``mul``, with class 0 the squares."""

    size: int
    mul: tuple  # mul[a][b]
    minus_one: int
    sums: frozenset  # triples (a, b, c): some x in a, y in b have x + y != 0 in class c


def finite_field_calculus(q: int) -> SquareClassCalculus:
    F = finite_field(q)
    cls = {a: 0 if F.is_square(a) else 1 for a in F.units()}
    sums = set()
    for a in F.units():
        for b in F.units():
            s = F.add(a, b)
            if s:
                sums.add((cls[a], cls[b], cls[s]))
    return SquareClassCalculus(2, ((0, 1), (1, 0)), cls[F.neg(1)], frozenset(sums))


def real_closed_calculus() -> SquareClassCalculus:
    # classes are signs: 0 positive, 1 negative
    sums = {(0, 0, 0), (1, 1, 1)}
    sums |= {(0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)}
    return SquareClassCalculus(2, ((0, 1), (1, 0)), 1, frozenset(sums))


def quadratically_closed_calculus() -> SquareClassCalculus:
    return SquareClassCalculus(1, ((0,),), 0, frozenset({(0, 0, 0)}))


def witt_presentation(calc: SquareClassCalculus) -> tuple[FgModule, ModuleMap]:
    """W(k) from its presentation, with the rank map to Z/2."""
    m = calc.size
    rows = set()

    def vec(*terms):
        v = [0] * m
        for c, s in terms:
            v[c] += s
        return tuple(v)

    rows.add(vec((0, 1), (calc.minus_one, 1)))
    for a, b, c in calc.sums:
        abc = calc.mul[calc.mul[a][b]][c]
        rows.add(vec((a, 1), (b, 1), (c, -1), (abc, -1)))
    rows.discard(tuple([0] * m))
    W = FgModule(sorted(rows), ngens=m)
    rank = ModuleMap(W, FgModule.cyclic(2), [[1] * m])
    return W, rank


@lru_cache(maxsize=None)
def witt_field_oracle(q: int) -> tuple[FgModule, ModuleMap]:
    """W(F_q) and its rank map, by SNF of Witt's presentation."""
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"q = {q} is not a prime power")
    if pk[0] == 2:
        raise FieldError(f"F{q} has even characteristic: 2 must be invertible")
    return witt_presentation(finite_field_calculus(q))


_K_TABLE_NOTE = "K-groups of finite fields"


@dataclass(frozen=True)
class FieldDesc:
    kind: FieldKind
    q: int | None = None
    name: str = field(default="k", compare=False)

    def __post_init__(self):
        if self.kind is FieldKind.FINITE:
            if self.q is None:
                raise FieldError("finite field needs q")
            pk = prime_power(self.q)
            if pk is None:
                raise FieldError(f"q = {self.q} is not a prime power")
            if pk[0] == 2:
                raise FieldError(f"F{self.q} has even characteristic: 2 must be invertible")

    @classmethod
    def finite(cls, q: int) -> "FieldDesc":
        return cls(FieldKind.FINITE, q)

    @classmethod
    def real_closed(cls) -> "FieldDesc":
        return cls(FieldKind.REAL_CLOSED)

    @classmethod
    def quadratically_closed(cls) -> "FieldDesc":
        return cls(FieldKind.QUADRATICALLY_CLOSED)

    @classmethod
    def symbolic(cls, name: str = "k") -> "FieldDesc":
        return cls(FieldKind.SYMBOLIC, None, name)

    @property
    def is_concrete(self) -> bool:
        return self.kind is not FieldKind.SYMBOLIC

    def __str__(self) -> str:
        if self.kind is FieldKind.FINITE:
            return f"F{self.q}"
        if self.kind is FieldKind.REAL_CLOSED:
            return "Rfield"
        if self.kind is FieldKind.QUADRATICALLY_CLOSED:
            return "Cfield"
        return self.name

    @cached_property
    def _witt(self) -> tuple[FgModule, ModuleMap]:
        if self.kind is FieldKind.FINITE:
            return witt_field_oracle(self.q)
        if self.kind is FieldKind.REAL_CLOSED:
            return witt_presentation(real_closed_calculus())
        if self.kind is FieldKind.QUADRATICALLY_CLOSED:
            return witt_presentation(quadratically_closed_calculus())
        raise FieldError(f"no Witt data for the symbolic field {self.name}")

    @property
    def witt_group(self) -> FgModule:
        return self._witt[0]

    @property
    def rank_map(self) -> ModuleMap:
        return self._witt[1]

    @property
    def fundamental_ideal(self) -> FgModule:
        return kernel(self.rank_map)[0]

    def k_group(self, i: int) -> FgModule | None:
        """K_i from the classical table; None where unknown."""
        if i < 0:
            return FgModule.zero()
        if i == 0:
            return FgModule.free(1)
        if self.kind is FieldKind.FINITE:
            if i % 2 == 0:
                return FgModule.zero()
            return FgModule.cyclic(self.q ** ((i + 1) // 2) - 1)
        return None


def witt_field(k: FieldDesc, r: int) -> FgModule | None:
    """W^r(k): zero unless ``r = 0 mod 4``; None for a symbolic field in degree 0."""
    if r % 4:
        return FgModule.zero()
    if not k.is_concrete:
        return None
    return k.witt_group


def fundamental_ideal(k: FieldDesc) -> FgModule:
    return k.fundamental_ideal
