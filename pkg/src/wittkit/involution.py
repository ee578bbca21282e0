"""Modules with an involution and their Z/2 Tate cohomology.

Conventions: ``h0 = ker(1 - s) / im(1 + s)`` and ``h1 = ker(1 + s) / im(1 - s)``.
With these, the trivial involution on Z gives ``(Z/2, 0)``.  A duality shift
``r`` acts on the Tate pair as a 2-periodic degree shift, so an odd shift
swaps the two groups; the involution matrix itself is never touched.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from wittkit.zmodule import (
    Z,
    FgModule,
    ModuleError,
    ModuleMap,
    block_diagonal,
    direct_sum,
    homology_at,
    identity,
    kernel,
)


class InvolutionError(ModuleError):
    """The given endomorphism is not a well-defined involution."""


@dataclass(frozen=True)
class InvolutionModule:
    underlying: FgModule
    sigma: ModuleMap
    shift: int = 0

    @classmethod
    def from_matrix(cls, relations, sigma, ngens: int | None = None, base_ring: str = Z, shift: int = 0):
        m = FgModule(relations, ngens=ngens, base_ring=base_ring)
        return cls(m, ModuleMap(m, m, sigma, check=False), shift)

    @classmethod
    def trivial(cls, m: FgModule, shift: int = 0) -> "InvolutionModule":
        return cls(m, identity(m), shift)

    @classmethod
    def sign(cls, m: FgModule, shift: int = 0) -> "InvolutionModule":
        return cls(m, -identity(m), shift)

    @classmethod
    def zero(cls) -> "InvolutionModule":
        return cls.trivial(FgModule.zero())

    @classmethod
    def from_json(cls, data: dict) -> "InvolutionModule":
        rel = data.get("relations", [])
        sigma = data["sigma"]
        ngens = data.get("ngens", len(sigma))
        return cls.from_matrix(rel, sigma or None, ngens=ngens,
                               base_ring=data.get("base_ring", Z), shift=int(data.get("shift", 0)))

    @property
    def shift_class(self) -> int:
        return self.shift % 2

    def plus(self) -> ModuleMap:
        return identity(self.underlying) + self.sigma

    def minus(self) -> ModuleMap:
        return identity(self.underlying) - self.sigma


def check_involution(m: InvolutionModule) -> bool:
    """True when ``sigma`` is well defined and squares to the identity."""
    n = m.underlying.ngens
    if m.sigma.source.ngens != n or m.sigma.target.ngens != n:
        return False
    if not m.sigma.is_well_defined():
        return False
    return (m.sigma @ m.sigma).equals(identity(m.underlying))


@dataclass(frozen=True)
class TatePair:
    h0: FgModule
    h1: FgModule

    def __post_init__(self):
        for h in (self.h0, self.h1):
            cf = h.canonical_form
            if cf.free_rank or any(d != 2 for d in cf.factors):
                raise ModuleError(f"Tate group {cf} is not killed by 2")

    @classmethod
    def zero(cls) -> "TatePair":
        return cls(FgModule.zero(), FgModule.zero())

    @property
    def vanishes(self) -> bool:
        return self.h0.is_zero and self.h1.is_zero

    def swapped(self) -> "TatePair":
        return TatePair(self.h1, self.h0)

    def same_as(self, other: "TatePair") -> bool:
        return (self.h0.canonical_form == other.h0.canonical_form
                and self.h1.canonical_form == other.h1.canonical_form)

    def __str__(self) -> str:
        return f"({self.h0}, {self.h1})"

    def to_json(self) -> dict:
        return {"h0": str(self.h0), "h1": str(self.h1)}


def tate(m: InvolutionModule) -> TatePair:
    """Tate cohomology of Z/2 acting through ``m.sigma``, shifted by ``m.shift``.

    >>> str(tate(InvolutionModule.trivial(FgModule.free(1))))
    '(Z/2, 0)'
    """
    if not check_involution(m):
        raise InvolutionError("sigma is not an involution")
    plus, minus = m.plus(), m.minus()
    pair = TatePair(homology_at(minus, plus), homology_at(plus, minus))
    return tate_shift(pair, m.shift)


def tate_shift(pair: TatePair, s: int) -> TatePair:
    return pair.swapped() if s % 2 else pair


def hyperbolic(a: FgModule, shift: int = 0) -> InvolutionModule:
    """``a + a`` with the swap involution."""
    m = direct_sum(a, a)
    n = a.ngens
    sigma = [[1 if (j == i + n or i == j + n) else 0 for j in range(2 * n)] for i in range(2 * n)]
    return InvolutionModule(m, ModuleMap(m, m, sigma or None, check=False), shift)


def involution_sum(a: InvolutionModule, b: InvolutionModule) -> InvolutionModule:
    if a.shift_class != b.shift_class:
        raise InvolutionError("cannot add involution modules with different shifts")
    s = block_diagonal(a.sigma, b.sigma)
    return InvolutionModule(s.source, ModuleMap(s.source, s.source, s.matrix if s.source.ngens else None,
                                                check=False), a.shift)


def group_cohomology(m: InvolutionModule) -> tuple[FgModule, FgModule, FgModule]:
    """``H^0, H^1, H^2`` of Z/2 with coefficients in ``m`` (shift ignored).

    ``H^0`` is the invariants; in positive degrees the groups agree with the
    Tate groups, odd degrees giving ``h1`` and even degrees ``h0``.
    """
    if not check_involution(m):
        raise InvolutionError("sigma is not an involution")
    h0, _ = kernel(m.minus())
    plus, minus = m.plus(), m.minus()
    return h0, homology_at(plus, minus), homology_at(minus, plus)


class Coefficient(enum.Enum):
    UNIQUELY_2_DIVISIBLE = "uniquely-2-divisible"
    HYPERBOLIC = "hyperbolic"
    FINITE_ODD = "finite-odd"


VANISHING_RULES = {
    Coefficient.UNIQUELY_2_DIVISIBLE: "tate-vanishes-uniquely-2-divisible",
    Coefficient.HYPERBOLIC: "tate-vanishes-hyperbolic",
    Coefficient.FINITE_ODD: "tate-vanishes-odd-order",
}


def tate_vanishes_by_divisibility(tag, trace: list | None = None) -> bool:
    """Tate vanishing for coefficient classes where no matrix work is needed.

    Multiplication by 2 is invertible on uniquely 2-divisible and odd-order
    groups, and Tate groups are killed by 2; hyperbolic modules are induced.
    """
    tag = Coefficient(tag)
    if trace is not None:
        trace.append(VANISHING_RULES[tag])
    return True
