"""Scheme expressions: the closed vocabulary the rewrite rules act on."""

from __future__ import annotations

from dataclasses import dataclass

from wittkit.wittcalc.fields import FieldDesc


class SchemeExpr:
    """Base class; subclasses are frozen dataclasses."""

    @property
    def is_regular(self) -> bool | None:
        raise NotImplementedError

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, eq=True)
class Field(SchemeExpr):
    field: FieldDesc

    @property
    def is_regular(self) -> bool:
        return True


@dataclass(frozen=True, eq=True)
class Node(SchemeExpr):
    """The affine nodal curve ``y^2 = x^3 - x^2`` over a field."""

    field: FieldDesc

    @property
    def is_regular(self) -> bool:
        return False


@dataclass(frozen=True, eq=True)
class PuncturedAffine(SchemeExpr):
    """``base x (A^n - 0)``; ``n = 1`` is ``base x Gm``."""

    base: SchemeExpr
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("punctured affine space needs n >= 1")

    @property
    def is_regular(self) -> bool | None:
        return self.base.is_regular


@dataclass(frozen=True, eq=True)
class VectorBundleOver(SchemeExpr):
    base: SchemeExpr

    @property
    def is_regular(self) -> bool | None:
        return self.base.is_regular


@dataclass(frozen=True, eq=True)
class AffineSpace(SchemeExpr):
    base: SchemeExpr
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("affine space needs n >= 0")

    @property
    def is_regular(self) -> bool | None:
        return self.base.is_regular


@dataclass(frozen=True, eq=True)
class ProjSpace(SchemeExpr):
    """``P^n`` over the base, with the line bundle ``O(twist)`` used as duality."""

    base: SchemeExpr
    n: int
    twist: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("projective space needs n >= 0")

    @property
    def is_regular(self) -> bool | None:
        return self.base.is_regular


@dataclass(frozen=True, eq=True)
class Symbolic(SchemeExpr):
    """An unspecified scheme; ``regular`` is None when nothing is known."""

    name: str = "X"
    regular: bool | None = None

    @property
    def is_regular(self) -> bool | None:
        return self.regular


def render(x: SchemeExpr) -> str:
    if isinstance(x, Field):
        return str(x.field)
    if isinstance(x, Node):
        return f"node({x.field})"
    if isinstance(x, PuncturedAffine):
        return f"{render(x.base)} x Gm" if x.n == 1 else f"{render(x.base)} x C{x.n}"
    if isinstance(x, VectorBundleOver):
        return f"V({render(x.base)})"
    if isinstance(x, AffineSpace):
        return f"A^{x.n}({render(x.base)})"
    if isinstance(x, ProjSpace):
        tw = f"; O({x.twist})" if x.twist else ""
        return f"P^{x.n}({render(x.base)}{tw})"
    if isinstance(x, Symbolic):
        return x.name
    raise TypeError(f"not a scheme expression: {x!r}")


def strip_bundles(x: SchemeExpr) -> SchemeExpr:
    """Remove outer vector bundles and affine spaces."""
    while isinstance(x, (VectorBundleOver, AffineSpace)):
        x = x.base
    return x
