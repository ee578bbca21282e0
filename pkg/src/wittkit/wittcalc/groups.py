"""Formal direct sums of named groups and concrete modules."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from wittkit.wittcalc.fields import witt_field
from wittkit.wittcalc.schemes import Field, SchemeExpr
from wittkit.zmodule import FgModule, direct_sum

# kinds whose duality index is 4-periodic
PERIODIC = {"W", "Whigh", "Wco"}
KIND_ORDER = ["W", "Whigh", "Wco", "GW", "K", "KH", "I", "GWrel_V", "GWrel_A", "Krel_V", "Krel_A", "NK"]


@dataclass(frozen=True)
class Atom:
    kind: str
    scheme: SchemeExpr
    r: int | None = None
    i: int | None = None
    n: int | None = None

    def __post_init__(self):
        if self.kind not in KIND_ORDER:
            raise ValueError(f"unknown atom kind {self.kind}")

    def reduced(self) -> "Atom":
        if self.kind in PERIODIC and self.r is not None:
            return replace(self, r=self.r % 4)
        return self

    def sort_key(self) -> tuple:
        return (KIND_ORDER.index(self.kind), str(self.scheme),
                self.r if self.r is not None else -10**9,
                self.i if self.i is not None else -10**9,
                self.n if self.n is not None else -10**9)

    def __str__(self) -> str:
        X, r, i, n = str(self.scheme), self.r, self.i, self.n
        sub = "" if i is None else f"_{i}"
        if self.kind == "W":
            return f"W^{r}({X})"
        if self.kind == "GW":
            return f"GW^[{r}]{sub}({X})"
        if self.kind in ("K", "KH"):
            return f"{self.kind}{sub}({X})"
        if self.kind == "Whigh":
            return f"Whigh^[{r}]{sub}({X})"
        if self.kind == "Wco":
            return f"Wco^[{r}]{sub}({X})"
        if self.kind == "I":
            return f"I({X})"
        if self.kind == "GWrel_V":
            return f"GW^[{r}]{sub}(V(1), P^{n - 1}({X}); O({1 - n}))"
        if self.kind == "GWrel_A":
            return f"GW^[{r}]{sub}(A^{n}({X}), {X})"
        if self.kind == "Krel_V":
            return f"K{sub}(V(1), P^{n - 1}({X}))"
        if self.kind == "Krel_A":
            return f"K{sub}(A^{n}({X}), {X})"
        return f"NK{sub}({X})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "scheme": str(self.scheme), "r": self.r, "i": self.i, "n": self.n,
                "display": str(self)}


def _resolve_field_atom(a: Atom) -> FgModule | None:
    """Concrete value of an atom over a concrete field, if it has one."""
    if not isinstance(a.scheme, Field):
        return None
    k = a.scheme.field
    if a.kind == "W":
        return witt_field(k, a.r)
    if not k.is_concrete:
        return None
    if a.kind == "K" and a.i is not None:
        return k.k_group(a.i)
    if a.kind == "I":
        return k.fundamental_ideal
    return None


@dataclass(frozen=True)
class GroupExpr:
    atoms: tuple = ()
    concrete: tuple = field(default=())

    @classmethod
    def zero(cls) -> "GroupExpr":
        return cls()

    @classmethod
    def of(cls, *parts) -> "GroupExpr":
        out = cls()
        for p in parts:
            out = out + p
        return out

    def __add__(self, other) -> "GroupExpr":
        if isinstance(other, Atom):
            other = GroupExpr((other,))
        elif isinstance(other, FgModule):
            other = GroupExpr((), (other,))
        if not isinstance(other, GroupExpr):
            return NotImplemented
        return GroupExpr(self.atoms + other.atoms, self.concrete + other.concrete)

    __radd__ = __add__

    @property
    def module(self) -> FgModule:
        """The merged concrete part."""
        mods = [m for m in self.concrete if not m.is_zero]
        if not mods:
            return FgModule.zero()
        cf = direct_sum(*mods).canonical_form
        return FgModule.from_invariants(cf.factors, cf.free_rank)

    @property
    def is_concrete(self) -> bool:
        return not self.atoms

    @property
    def is_zero(self) -> bool:
        return not self.atoms and self.module.is_zero

    def normalize(self) -> "GroupExpr":
        atoms, mods = [], []
        for a in self.atoms:
            a = a.reduced()
            v = _resolve_field_atom(a)
            if v is None:
                atoms.append(a)
            else:
                mods.append(v)
        mods.extend(self.concrete)
        atoms.sort(key=Atom.sort_key)
        merged = GroupExpr((), tuple(mods)).module
        return GroupExpr(tuple(atoms), () if merged.is_zero else (merged,))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupExpr):
            return NotImplemented
        a, b = self.normalize(), other.normalize()
        return a.atoms == b.atoms and a.module.canonical_form == b.module.canonical_form

    def __hash__(self) -> int:
        n = self.normalize()
        return hash((n.atoms, n.module.canonical_form))

    def __str__(self) -> str:
        n = self.normalize()
        parts = [str(a) for a in n.atoms]
        cf = n.module.canonical_form
        parts += ["Z"] * cf.free_rank + [f"Z/{d}" for d in cf.factors]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        n = self.normalize()
        return {"display": str(self), "atoms": [a.to_json() for a in n.atoms],
                "concrete": n.module.canonical_form.to_json()}


def normalize(g: GroupExpr) -> GroupExpr:
    return g.normalize()
