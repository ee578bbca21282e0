"""Rewrite rules and concrete evaluations.

Every function takes an optional :class:`Trace` and records the rules it
uses.  Values over concrete fields are resolved to modules; everything else
stays as named atoms.
"""

from __future__ import annotations

from dataclasses import dataclass

from wittkit.involution import InvolutionModule, group_cohomology, tate, tate_shift
from wittkit.wittcalc.fields import FieldDesc, FieldKind, witt_field
from wittkit.wittcalc.groups import Atom, GroupExpr
from wittkit.wittcalc.rules import HypothesisFailed, NotTabulated, Rule, Trace, WittCalcError, _trace
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
from wittkit.zmodule import FgModule, ModuleMap, cokernel, direct_sum, kernel, to_canonical, zero_map

BALMER_GILLE_WARNING = "Balmer–Gille formula inapplicable: h^0 Tate(K_-1)=Z/2"


def _w(x: SchemeExpr, r: int) -> Atom:
    return Atom("W", x, r=r % 4)


# negative K-theory and the Tate hypothesis

def k_minus_one(x: SchemeExpr, trace: Trace | None = None) -> InvolutionModule:
    """K_-1 with its duality involution, from the supported table."""
    t = _trace(trace)
    while isinstance(x, (VectorBundleOver, AffineSpace)):
        x = x.base
    if isinstance(x, Node):
        t.apply(Rule.K_NEG_NODE)
        return InvolutionModule.trivial(FgModule.free(1))
    if x.is_regular is True:
        t.apply(Rule.K_NEG_REGULAR)
        return InvolutionModule.zero()
    raise NotTabulated(f"K_-1 not tabulated for {x}")


def check_tate_hypothesis(x: SchemeExpr, trace: Trace | None = None):
    t = _trace(trace)
    pair = tate(k_minus_one(x, t))
    t.apply(Rule.TATE_HYPOTHESIS)
    if not pair.vanishes:
        raise HypothesisFailed(
            f"Tate cohomology of K_-1({x}) is nonzero: h^0 = {pair.h0}, h^1 = {pair.h1}", pair)
    return pair


# Witt groups

def witt_group(x: SchemeExpr, r: int, trace: Trace | None = None) -> GroupExpr:
    """W^r(x) as far as the rules determine it."""
    t = _trace(trace)
    r %= 4
    if isinstance(x, Field):
        t.apply(Rule.WITT_FIELD)
        if r == 0 and x.field.kind is FieldKind.FINITE:
            t.apply(Rule.WITT_PRESENTATION)
        v = witt_field(x.field, r)
        return GroupExpr.of(_w(x, 0)) if v is None else GroupExpr.of(v)
    if isinstance(x, Node):
        if not x.field.is_concrete:
            return GroupExpr.of(_w(x, r))
        return GroupExpr.of(node_witt(x.field, t)[r])
    if isinstance(x, (VectorBundleOver, AffineSpace)):
        return homotopy_invariance(GroupExpr.of(_w(x, r)), trace=t).normalize()
    if isinstance(x, PuncturedAffine):
        try:
            return witt_punctured(x.base, x.n, r, t)
        except HypothesisFailed:
            if isinstance(x.base, Node) and x.n == 1 and x.base.field.is_concrete:
                t.warn(BALMER_GILLE_WARNING)
                return GroupExpr.of(node_laurent_witt(x.base.field, t)[r])
            raise
    if isinstance(x, Symbolic):
        return GroupExpr.of(_w(x, r))
    raise NotTabulated(f"W^{r}({x}) is not tabulated")


def witt_punctured(x: SchemeExpr, n: int, r: int, trace: Trace | None = None) -> GroupExpr:
    """W^r(x x C_n) = W^r(x) + W^(r+1-n)(x), after checking the Tate hypothesis."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t = _trace(trace)
    check_tate_hypothesis(x, t)
    t.apply(Rule.WITT_PUNCTURED)
    return (witt_group(x, r, t) + witt_group(x, r + 1 - n, t)).normalize()


def witt_bass(x: SchemeExpr, r: int = 0, trace: Trace | None = None) -> GroupExpr:
    """W_0(x x Gm) through the Bass fundamental theorem.

    The contracted-functor sequence gives the cokernel of the diagonal
    ``W(x) -> W(x[t]) + W(x[1/t])`` as a split summand, with complement
    ``W^0(x)``.  Only the degree ``r = 0 mod 4`` is covered.
    """
    t = _trace(trace)
    if r % 4:
        raise NotTabulated("the Bass route only covers W_0")
    h = group_cohomology(k_minus_one(x, t))
    if not all(g.is_zero for g in h):
        raise HypothesisFailed(f"H*(Z/2, K_-1({x})) is nonzero")
    t.apply(Rule.BASS_WITT)
    w = witt_group(x, 0, t)
    t.apply(Rule.HOMOTOPY_INVARIANCE)
    if not w.is_concrete:
        return (w + w).normalize()
    W = w.module
    m = W.ngens
    diag = ModuleMap(W, direct_sum(W, W), [[int(i == j) for j in range(m)] for i in range(m)] * 2 or None)
    coker, _ = cokernel(diag)
    return GroupExpr.of(coker, W).normalize()


@dataclass(frozen=True)
class LesTerm:
    position: str
    group: GroupExpr
    tate: bool = False

    def to_json(self) -> dict:
        return {"position": self.position, "group": str(self.group), "tate": self.tate}


@dataclass(frozen=True)
class LesReport:
    scheme: str
    n: int
    r: int
    shift: int
    terms: tuple
    extensions_unresolved: bool

    @property
    def flag(self) -> str:
        return "extensions unresolved" if self.extensions_unresolved else "split"

    def to_json(self) -> dict:
        return {"scheme": self.scheme, "n": self.n, "r": self.r, "shift": self.shift,
                "terms": [term.to_json() for term in self.terms], "flag": self.flag}


def witt_les_punctured(x: SchemeExpr, n: int, r: int, trace: Trace | None = None) -> LesReport:
    """Six terms of the long exact sequence around degree 0.

    The fibre is ``S^s Tate(K_-1 x)`` with ``s = r - n - 1``, so its i-th
    homotopy group is the Tate group in degree ``i - s``.  The middle term is
    ``L^[r](x) + S L^[r-n](x)``, with ``pi_i = W^(r-i)(x) + W^(r-n+1-i)(x)``.
    """
    t = _trace(trace)
    pair = tate(k_minus_one(x, t))
    t.apply(Rule.WITT_PUNCTURED_LES)
    s = r - n - 1
    shifted = tate_shift(pair, s)
    target = PuncturedAffine(x, n)

    def fibre(i):
        return GroupExpr.of(shifted.h0 if i % 2 == 0 else shifted.h1).normalize()

    def middle(i):
        parts = [witt_group(x, r - i, t), witt_group(x, r - n + 1 - i, t)]
        return (parts[0] + parts[1]).normalize()

    def total(i):
        return GroupExpr.of(_w(target, r - i))

    terms = []
    for i in (0, -1):
        terms += [LesTerm(f"pi_{i} fibre", fibre(i), True), LesTerm(f"pi_{i} middle", middle(i)),
                  LesTerm(f"pi_{i} total", total(i))]
    return LesReport(str(x), n, r, s, tuple(terms), not pair.vanishes)


# the node

@dataclass(frozen=True)
class NodeLTable:
    """Stabilized L-groups of the node, indexed by n mod 4."""

    values: tuple

    def __getitem__(self, n: int) -> FgModule:
        return self.values[n % 4]


def node_l_table(k: FieldDesc, trace: Trace | None = None) -> NodeLTable:
    """``L^stab_n(R) = L_n(k) + L_(n+1)(k)`` with ``L_n(k) = W^(-n)(k)``."""
    t = _trace(trace)
    t.apply(Rule.NODE_STABLE_L)
    t.apply(Rule.WITT_FIELD)
    return NodeLTable(tuple(direct_sum(witt_field(k, -n), witt_field(k, -n - 1)) for n in range(4)))


@dataclass(frozen=True)
class NodeWitt:
    groups: tuple  # W^0 .. W^3

    def __getitem__(self, r: int) -> FgModule:
        return self.groups[r % 4]

    @property
    def orders(self) -> tuple:
        return tuple(g.order for g in self.groups)

    def __str__(self) -> str:
        return ", ".join(str(g.canonical_form) for g in self.groups)


def _node_boundary(k: FieldDesc, table: NodeLTable, n: int, tate_group, t: Trace) -> ModuleMap:
    """``L^stab_n(R) -> pi_n Tate(K_<0 R) = h^(n+1)``."""
    src, tgt = table[n], tate_group(n + 1)
    if src.is_zero or tgt.is_zero:
        return zero_map(src, tgt)
    if n % 4 != 3:
        raise WittCalcError(f"no boundary map known in degree {n}")
    # L^stab_3 = W^1(k) + W^0(k); the boundary is the rank map on the W(k) summand
    t.apply(Rule.NODE_RANK_MAP)
    off = witt_field(k, -n).ngens
    rank = k.rank_map
    cols = [[0] * off + list(row) for row in rank.matrix.tolist()]
    to_z2 = ModuleMap(src, rank.target, cols)
    iso = to_canonical(tgt).inverse()
    return iso @ to_z2


def node_witt(k: FieldDesc, trace: Trace | None = None) -> NodeWitt:
    """W^0..W^3 of the node ring from the two exact sequences.

    Each L_n(R) sits in ``coker(d_(n+1)) -> L_n(R) -> ker(d_n)`` where ``d_n``
    is the boundary ``L^stab_n(R) -> h^(n+1)(Z/2, Z)``.
    """
    t = _trace(trace)
    if not k.is_concrete:
        raise NotTabulated("node_witt needs a concrete field")
    table = node_l_table(k, t)
    pair = tate(k_minus_one(Node(k), t))
    t.apply(Rule.NODE_SEQUENCES)

    def tate_group(j):
        return pair.h0 if j % 2 == 0 else pair.h1

    L = {}
    for n in range(4):
        left, _ = cokernel(_node_boundary(k, table, n + 1, tate_group, t))
        right, _ = kernel(_node_boundary(k, table, n, tate_group, t))
        if left.is_zero:
            L[n] = right
        elif right.is_zero:
            L[n] = left
        elif n == 0:
            t.apply(Rule.NODE_SPLITTING)
            L[n] = direct_sum(left, right)
        else:
            raise WittCalcError(f"unresolved extension for L_{n} of the node")
    return NodeWitt(tuple(L[(-r) % 4] for r in range(4)))


def node_laurent_witt(k: FieldDesc, trace: Trace | None = None) -> NodeWitt:
    """W^r(R[t,1/t]) = W^r(R) + L^stab_(-r)(R) for the node ring R."""
    t = _trace(trace)
    t.apply(Rule.TATE_NK)
    t.apply(Rule.NODE_LAURENT)
    base = node_witt(k, t)
    table = node_l_table(k, t)
    t.apply(Rule.NODE_LAURENT_DEGREE_ONE)
    t.note("degree-one value relies on the same splitting as degree zero")
    return NodeWitt(tuple(direct_sum(base[r], table[-r]) for r in range(4)))


# homotopy invariance

def _strip(x: SchemeExpr) -> SchemeExpr:
    while isinstance(x, (VectorBundleOver, AffineSpace)):
        x = x.base
    return x


def homotopy_invariance(target, r: int | None = None, trace: Trace | None = None) -> GroupExpr:
    """Replace bundles by their base in every homotopy invariant atom.

    ``target`` is a GroupExpr, or a scheme together with ``r`` meaning W^r.
    """
    t = _trace(trace)
    if isinstance(target, SchemeExpr):
        target = GroupExpr.of(_w(target, r or 0))
    atoms = []
    for a in target.atoms:
        base = _strip(a.scheme)
        if base is not a.scheme:
            if a.kind in ("W", "Whigh", "Wco", "KH"):
                t.apply(Rule.HOMOTOPY_INVARIANCE)
                a = Atom(a.kind, base, a.r, a.i, a.n)
            elif a.kind in ("K", "GW") and base.is_regular:
                t.apply(Rule.REGULAR_HOMOTOPY_INVARIANCE)
                a = Atom(a.kind, base, a.r, a.i, a.n)
        atoms.append(a)
    return GroupExpr(tuple(atoms), target.concrete)


# K-theory, GW and higher Witt groups of X x C_n

def k_theory_punctured(x: SchemeExpr, n: int, i: int | None, mode: str = "K",
                       trace: Trace | None = None) -> GroupExpr:
    t = _trace(trace)
    if mode == "KH":
        t.apply(Rule.KH_PUNCTURED)
        return GroupExpr.of(Atom("KH", x, i=i), Atom("KH", x, i=None if i is None else i - 1))
    if mode != "K":
        raise ValueError("mode is K or KH")
    t.apply(Rule.K_PUNCTURED)
    out = GroupExpr.of(Atom("K", x, i=i), Atom("K", x, i=None if i is None else i - 1))
    if x.is_regular:
        t.apply(Rule.RELATIVE_REGULAR)
        return out
    return out + Atom("Krel_V", x, i=i, n=n) + Atom("Krel_A", x, i=i, n=n)


def gw_punctured(x: SchemeExpr, n: int, r: int, i: int | None,
                 trace: Trace | None = None) -> GroupExpr:
    """GW^[r]_i(x) + GW^[r-n]_(i-1)(x) and, unless x is regular, two relative atoms."""
    t = _trace(trace)
    t.apply(Rule.GW_PUNCTURED)
    out = GroupExpr.of(Atom("GW", x, r=r, i=i), Atom("GW", x, r=r - n, i=None if i is None else i - 1))
    if x.is_regular:
        t.apply(Rule.RELATIVE_REGULAR)
        return out
    return out + Atom("GWrel_V", x, r=r, i=i, n=n) + Atom("GWrel_A", x, r=r, i=i, n=n)


def higher_witt_punctured(x: SchemeExpr, n: int, r: int, i: int, co: bool = False,
                          trace: Trace | None = None) -> GroupExpr:
    """W^[r]_i(x) + W^[r-n]_(i-1)(x), or the coWitt analogue."""
    t = _trace(trace)
    t.apply(Rule.HIGHER_WITT_PUNCTURED)
    t.apply(Rule.HIGHER_WITT_PERIODIC)
    kind = "Wco" if co else "Whigh"
    return GroupExpr.of(Atom(kind, x, r=r, i=i), Atom(kind, x, r=r - n, i=i - 1)).normalize()


# projective spaces

def _k_copies(x: SchemeExpr, m: int, degree: int | None) -> GroupExpr:
    return GroupExpr(tuple(Atom("K", x, i=degree) for _ in range(m)))


def _gw_table(x, n, twist, r, degree):
    gw = lambda s: Atom("GW", x, r=s, i=degree)
    if n % 2 == 0 and twist % 2 == 0:
        return GroupExpr.of(gw(r)) + _k_copies(x, n // 2, degree)
    if n % 2 == 1 and twist % 2 == 1:
        return _k_copies(x, (n + 1) // 2, degree)
    if n % 2 == 1:
        return GroupExpr.of(gw(r), gw(r - n)) + _k_copies(x, (n - 1) // 2, degree)
    return GroupExpr.of(gw(r - n)) + _k_copies(x, n // 2, degree)


def _semi_orthogonal(x, n, r, degree, t):
    """Pieces O(0), ..., O(-n) under the duality a -> n - a."""
    t.apply(Rule.SEMI_ORTHOGONAL)
    out = _k_copies(x, (n + 1) // 2, degree)
    if n % 2 == 0:
        out = out + Atom("GW", x, r=r, i=degree)
    return out


def _gw_fibration(x, n, twist, r, degree, t):
    if n < 0:
        return GroupExpr.zero()
    if (twist - n) % 2 == 0:
        return _semi_orthogonal(x, n, r, degree, t)
    t.apply(Rule.GW_PROJECTIVE_FIBRATION)
    return GroupExpr.of(Atom("GW", x, r=r - n, i=degree)) + _gw_fibration(x, n - 1, twist, r, degree, t)


def gw_projective(x: SchemeExpr, n: int, twist: int, r: int, degree: int | None = None,
                  method: str = "table", trace: Trace | None = None) -> GroupExpr:
    """GW^[r](P^n_x; O(twist)), optionally in homotopy degree ``degree``.

    ``method="table"`` reads the parity table; ``method="fibration"`` splits
    off one GW^[r-n] summand per step and ends in a semi-orthogonal model.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    t = _trace(trace)
    t.apply(Rule.TWIST_PARITY)
    if method == "table":
        t.apply(Rule.GW_PROJECTIVE_TABLE)
        return _gw_table(x, n, twist, r, degree).normalize()
    if method == "fibration":
        return _gw_fibration(x, n, twist, r, degree, t).normalize()
    raise ValueError("method is 'table' or 'fibration'")


def gw_projective_fibration_view(x: SchemeExpr, n: int, twist: int, r: int,
                                 degree: int | None = None) -> dict:
    """The three terms of the split fibration for ``P^n`` with twist ``1 - n``."""
    if (twist - 1 + n) % 2:
        raise ValueError("the split fibration needs twist = 1 - n mod 2")
    fibre = GroupExpr.of(Atom("GW", x, r=r - n, i=degree))
    base = gw_projective(x, n - 1, twist, r, degree) if n >= 1 else GroupExpr.zero()
    return {"fibre": fibre, "total": gw_projective(x, n, twist, r, degree), "base": base}


# general evaluators

def _expand(g: GroupExpr, t: Trace) -> GroupExpr:
    """Evaluate atoms whose scheme can still be rewritten."""
    out = GroupExpr((), g.concrete)
    for a in g.atoms:
        if isinstance(a.scheme, (Field, Node, Symbolic)) or a.kind not in EVALUATORS:
            out = out + a
        else:
            out = out + EVALUATORS[a.kind](a, t)
    return out.normalize()


def gw_group(x: SchemeExpr, r: int, i: int | None, trace: Trace | None = None) -> GroupExpr:
    t = _trace(trace)
    if isinstance(x, PuncturedAffine):
        return _expand(gw_punctured(x.base, x.n, r, i, t), t)
    if isinstance(x, ProjSpace):
        return _expand(gw_projective(x.base, x.n, x.twist, r, i, trace=t), t)
    if isinstance(x, (VectorBundleOver, AffineSpace)) and x.is_regular:
        t.apply(Rule.REGULAR_HOMOTOPY_INVARIANCE)
        return gw_group(_strip(x), r, i, t)
    return GroupExpr.of(Atom("GW", x, r=r, i=i))


def k_group(x: SchemeExpr, i: int | None, mode: str = "K", trace: Trace | None = None) -> GroupExpr:
    t = _trace(trace)
    if isinstance(x, Field):
        if x.field.is_concrete and i is not None:
            t.apply(Rule.K_FIELD_TABLE)
            v = x.field.k_group(i)
            if v is not None:
                return GroupExpr.of(v)
        return GroupExpr.of(Atom(mode, x, i=i))
    if isinstance(x, Node) and i is not None:
        if mode == "KH" and x.field.is_concrete:
            # KH(R) = KH(k) + Omega KH(k)
            t.apply(Rule.K_NEG_NODE)
            return k_group(Field(x.field), i, "K", t) + k_group(Field(x.field), i + 1, "K", t)
        if i < 0:
            t.apply(Rule.K_NEG_NODE)
            return GroupExpr.of(FgModule.free(1) if i == -1 else FgModule.zero())
    if isinstance(x, PuncturedAffine):
        return _expand(k_theory_punctured(x.base, x.n, i, mode, t), t)
    if isinstance(x, (VectorBundleOver, AffineSpace)) and (mode == "KH" or x.is_regular):
        rule = Rule.HOMOTOPY_INVARIANCE if mode == "KH" else Rule.REGULAR_HOMOTOPY_INVARIANCE
        t.apply(rule)
        return k_group(_strip(x), i, mode, t)
    if mode == "K" and i is not None and i < 0 and x.is_regular:
        t.apply(Rule.K_NEG_REGULAR)
        return GroupExpr.zero()
    return GroupExpr.of(Atom(mode, x, i=i))


def higher_witt_group(x: SchemeExpr, r: int, i: int, co: bool = False,
                      trace: Trace | None = None) -> GroupExpr:
    t = _trace(trace)
    kind = "Wco" if co else "Whigh"
    if isinstance(x, PuncturedAffine):
        return _expand(higher_witt_punctured(x.base, x.n, r, i, co, t), t)
    if isinstance(x, (VectorBundleOver, AffineSpace)):
        t.apply(Rule.HOMOTOPY_INVARIANCE)
        return higher_witt_group(_strip(x), r, i, co, t)
    return GroupExpr.of(Atom(kind, x, r=r, i=i)).normalize()


EVALUATORS = {
    "W": lambda a, t: witt_group(a.scheme, a.r, t),
    "GW": lambda a, t: gw_group(a.scheme, a.r, a.i, t),
    "K": lambda a, t: k_group(a.scheme, a.i, "K", t),
    "KH": lambda a, t: k_group(a.scheme, a.i, "KH", t),
    "Whigh": lambda a, t: higher_witt_group(a.scheme, a.r, a.i, False, t),
    "Wco": lambda a, t: higher_witt_group(a.scheme, a.r, a.i, True, t),
}


def evaluate(atom: Atom, trace: Trace | None = None) -> GroupExpr:
    """Evaluate a single group query such as W^0(F5 x Gm)."""
    t = _trace(trace)
    if atom.kind not in EVALUATORS:
        raise NotTabulated(f"cannot evaluate {atom}")
    return EVALUATORS[atom.kind](atom, t).normalize()
