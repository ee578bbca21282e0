"""Symmetric forms on complexes and the Koszul complexes carrying them.

A form on ``C`` with values in ``O(d)[r]`` is stored degreewise as matrices
``B[p]`` of shape ``len(C_p) x len(C_{r-p})``: ``B[p][a][b]`` is the value on
generator ``a`` of ``C_p`` paired with generator ``b`` of ``C_{r-p}``.

Symmetry is taken with respect to the Koszul swap
``x (x) y -> (-1)^(|x||y|) y (x) x``.
"""

from __future__ import annotations

from dataclasses import dataclass

from wittkit.koszul.complexes import (
    ChainMap,
    ComplexError,
    GradedComplex,
    dual,
    matmul,
    tensor,
    tensor_index,
    transpose,
    unit_complex,
    zero_matrix,
)
from wittkit.koszul.poly import QQ, Poly, PolyRing


@dataclass(frozen=True)
class FormedComplex:
    complex: GradedComplex
    twist: int
    shift: int
    form: dict

    def __post_init__(self):
        c, r = self.complex, self.shift
        B = {}
        for p in c.degrees:
            q = r - p
            if q not in c.objects:
                continue
            M = self.form.get(p)
            if M is None:
                M = zero_matrix(c.ring, c.rank(p), c.rank(q))
            if len(M) != c.rank(p) or any(len(row) != c.rank(q) for row in M):
                raise ComplexError(f"form block {p} has the wrong shape")
            B[p] = tuple(tuple(x for x in row) for row in M)
        object.__setattr__(self, "form", B)

    @property
    def ring(self) -> PolyRing:
        return self.complex.ring

    def value(self, p: int, a: int, b: int) -> Poly:
        blk = self.form.get(p)
        if blk is None:
            return self.ring.zero()
        return blk[a][b]

    def target_complex(self) -> GradedComplex:
        return unit_complex(self.ring, self.twist, self.shift)

    def as_chain_map(self) -> ChainMap:
        """The form as a chain map ``C (x) C -> O(d)[r]``."""
        c = self.complex
        T = tensor(c, c)
        idx = tensor_index(c, c)
        comps = {}
        if self.shift in idx:
            row = tuple(self.value(p, a, b) for p, a, b in idx[self.shift])
            comps[self.shift] = (row,)
        return ChainMap(T, self.target_complex(), comps)

    def postcompose(self, factor: Poly, twist_change: int) -> "FormedComplex":
        """Multiply the values by ``factor``, moving them into ``O(d + twist_change)``."""
        B = {p: tuple(tuple(x * factor for x in row) for row in M) for p, M in self.form.items()}
        return FormedComplex(self.complex, self.twist + twist_change, self.shift, B)

    def with_form_block(self, p: int, block) -> "FormedComplex":
        B = dict(self.form)
        B[p] = block
        return FormedComplex(self.complex, self.twist, self.shift, B)


def swap_map(c: GradedComplex) -> ChainMap:
    """Koszul swap ``tau`` on ``C (x) C``."""
    T = tensor(c, c)
    idx = tensor_index(c, c)
    pos = {k: {g: i for i, g in enumerate(gens)} for k, gens in idx.items()}
    ring = c.ring
    comps = {}
    for k, gens in idx.items():
        M = [[ring.zero()] * len(gens) for _ in gens]
        for j, (p, a, b) in enumerate(gens):
            q = k - p
            sign = -1 if (p * q) % 2 else 1
            M[pos[k][(q, b, a)]][j] = ring.const(sign)
        comps[k] = tuple(tuple(r) for r in M)
    return ChainMap(T, T, comps)


def is_symmetric(f: FormedComplex) -> bool:
    """Compare ``form o tau`` with ``form`` as polynomial matrices."""
    phi = f.as_chain_map()
    tau = swap_map(f.complex)
    return phi.compose(tau).equals(phi)


def is_form_chain_map(f: FormedComplex) -> bool:
    return f.as_chain_map().is_chain_map()


def adjoint(f: FormedComplex) -> ChainMap:
    """``x -> B(x, -)`` as a chain map ``C -> dual(C, d, r)``."""
    c = f.complex
    D = dual(c, f.twist, f.shift)
    comps = {}
    for i in c.degrees:
        q = f.shift - i
        if q in c.objects:
            comps[i] = transpose(c.ring, f.form[i], c.rank(i), c.rank(q))
    return ChainMap(c, D, comps)


def tensor_forms(f: FormedComplex, g: FormedComplex) -> FormedComplex:
    """Form on ``C (x) D``: ``(a (x) b, a' (x) b') -> (-1)^(|b||a'|) f(a, a') g(b, b')``."""
    C, D = f.complex, g.complex
    T = tensor(C, D)
    idx = tensor_index(C, D)
    r = f.shift + g.shift
    ring = C.ring
    B = {}
    for k, gens in idx.items():
        if r - k not in idx:
            continue
        rows = []
        for p, a, b in gens:
            q = k - p
            row = []
            for p2, a2, b2 in idx[r - k]:
                q2 = r - k - p2
                if p + p2 != f.shift or q + q2 != g.shift:
                    row.append(ring.zero())
                    continue
                sign = -1 if (q * p2) % 2 else 1
                row.append(f.value(p, a, a2) * g.value(q, b, b2) * sign)
            rows.append(tuple(row))
        B[k] = tuple(rows)
    return FormedComplex(T, f.twist + g.twist, r, B)


def unit_form(ring: PolyRing) -> FormedComplex:
    """``b_0 = O`` with ``x (x) y -> xy``."""
    return FormedComplex(unit_complex(ring), 0, 0, {0: ((ring.one(),),)})


def beta(i: int, n: int | None = None, field=QQ, middle=(1, 1)) -> FormedComplex:
    """``T_i: O(-1) -> O`` with O in degree 0 and its form into ``O(-1)[1]``.

    ``middle`` is the form on the degree-1 part of the tensor square, ordered
    as (O (x) O(-1), O(-1) (x) O); the default ``(1, 1)`` is the symmetric one.
    """
    n = i if n is None else n
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    ring = PolyRing.projective(n, field)
    T = ring.var(f"T{i}")
    c = GradedComplex(ring, {0: (0,), 1: (-1,)}, {1: ((T,),)}, {0: ((0,),), 1: ((1,),)})
    one = ring.one()
    B = {0: ((one * middle[0],),), 1: ((one * middle[1],),)}
    return FormedComplex(c, -1, 1, B)


def koszul_product(n: int, field=QQ) -> FormedComplex:
    """``beta_1 (x) ... (x) beta_n`` with the product form in ``O(-n)[n]``."""
    ring = PolyRing.projective(n, field)
    out = unit_form(ring)
    for i in range(1, n + 1):
        out = tensor_forms(out, beta(i, n, field))
    return out


def b_complex(n: int, field=QQ) -> FormedComplex:
    """The Koszul complex on ``T_1..T_n`` over ``k[T_0..T_n]`` with its form
    into ``O(1-n)[n]`` (product form followed by multiplication by ``T_0``).

    ``n = 0`` gives the unit form.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return unit_form(PolyRing.projective(0, field))
    f = koszul_product(n, field)
    return f.postcompose(f.ring.var("T0"), 1)
