"""Finitely generated modules over Z and Z[1/2].

A module is presented as the cokernel of an integer relation matrix: with
``c`` generators, each row of the relation matrix is a vector in Z^c and the
module is Z^c modulo the row span.  Module elements are column vectors, so a
map ``A -> B`` is a ``B.ngens x A.ngens`` integer matrix.

Over ``Z[1/2]`` the relation lattice is saturated at 2 on construction (any
vector some power of two of which is a relation becomes a relation).  The
stored Z-module then has no 2-torsion, and since inverting 2 is exact every
kernel, cokernel and homology computed over Z localizes to the right answer.

>>> M = FgModule([[2, 0, 0], [0, 0, 0]], ngens=3)
>>> str(M)
'Z^2 + Z/2'
>>> str(FgModule([[12]], base_ring=ZHALF))
'Z/3'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

import numpy as np

Z = "Z"
ZHALF = "Z-half"
BASE_RINGS = (Z, ZHALF)


class ModuleError(ValueError):
    """Malformed module data or an ill-defined operation."""


# ---------------------------------------------------------------------------
# integer matrix helpers (plain lists of Python ints)


def _as_rows(M, ncols: int | None = None) -> list[list[int]]:
    if isinstance(M, np.ndarray):
        if M.ndim != 2:
            raise ModuleError(f"expected a 2-d matrix, got shape {M.shape}")
        rows = [[int(x) for x in row] for row in M.tolist()]
        if ncols is None:
            ncols = M.shape[1]
    else:
        rows = [[int(x) for x in row] for row in M]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != ncols:
            raise ModuleError("ragged matrix")
    return rows


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(A: list[list[int]], B: list[list[int]], inner: int, ncols: int) -> list[list[int]]:
    Bt = list(zip(*B)) if B else [()] * ncols
    if not B:
        return [[0] * ncols for _ in A]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def _transpose(A: list[list[int]], ncols: int) -> list[list[int]]:
    if not A:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*A)]


def _to_array(rows: list[list[int]], nrows: int, ncols: int) -> np.ndarray:
    out = np.zeros((nrows, ncols), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def _odd_part(d: int) -> int:
    d = abs(d)
    if d == 0:
        return 0
    while d % 2 == 0:
        d //= 2
    return d


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with U, V unimodular; inverses carried along."""

    U: list[list[int]]
    D: list[list[int]]
    V: list[list[int]]
    Uinv: list[list[int]]
    Vinv: list[list[int]]
    nrows: int
    ncols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.nrows, self.ncols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_form(M, ncols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix with both transforms and inverses.

    Pivoting picks the entry of least absolute value in the remaining block,
    clears its row and column by Euclidean steps, and restarts whenever the
    pivot fails to divide the rest of the block.
    """
    D = _as_rows(M, ncols)
    m = len(D)
    n = ncols if ncols is not None else (len(D[0]) if D else 0)
    U, Uinv = _identity(m), _identity(m)
    V, Vinv = _identity(n), _identity(n)

    def row_add(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src ; U <- E U, Uinv <- Uinv E^-1
        if q == 0:
            return
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= q * row[dst]

    def row_swap(i: int, j: int) -> None:
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i: int) -> None:
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    def col_add(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src ; V <- V E, Vinv <- E^-1 Vinv
        if q == 0:
            return
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    t = 0
    while t < min(m, n):
        # smallest nonzero pivot in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = D[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # a remainder is now smaller than the pivot; move it in
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, t)
                for j in range(t, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), t, j)
                _, i, j = best
                row_swap(t, i)
                col_swap(t, j)
                continue
            # pivot must divide the whole trailing block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if D[t][t] < 0:
            row_neg(t)
        t += 1
    return SmithForm(U, D, V, Uinv, Vinv, m, n)


def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` in Smith normal form.

    Arbitrary-precision entries; empty matrices are allowed.

    >>> U, D, V = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    >>> [D[i, i] for i in range(3)]
    [2, 2, 156]
    """
    if isinstance(M, np.ndarray):
        m, n = M.shape
    else:
        m = len(M)
        n = len(M[0]) if m else 0
    s = smith_form(M, n)
    return _to_array(s.U, m, m), _to_array(s.D, m, n), _to_array(s.V, n, n)


# ---------------------------------------------------------------------------
# lattices in Z^c (spanned by rows)


def _lattice_basis(rows: list[list[int]], ncols: int, saturate_two: bool = False) -> list[list[int]]:
    """A basis (as rows) of the row span, optionally saturated at 2."""
    if not rows or ncols == 0:
        return []
    s = smith_form(rows, ncols)
    basis = []
    for i, d in enumerate(s.diagonal):
        if d == 0:
            continue
        if saturate_two:
            d = _odd_part(d)
        basis.append([d * x for x in s.Vinv[i]])
    return basis


def _integer_kernel(A: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis (as rows) of {x in Z^ncols : A x = 0}."""
    if not A:
        return _identity(ncols)
    s = smith_form(A, ncols)
    r = s.rank
    Vt = _transpose(s.V, ncols)
    return [Vt[j] for j in range(r, ncols)]


class _LatticeSolver:
    """Membership and coordinates for a lattice given by row generators."""

    def __init__(self, rows: list[list[int]], ncols: int):
        self.ncols = ncols
        self.rows = rows
        if rows and ncols:
            self.snf = smith_form(rows, ncols)
        else:
            self.snf = None

    def coords(self, v: Sequence[int]) -> list[int] | None:
        """Integer y with ``y @ rows == v``, or None when v is not in the span."""
        v = [int(x) for x in v]
        if self.snf is None:
            return [0] * len(self.rows) if not any(v) else None
        s = self.snf
        # rows = Uinv D Vinv, so v = y Uinv D Vinv; put w = v V = (y Uinv) D
        w = [sum(v[k] * s.V[k][j] for k in range(self.ncols)) for j in range(self.ncols)]
        z = [0] * s.nrows
        diag = s.diagonal
        for j in range(self.ncols):
            d = diag[j] if j < len(diag) else 0
            if d == 0:
                if w[j]:
                    return None
            else:
                if w[j] % d:
                    return None
                z[j] = w[j] // d
        return [sum(z[i] * s.U[i][k] for i in range(s.nrows)) for k in range(s.nrows)]

    def contains(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class CanonicalForm:
    """Invariant factors ``d_1 | d_2 | ...`` (each > 1) plus a free rank."""

    free_rank: int
    factors: tuple[int, ...]

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.factors)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "factors": list(self.factors)}

    @property
    def order(self) -> int | None:
        """Cardinality, or None for infinite modules."""
        if self.free_rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out


class FgModule:
    """Z^ngens modulo the row span of ``relations``.

    Immutable; the canonical form is computed lazily and cached.
    """

    def __init__(self, relations=(), ngens: int | None = None, base_ring: str = Z):
        if base_ring not in BASE_RINGS:
            raise ModuleError(f"unknown base ring {base_ring!r}")
        rows = _as_rows(relations, ngens) if len(relations) else []
        if ngens is None:
            if not rows:
                if isinstance(relations, np.ndarray) and relations.ndim == 2:
                    ngens = relations.shape[1]
                else:
                    raise ModuleError("ngens is required when there are no relations")
            else:
                ngens = len(rows[0])
        self.ngens = int(ngens)
        self.base_ring = base_ring
        rows = [r for r in rows if any(r)]
        if base_ring == ZHALF:
            rows = _lattice_basis(rows, self.ngens, saturate_two=True)
        self._relations = tuple(tuple(r) for r in rows)

    # construction helpers -------------------------------------------------

    @classmethod
    def free(cls, rank: int, base_ring: str = Z) -> "FgModule":
        return cls([], ngens=rank, base_ring=base_ring)

    @classmethod
    def zero(cls, base_ring: str = Z) -> "FgModule":
        return cls([], ngens=0, base_ring=base_ring)

    @classmethod
    def cyclic(cls, d: int, base_ring: str = Z) -> "FgModule":
        """Z/d (Z for d == 0)."""
        return cls([[d]], ngens=1, base_ring=base_ring)

    @classmethod
    def from_invariants(cls, factors: Iterable[int], free_rank: int = 0, base_ring: str = Z) -> "FgModule":
        factors = list(factors)
        n = len(factors) + free_rank
        rows = [[d if j == i else 0 for j in range(n)] for i, d in enumerate(factors)]
        return cls(rows, ngens=n, base_ring=base_ring)

    # data -----------------------------------------------------------------

    @property
    def relations(self) -> np.ndarray:
        return _to_array([list(r) for r in self._relations], len(self._relations), self.ngens)

    def _relation_rows(self) -> list[list[int]]:
        return [list(r) for r in self._relations]

    @cached_property
    def _solver(self) -> _LatticeSolver:
        return _LatticeSolver(self._relation_rows(), self.ngens)

    @cached_property
    def _snf(self) -> SmithForm | None:
        if not self._relations:
            return None
        return smith_form(self._relation_rows(), self.ngens)

    @cached_property
    def canonical_form(self) -> CanonicalForm:
        s = self._snf
        diag = s.diagonal if s else []
        torsion = []
        for d in diag:
            if self.base_ring == ZHALF:
                d = _odd_part(d)
            if d not in (0, 1):
                torsion.append(abs(d))
        nonzero = sum(1 for d in diag if d)
        return CanonicalForm(self.ngens - nonzero, tuple(torsion))

    def is_zero_element(self, v: Sequence[int]) -> bool:
        return self._solver.contains(v)

    @property
    def is_zero(self) -> bool:
        cf = self.canonical_form
        return cf.free_rank == 0 and not cf.factors

    @property
    def order(self) -> int | None:
        return self.canonical_form.order

    def elements(self) -> list[tuple[int, ...]]:
        """Reduced representatives of every element (finite modules only)."""
        cf = self.canonical_form
        if cf.free_rank:
            raise ModuleError("infinite module")
        iso = to_canonical(self)
        out = [()]
        for d in cf.factors:
            out = [e + (k,) for e in out for k in range(d)]
        back = iso.inverse()
        return [tuple(back.apply(list(e))) for e in out]

    def __str__(self) -> str:
        return str(self.canonical_form)

    def __repr__(self) -> str:
        tag = "" if self.base_ring == Z else f", base_ring={self.base_ring!r}"
        return f"FgModule<{self}{tag}>"

    def to_json(self) -> dict:
        return self.canonical_form.to_json()

    @classmethod
    def from_json(cls, data: dict) -> "FgModule":
        base_ring = data.get("base_ring", Z)
        if "relations" in data:
            rel = data["relations"]
            return cls(rel, ngens=data.get("ngens", len(rel[0]) if rel else 0), base_ring=base_ring)
        return cls.from_invariants(data.get("factors", []), data.get("free_rank", 0), base_ring)


def canonicalize(m: FgModule) -> CanonicalForm:
    return m.canonical_form


class ModuleMap:
    """A homomorphism given by an integer matrix on generators (column vectors)."""

    def __init__(self, source: FgModule, target: FgModule, matrix=None, check: bool = True):
        if source.base_ring != target.base_ring:
            raise ModuleError("source and target have different base rings")
        self.source = source
        self.target = target
        if matrix is None:
            rows = [[0] * source.ngens for _ in range(target.ngens)]
        else:
            rows = _as_rows(matrix, source.ngens) if target.ngens else []
        if len(rows) != target.ngens:
            raise ModuleError(f"matrix has {len(rows)} rows, target has {target.ngens} generators")
        self._rows = tuple(tuple(r) for r in rows)
        if check and not self.is_well_defined():
            raise ModuleError("matrix does not send relations to relations")

    @property
    def matrix(self) -> np.ndarray:
        return _to_array(self._mat(), self.target.ngens, self.source.ngens)

    def _mat(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, v)) for row in self._rows]

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero_element(self.apply(r)) for r in self.source._relations)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(self.apply(col)) for col in _identity(self.source.ngens))

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self o other``."""
        if other.target.ngens != self.source.ngens:
            raise ModuleError("cannot compose: generator counts differ")
        A = _matmul(self._mat(), other._mat(), self.source.ngens, other.source.ngens)
        return ModuleMap(other.source, self.target, A if A else None, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        A = [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        return ModuleMap(self.source, self.target, A if A else None, check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        A = [[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        return ModuleMap(self.source, self.target, A if A else None, check=False)

    def __neg__(self) -> "ModuleMap":
        A = [[-a for a in r] for r in self._rows]
        return ModuleMap(self.source, self.target, A if A else None, check=False)

    def equals(self, other: "ModuleMap") -> bool:
        """Equality as homomorphisms (values agree modulo target relations)."""
        return (self - other).is_zero()

    def inverse(self) -> "ModuleMap":
        """Inverse of an isomorphism, found by solving in the target lattice."""
        # for each target generator e_j find x with f(x) - e_j in target relations
        src, tgt = self.source, self.target
        cols = self._mat()
        gens = _transpose(cols, src.ngens) if cols else [[] for _ in range(src.ngens)]
        # lattice generated by images of source generators and target relations
        rows = gens + tgt._relation_rows()
        solver = _LatticeSolver(rows, tgt.ngens)
        inv_cols = []
        for e in _identity(tgt.ngens):
            y = solver.coords(e)
            if y is None:
                raise ModuleError("map is not surjective")
            inv_cols.append(y[: src.ngens])
        M = _transpose(inv_cols, src.ngens) if inv_cols else [[] for _ in range(src.ngens)]
        inv = ModuleMap(tgt, src, M if src.ngens else None, check=True)
        if not (inv @ self).equals(identity(src)):
            raise ModuleError("map is not injective")
        return inv


def identity(m: FgModule) -> ModuleMap:
    return ModuleMap(m, m, _identity(m.ngens) if m.ngens else None, check=False)


def zero_map(a: FgModule, b: FgModule) -> ModuleMap:
    return ModuleMap(a, b, None, check=False)


def scalar_map(m: FgModule, c: int) -> ModuleMap:
    return ModuleMap(m, m, [[c * x for x in row] for row in _identity(m.ngens)] or None, check=False)


def _check_same_ring(*mods: FgModule) -> str:
    rings = {m.base_ring for m in mods}
    if len(rings) > 1:
        raise ModuleError(f"mismatched base rings: {sorted(rings)}")
    return rings.pop()


def to_canonical(m: FgModule) -> ModuleMap:
    """Isomorphism from ``m`` onto its standard presentation Z^f + Z/d_1 + ..."""
    cf = m.canonical_form
    std = FgModule.from_invariants(cf.factors, cf.free_rank, m.base_ring)
    s = m._snf
    if s is None:
        return ModuleMap(m, std, _identity(m.ngens) or None, check=False)
    # x -> V^T x puts the relation lattice in diagonal form
    Vt = _transpose(s.V, m.ngens)
    diag = s.diagonal + [0] * (m.ngens - len(s.diagonal))
    keep_torsion, keep_free = [], []
    for i, d in enumerate(diag):
        dd = _odd_part(d) if m.base_ring == ZHALF else abs(d)
        if d == 0:
            keep_free.append(i)
        elif dd != 1:
            keep_torsion.append(i)
    rows = [Vt[i] for i in keep_torsion + keep_free]
    return ModuleMap(m, std, rows if rows else None, check=True)


def is_isomorphic(a: FgModule, b: FgModule) -> bool:
    _check_same_ring(a, b)
    return a.canonical_form == b.canonical_form


def direct_sum(*mods: FgModule) -> FgModule:
    if not mods:
        return FgModule.zero()
    ring = _check_same_ring(*mods)
    n = sum(m.ngens for m in mods)
    rows = []
    off = 0
    for m in mods:
        for r in m._relations:
            rows.append([0] * off + list(r) + [0] * (n - off - m.ngens))
        off += m.ngens
    return FgModule(rows, ngens=n, base_ring=ring)


def block_diagonal(*maps: ModuleMap) -> ModuleMap:
    """The direct sum of maps, between the direct sums of sources and targets."""
    src = direct_sum(*(f.source for f in maps))
    tgt = direct_sum(*(f.target for f in maps))
    rows = []
    col = 0
    for f in maps:
        for r in f._rows:
            rows.append([0] * col + list(r) + [0] * (src.ngens - col - f.source.ngens))
        col += f.source.ngens
    return ModuleMap(src, tgt, rows or None, check=False)


# ---------------------------------------------------------------------------
# kernel / cokernel / homology


def _preimage_lattice(f: ModuleMap) -> list[list[int]]:
    """Basis of {x in Z^a : f(x) in relations(B)} as rows."""
    a = f.source.ngens
    b = f.target.ngens
    RB = f.target._relation_rows()
    # solve A x - R_B^T y = 0 on Z^(a + r)
    A = f._mat()
    M = [list(A[i]) + [-R[i] for R in RB] for i in range(b)]
    K = _integer_kernel(M, a + len(RB))
    L = [row[:a] for row in K]
    return _lattice_basis(L, a)


def _subquotient(gens: list[list[int]], ambient: int, rel_rows: list[list[int]], base_ring: str):
    """Module spanned by ``gens`` (rows, a basis) modulo ``rel_rows`` (which lie in that span).

    Returns the module and the column-matrix of the inclusion of generators.
    """
    k = len(gens)
    solver = _LatticeSolver(gens, ambient)
    coords = []
    for r in rel_rows:
        y = solver.coords(r)
        if y is None:
            raise ModuleError("relation not contained in the subgroup")
        coords.append(y)
    mod = FgModule(coords, ngens=k, base_ring=base_ring)
    incl = _transpose(gens, ambient) if gens else [[] for _ in range(ambient)]
    return mod, incl


def kernel(f: ModuleMap) -> tuple[FgModule, ModuleMap]:
    """Kernel of ``f`` with its inclusion into the source."""
    src = f.source
    L = _preimage_lattice(f)
    rel = src._relation_rows()
    K, incl = _subquotient(L, src.ngens, rel, src.base_ring)
    return K, ModuleMap(K, src, incl if src.ngens else None, check=True)


def image_lattice(f: ModuleMap) -> list[list[int]]:
    cols = _transpose(f._mat(), f.source.ngens) if f.target.ngens else []
    return cols


def cokernel(f: ModuleMap) -> tuple[FgModule, ModuleMap]:
    """Cokernel of ``f`` with the projection from the target."""
    tgt = f.target
    rows = tgt._relation_rows() + image_lattice(f)
    C = FgModule(rows, ngens=tgt.ngens, base_ring=tgt.base_ring)
    return C, ModuleMap(tgt, C, _identity(tgt.ngens) or None, check=True)


def image(f: ModuleMap) -> FgModule:
    """Image of ``f`` as a submodule of the target."""
    tgt = f.target
    R = tgt._relation_rows()
    gens = _lattice_basis(image_lattice(f) + R, tgt.ngens)
    mod, _ = _subquotient(gens, tgt.ngens, R, tgt.base_ring)
    return mod


def homology_at(f: ModuleMap, g: ModuleMap) -> FgModule:
    """ker(f) / im(g) for ``g: A -> M`` and ``f: M -> B`` with ``f o g == 0``.

    >>> Z1 = FgModule.free(1)
    >>> str(homology_at(scalar_map(Z1, 2), zero_map(Z1, Z1)))
    '0'
    """
    if g.target.ngens != f.source.ngens:
        raise ModuleError("maps are not composable")
    if not (f @ g).is_zero():
        raise ModuleError("f o g is not zero")
    M = f.source
    L = _preimage_lattice(f)
    rel = M._relation_rows() + image_lattice(g)
    H, _ = _subquotient(L, M.ngens, rel, M.base_ring)
    return H
