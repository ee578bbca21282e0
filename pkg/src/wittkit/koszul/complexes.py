"""Bounded chain complexes of sums of twists O(t) over a polynomial ring.

Homological indexing: the differential in degree ``k`` goes ``C_k -> C_{k-1}``
and is stored as a ``len(C_{k-1}) x len(C_k)`` matrix of polynomials.  An
entry from a generator of twist ``s`` to one of twist ``t`` is homogeneous of
degree ``t - s``.

Sign conventions, fixed once:

* tensor: ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``;
* dual with values in ``O(d)[r]``: degree ``i`` is the dual of degree ``r - i``
  twisted by ``d``, differential the transpose times ``(-1)^(i+1)``;
* chain map of degree ``s``: ``d f = (-1)^s f d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from wittkit.koszul.poly import Poly, PolyRing


class ComplexError(ValueError):
    pass


Matrix = tuple  # tuple of rows, each a tuple of Poly


def zero_matrix(ring: PolyRing, rows: int, cols: int) -> Matrix:
    z = ring.zero()
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity_matrix(ring: PolyRing, n: int, scale=1) -> Matrix:
    z, one = ring.zero(), ring.const(scale)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def matmul(ring: PolyRing, A: Matrix, B: Matrix, inner: int, cols: int) -> Matrix:
    rows = []
    for row in A:
        out = []
        for j in range(cols):
            acc = ring.zero()
            for k in range(inner):
                a = row[k]
                if a.terms:
                    b = B[k][j]
                    if b.terms:
                        acc = acc + a * b
            out.append(acc)
        rows.append(tuple(out))
    return tuple(rows)


def matadd(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def matscale(A: Matrix, c) -> Matrix:
    return tuple(tuple(a * c for a in r) for r in A)


def transpose(ring: PolyRing, A: Matrix, rows: int, cols: int) -> Matrix:
    return tuple(tuple(A[i][j] for i in range(rows)) for j in range(cols))


def is_zero_matrix(A: Matrix) -> bool:
    return all(not a.terms for r in A for a in r)


def map_entries(A: Matrix, fn: Callable[[Poly], Poly]) -> Matrix:
    return tuple(tuple(fn(a) for a in r) for r in A)


@dataclass(frozen=True)
class GradedComplex:
    """``objects[k]`` lists the twists of the generators in homological degree k.

    ``labels[k]`` optionally names the generators (tensor products concatenate
    labels).  ``graded=False`` marks complexes obtained by setting a variable
    to 1, for which homogeneity is no longer meaningful.
    """

    ring: PolyRing
    objects: dict
    differentials: dict
    labels: dict | None = None
    graded: bool = True
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        objs = {int(k): tuple(v) for k, v in self.objects.items() if len(v)}
        object.__setattr__(self, "objects", objs)
        diffs = {}
        for k in self.degrees:
            if k - 1 in objs:
                M = self.differentials.get(k)
                if M is None:
                    M = zero_matrix(self.ring, len(objs[k - 1]), len(objs[k]))
                M = tuple(tuple(x for x in r) for r in M)
                if len(M) != len(objs[k - 1]) or any(len(r) != len(objs[k]) for r in M):
                    raise ComplexError(f"differential in degree {k} has the wrong shape")
                diffs[k] = M
        object.__setattr__(self, "differentials", diffs)
        if self.labels is not None:
            object.__setattr__(self, "labels", {k: tuple(self.labels[k]) for k in objs})
        if self.check:
            if self.graded:
                bad = self.homogeneity_errors()
                if bad:
                    raise ComplexError(f"inhomogeneous differential entries: {bad[:3]}")
            if not self.d_squared_zero():
                raise ComplexError("d o d != 0")

    # structure -------------------------------------------------------------

    @property
    def degrees(self) -> list[int]:
        return sorted(self.objects)

    def rank(self, k: int) -> int:
        return len(self.objects.get(k, ()))

    def d(self, k: int) -> Matrix:
        """Differential ``C_k -> C_{k-1}`` (a zero matrix when absent)."""
        if k in self.differentials:
            return self.differentials[k]
        return zero_matrix(self.ring, self.rank(k - 1), self.rank(k))

    def label(self, k: int, j: int):
        if self.labels is None:
            return None
        return self.labels[k][j]

    def homogeneity_errors(self) -> list:
        bad = []
        for k, M in self.differentials.items():
            src, tgt = self.objects[k], self.objects[k - 1]
            for i, row in enumerate(M):
                for j, p in enumerate(row):
                    if not p.is_homogeneous(tgt[i] - src[j]):
                        bad.append((k, i, j, str(p)))
        return bad

    def d_squared_zero(self) -> bool:
        for k in self.degrees:
            if k - 2 in self.objects and k - 1 in self.objects:
                prod = matmul(self.ring, self.d(k - 1), self.d(k), self.rank(k - 1), self.rank(k))
                if not is_zero_matrix(prod):
                    return False
        return True

    def euler_characteristic(self) -> int:
        """Alternating rank sum (the class in K_0 of a point)."""
        return sum((-1) ** k * self.rank(k) for k in self.degrees)

    def ranks(self) -> dict:
        return {k: self.rank(k) for k in self.degrees}

    def with_field(self, field) -> "GradedComplex":
        ring = self.ring.with_field(field)
        diffs = {k: map_entries(M, lambda p: p.change_field(field)) for k, M in self.differentials.items()}
        return GradedComplex(ring, self.objects, diffs, self.labels, self.graded)

    # serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": {"field": self.ring.field.name, "vars": list(self.ring.names)},
            "objects": {str(k): list(v) for k, v in self.objects.items()},
            "differentials": {str(k): [[str(p) for p in row] for row in M] for k, M in self.differentials.items()},
            "graded": self.graded,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GradedComplex":
        from wittkit.koszul.poly import field_from_name

        ring = PolyRing(field_from_name(data["ring"]["field"]), data["ring"]["vars"])
        objects = {int(k): v for k, v in data["objects"].items()}
        diffs = {int(k): tuple(tuple(ring.parse(s) for s in row) for row in M)
                 for k, M in data.get("differentials", {}).items()}
        return cls(ring, objects, diffs, graded=data.get("graded", True))


def unit_complex(ring: PolyRing, twist: int = 0, degree: int = 0, label=()) -> GradedComplex:
    """A single O(twist) placed in homological degree ``degree``."""
    return GradedComplex(ring, {degree: (twist,)}, {}, {degree: (label,)})


@dataclass(frozen=True)
class ChainMap:
    source: GradedComplex
    target: GradedComplex
    components: dict
    degree: int = 0

    def __post_init__(self):
        comps = {}
        for k in self.source.degrees:
            rows = self.target.rank(k + self.degree)
            M = self.components.get(k)
            if M is None:
                M = zero_matrix(self.source.ring, rows, self.source.rank(k))
            if len(M) != rows or any(len(r) != self.source.rank(k) for r in M):
                raise ComplexError(f"chain map component {k} has the wrong shape")
            comps[k] = tuple(tuple(r) for r in M)
        object.__setattr__(self, "components", comps)

    def f(self, k: int) -> Matrix:
        if k in self.components:
            return self.components[k]
        return zero_matrix(self.source.ring, self.target.rank(k + self.degree), self.source.rank(k))

    def is_chain_map(self) -> bool:
        ring = self.source.ring
        s = self.degree
        sign = -1 if s % 2 else 1
        for k in set(self.source.degrees) | {k + 1 for k in self.source.degrees}:
            # d_T f_k versus sign * f_{k-1} d_S, both C_k -> T_{k+s-1}
            lhs = matmul(ring, self.target.d(k + s), self.f(k), self.target.rank(k + s), self.source.rank(k))
            rhs = matmul(ring, self.f(k - 1), self.source.d(k), self.source.rank(k - 1), self.source.rank(k))
            if lhs != matscale(rhs, sign):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        ring = self.source.ring
        comps = {}
        for k in other.source.degrees:
            mid = k + other.degree
            comps[k] = matmul(ring, self.f(mid), other.f(k), self.source.rank(mid), other.source.rank(k))
        return ChainMap(other.source, self.target, comps, self.degree + other.degree)

    def equals(self, other: "ChainMap") -> bool:
        return all(self.f(k) == other.f(k) for k in self.source.degrees)

    def is_isomorphism(self) -> bool:
        """Degreewise invertible with constant (unit) determinant, checked by elimination."""
        from wittkit.koszul.homology import constant_matrix_rank

        for k in self.source.degrees:
            n = self.source.rank(k)
            if self.target.rank(k + self.degree) != n:
                return False
            M = self.f(k)
            consts = [[p.constant() for p in row] for row in M]
            if any(c is None for row in consts for c in row):
                return False
            if constant_matrix_rank(consts, self.source.ring.field) != n:
                return False
        return True


def identity_map(c: GradedComplex) -> ChainMap:
    return ChainMap(c, c, {k: identity_matrix(c.ring, c.rank(k)) for k in c.degrees})


def _require_same_ring(c: GradedComplex, d: GradedComplex) -> None:
    if c.ring != d.ring:
        raise ComplexError(f"ring mismatch: {c.ring!r} vs {d.ring!r}")


def tensor_index(c: GradedComplex, d: GradedComplex) -> dict:
    """Basis of ``(c (x) d)_k`` as lists of ``(p, a, b)``, ordered by p then a then b."""
    out = {}
    for p in c.degrees:
        for q in d.degrees:
            out.setdefault(p + q, [])
    for k in out:
        for p in c.degrees:
            q = k - p
            if q in d.objects:
                for a in range(c.rank(p)):
                    for b in range(d.rank(q)):
                        out[k].append((p, a, b))
    return out


def tensor(c: GradedComplex, d: GradedComplex) -> GradedComplex:
    _require_same_ring(c, d)
    ring = c.ring
    idx = tensor_index(c, d)
    pos = {k: {g: i for i, g in enumerate(gens)} for k, gens in idx.items()}
    objects = {k: [c.objects[p][a] + d.objects[k - p][b] for p, a, b in gens] for k, gens in idx.items()}
    labels = None
    if c.labels is not None and d.labels is not None:
        labels = {k: [tuple(c.labels[p][a]) + tuple(d.labels[k - p][b]) for p, a, b in gens]
                  for k, gens in idx.items()}
    diffs = {}
    for k, gens in idx.items():
        if k - 1 not in idx:
            continue
        rows = [[ring.zero() for _ in gens] for _ in idx[k - 1]]
        for j, (p, a, b) in enumerate(gens):
            q = k - p
            if p - 1 in c.objects:
                dc = c.d(p)
                for a2 in range(c.rank(p - 1)):
                    e = dc[a2][a]
                    if e.terms:
                        rows[pos[k - 1][(p - 1, a2, b)]][j] += e
            if q - 1 in d.objects:
                dd = d.d(q)
                sign = -1 if p % 2 else 1
                for b2 in range(d.rank(q - 1)):
                    e = dd[b2][b]
                    if e.terms:
                        rows[pos[k - 1][(p, a, b2)]][j] += e * sign
        diffs[k] = tuple(tuple(r) for r in rows)
    graded = c.graded and d.graded
    return GradedComplex(ring, objects, diffs, labels, graded)


def dual(c: GradedComplex, twist: int = 0, shift: int = 0) -> GradedComplex:
    """Dual with values in ``O(twist)[shift]``."""
    ring = c.ring
    objects = {shift - k: [twist - t for t in c.objects[k]] for k in c.degrees}
    labels = None if c.labels is None else {shift - k: c.labels[k] for k in c.degrees}
    diffs = {}
    for i in objects:
        if i - 1 in objects:
            src_k = shift - i + 1  # d^c_{src_k}: c_{src_k} -> c_{src_k - 1} = c_{shift - i}
            sign = 1 if i % 2 else -1
            D = c.d(src_k)
            diffs[i] = matscale(transpose(ring, D, c.rank(src_k - 1), c.rank(src_k)), sign)
    return GradedComplex(ring, objects, diffs, labels, c.graded)


def double_dual_map(c: GradedComplex, twist: int = 0, shift: int = 0) -> ChainMap:
    """Canonical ``c -> dual(dual(c))``: sign ``(-1)^(i(i - r))`` in degree i."""
    dd = dual(dual(c, twist, shift), twist, shift)
    comps = {}
    for i in c.degrees:
        sign = -1 if (i * (i - shift)) % 2 else 1
        comps[i] = identity_matrix(c.ring, c.rank(i), sign)
    return ChainMap(c, dd, comps)


def cone(f: ChainMap) -> GradedComplex:
    """Mapping cone of a degree-0 chain map: ``C_{k-1} + D_k`` with ``(-d, 0; f, d)``."""
    if f.degree != 0:
        raise ComplexError("cone needs a degree-0 chain map")
    S, T = f.source, f.target
    ring = S.ring
    degs = sorted(set(k + 1 for k in S.degrees) | set(T.degrees))
    objects = {k: list(S.objects.get(k - 1, ())) + list(T.objects.get(k, ())) for k in degs}
    diffs = {}
    for k in degs:
        if k - 1 not in objects:
            continue
        a, b = S.rank(k - 1), T.rank(k)
        a2, b2 = S.rank(k - 2), T.rank(k - 1)
        rows = [[ring.zero()] * (a + b) for _ in range(a2 + b2)]
        dS = S.d(k - 1)
        for i in range(a2):
            for j in range(a):
                rows[i][j] = -dS[i][j]
        fk = f.f(k - 1)
        dT = T.d(k)
        for i in range(b2):
            for j in range(a):
                rows[a2 + i][j] = fk[i][j]
            for j in range(b):
                rows[a2 + i][a + j] = dT[i][j]
        diffs[k] = tuple(tuple(r) for r in rows)
    return GradedComplex(ring, objects, diffs, None, S.graded and T.graded)


def restrict(c: GradedComplex, var: int | str, value: int) -> GradedComplex:
    """Substitute ``T_var = value`` (0 keeps the grading; 1 forgets it)."""
    if value not in (0, 1):
        raise ComplexError("restriction mode must set a variable to 0 or 1")
    ring = c.ring
    i = ring.names.index(var) if isinstance(var, str) else int(var)
    if not 0 <= i < ring.nvars:
        raise ComplexError(f"no variable with index {i}")
    new_ring = ring.drop_var(i)
    diffs = {k: map_entries(M, lambda p: p.substitute(i, value)) for k, M in c.differentials.items()}
    return GradedComplex(new_ring, c.objects, diffs, c.labels, c.graded and value == 0)
