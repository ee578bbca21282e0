"""Explicit contractions of Koszul complexes on a chart where some T_j is a unit."""

from __future__ import annotations

from wittkit.koszul.complexes import (
    ComplexError,
    GradedComplex,
    identity_matrix,
    matadd,
    matmul,
    zero_matrix,
)
from wittkit.koszul.homology import constant_matrix_rank


class ContractionError(ComplexError):
    """No contracting homotopy of the Koszul type exists."""


def koszul_sequence(c: GradedComplex) -> list:
    """Read ``f_1..f_n`` off a Koszul complex whose generators are labelled by 0/1 tuples."""
    if c.labels is None or 0 not in c.objects or 1 not in c.objects:
        raise ContractionError("complex carries no Koszul labelling")
    n = len(c.labels[0][0])
    d1 = c.d(1)
    seq = [None] * n
    for j, lab in enumerate(c.labels[1]):
        if sum(lab) != 1:
            raise ContractionError("degree-1 labels are not singletons")
        seq[lab.index(1)] = d1[0][j]
    if any(f is None for f in seq):
        raise ContractionError("missing Koszul generator")
    return seq


def contraction_null_homotopy(c: GradedComplex, j: int | None = None) -> dict:
    """Homotopy ``h`` with ``d h + h d = id``, built against a unit entry.

    ``j`` (1-based) picks the tensor factor; by default the first factor whose
    Koszul element is a nonzero constant.  Returns ``{k: h_k}`` with
    ``h_k: C_k -> C_{k+1}`` and verifies the identity by matrix arithmetic.
    """
    seq = koszul_sequence(c)
    field = c.ring.field
    if j is None:
        units = [i for i, f in enumerate(seq) if f.constant() not in (None, 0)]
        if not units:
            raise ContractionError("no Koszul element is a unit on this chart")
        i = units[0]
    else:
        i = j - 1
        u = seq[i].constant()
        if u in (None, 0):
            raise ContractionError(f"Koszul element {seq[i]} is not a unit")
    u_inv = field.inv(seq[i].constant())
    ring = c.ring
    pos = {k: {lab: a for a, lab in enumerate(c.labels[k])} for k in c.degrees}
    h = {}
    for k in c.degrees:
        if k + 1 not in c.objects:
            continue
        M = [[ring.zero()] * c.rank(k) for _ in range(c.rank(k + 1))]
        for a, lab in enumerate(c.labels[k]):
            if lab[i]:
                continue
            sign = -1 if sum(lab[:i]) % 2 else 1
            new = lab[:i] + (1,) + lab[i + 1:]
            M[pos[k + 1][new]][a] = ring.const(u_inv * sign)
        h[k] = tuple(tuple(r) for r in M)
    if not verify_homotopy(c, h):
        raise ContractionError("d h + h d != id")
    return h


def verify_homotopy(c: GradedComplex, h: dict) -> bool:
    ring = c.ring
    for k in c.degrees:
        n = c.rank(k)
        total = zero_matrix(ring, n, n)
        if k + 1 in c.objects:
            hk = h.get(k, zero_matrix(ring, c.rank(k + 1), n))
            total = matadd(total, matmul(ring, c.d(k + 1), hk, c.rank(k + 1), n))
        if k - 1 in c.objects:
            hk1 = h.get(k - 1, zero_matrix(ring, n, c.rank(k - 1)))
            total = matadd(total, matmul(ring, hk1, c.d(k), c.rank(k - 1), n))
        if total != identity_matrix(ring, n):
            return False
    return True


def fiber_homology_at_origin(c: GradedComplex) -> dict:
    """Homology of ``C (x) k`` at the point where every variable vanishes.

    A bounded complex of free modules that is exact near the origin is split
    there, so nonzero fibre homology certifies that it is not exact.
    """
    field = c.ring.field
    origin = [0] * c.ring.nvars

    def rank(k):
        if k not in c.objects or k - 1 not in c.objects:
            return 0
        M = [[p.evaluate(origin) for p in row] for row in c.d(k)]
        return constant_matrix_rank(M, field)

    return {k: c.rank(k) - rank(k) - rank(k + 1) for k in c.degrees}
