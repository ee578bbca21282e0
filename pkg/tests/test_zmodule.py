import itertools
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from wittkit.zmodule import (
    ZHALF,
    FgModule,
    ModuleError,
    ModuleMap,
    canonicalize,
    cokernel,
    direct_sum,
    homology_at,
    identity,
    image,
    is_isomorphic,
    kernel,
    smith_normal_form,
    to_canonical,
    zero_map,
)

matrices = st.integers(0, 5).flatmap(
    lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
        .map(lambda rows: (rows, c))))


def _det(M):
    return int(Matrix(M).det()) if M else 1


def determinantal_divisors(M, ncols):
    """d_k = gcd of all k x k minors; the SNF diagonal is d_k / d_(k-1)."""
    out = []
    nrows = len(M)
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for rows in itertools.combinations(range(nrows), k):
            for cols in itertools.combinations(range(ncols), k):
                g = np.gcd(g, abs(_det([[M[i][j] for j in cols] for i in rows])))
        if g == 0:
            break
        out.append(int(g))
    return out


def snf_diagonal_oracle(M, ncols):
    dd = determinantal_divisors(M, ncols)
    return [dd[0]] + [dd[i] // dd[i - 1] for i in range(1, len(dd))] if dd else []


def test_snf_worked_example():
    U, D, V = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    assert [D[i, i] for i in range(3)] == [2, 2, 156]
    assert snf_diagonal_oracle([[2, 4, 4], [-6, 6, 12], [10, 4, 16]], 3) == [2, 2, 156]


def test_snf_trivial_cases():
    U, D, V = smith_normal_form([[2, 0], [0, 0]])
    assert D.tolist() == [[2, 0], [0, 0]]
    U, D, V = smith_normal_form([[0]])
    assert D.tolist() == [[0]]
    U, D, V = smith_normal_form(np.zeros((0, 3), dtype=object))
    assert D.shape == (0, 3)


@given(matrices)
def test_snf_invariants(data):
    rows, ncols = data
    M = np.array(rows, dtype=object).reshape(len(rows), ncols)
    U, D, V = smith_normal_form(M)
    assert (U.dot(M).dot(V) == D).all()
    if len(rows):
        assert abs(_det(U.tolist())) == 1
    if ncols:
        assert abs(_det(V.tolist())) == 1
    diag = [D[i, i] for i in range(min(D.shape))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert all(d == 0 for d in diag[len(nz):])
    off = D.copy()
    for i in range(min(D.shape)):
        off[i, i] = 0
    assert not off.any()


def test_snf_agrees_with_sympy_and_minors():
    rng = random.Random(11)
    for _ in range(60):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        ours = [d for d in smith_normal_form(M)[1].diagonal() if d]
        S = sympy_snf(Matrix(M), domain=ZZ)
        theirs = sorted(abs(int(S[i, i])) for i in range(min(r, c)) if S[i, i])
        assert sorted(ours) == theirs
        assert ours == snf_diagonal_oracle(M, c)


def test_snf_big_entries_exact():
    M = [[10**30 + 1, 2], [4, 10**30 - 1]]
    U, D, V = smith_normal_form(M)
    assert (U.dot(np.array(M, dtype=object)).dot(V) == D).all()
    assert D[0, 0] * D[1, 1] == abs((10**30 + 1) * (10**30 - 1) - 8)


def test_canonicalize_examples():
    cf = FgModule([[1, 0, 0], [0, 2, 0], [0, 0, 0]], ngens=3).canonical_form
    assert (cf.factors, cf.free_rank) == ((2,), 1)
    assert FgModule([[2]], ngens=1, base_ring=ZHALF).canonical_form.factors == ()
    m = FgModule([[12]], ngens=1, base_ring=ZHALF)
    assert m.canonical_form.factors == (3,)
    assert str(FgModule.from_invariants([2, 4], 1)) == "Z + Z/2 + Z/4"
    assert str(FgModule.zero()) == "0"
    assert FgModule.free(2).canonical_form.to_json() == {"free_rank": 2, "factors": []}


def test_direct_sum_and_isomorphism():
    z2, z3, z4 = FgModule.cyclic(2), FgModule.cyclic(3), FgModule.cyclic(4)
    assert direct_sum(z2, z2).canonical_form.factors == (2, 2)
    assert direct_sum(z2, z3).canonical_form.factors == (6,)
    assert not is_isomorphic(z4, direct_sum(z2, z2))
    with pytest.raises(ModuleError):
        is_isomorphic(z2, FgModule.cyclic(3, base_ring=ZHALF))


@given(st.lists(st.integers(0, 12), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_direct_sum_commutes_and_associates(orders, rnd):
    mods = [FgModule.cyclic(d) if d else FgModule.free(1) for d in orders]
    perm = mods[:]
    rnd.shuffle(perm)
    assert is_isomorphic(direct_sum(*mods), direct_sum(*perm))
    if len(mods) >= 3:
        assert is_isomorphic(direct_sum(direct_sum(mods[0], mods[1]), mods[2]),
                             direct_sum(mods[0], direct_sum(mods[1], mods[2])))


@given(matrices)
def test_canonicalize_idempotent(data):
    rows, ncols = data
    m = FgModule(rows, ngens=ncols)
    cf = canonicalize(m)
    again = FgModule.from_invariants(cf.factors, cf.free_rank)
    assert canonicalize(again) == cf
    assert to_canonical(m).inverse() is not None


def test_homology_at_examples():
    Z = FgModule.free(1)
    times2 = ModuleMap(Z, Z, [[2]])
    # ker(x2) = 0 on Z, so the subquotient ker/im is 0
    assert homology_at(times2, zero_map(Z, Z)).is_zero
    z4 = FgModule.cyclic(4)
    h = homology_at(zero_map(z4, FgModule.zero()), ModuleMap(z4, z4, [[2]]))
    assert h.canonical_form.factors == (2,)
    with pytest.raises(ModuleError):
        homology_at(identity(Z), identity(Z))


def test_kernel_cokernel_maps():
    Z2 = FgModule.free(2)
    f = ModuleMap(Z2, FgModule.free(1), [[2, 4]])
    K, inc = kernel(f)
    C, proj = cokernel(f)
    assert str(K) == "Z" and str(C) == "Z/2"
    assert (f @ inc).is_zero()
    assert (proj @ f).is_zero()
    assert str(image(f)) == "Z"


@given(matrices)
def test_homology_at_identity_and_zero(data):
    rows, ncols = data
    A = FgModule(rows, ngens=ncols)
    assert homology_at(identity(A), zero_map(A, A)).is_zero
    assert homology_at(zero_map(A, A), identity(A)).is_zero
    assert is_isomorphic(homology_at(zero_map(A, A), zero_map(A, A)), A)


def test_element_enumeration():
    m = direct_sum(FgModule.cyclic(2), FgModule.cyclic(3))
    els = m.elements()
    assert len(els) == 6 == m.order
    assert FgModule.free(1).order is None


def test_json_roundtrip():
    m = FgModule([[2, 4], [0, 6]], ngens=2)
    assert FgModule.from_json(m.to_json()).canonical_form == m.canonical_form


def test_ill_defined_map_rejected():
    with pytest.raises(ModuleError):
        ModuleMap(FgModule.cyclic(2), FgModule.free(1), [[1]])
