import itertools
import random

import pytest

from wittkit.involution import InvolutionModule
from wittkit.wittcalc import (
    Atom,
    Field,
    FieldDesc,
    FieldError,
    GroupExpr,
    HypothesisFailed,
    Node,
    NotTabulated,
    ProjSpace,
    PuncturedAffine,
    Rule,
    Symbolic,
    Trace,
    VectorBundleOver,
    evaluate,
    fundamental_ideal,
    gw_projective,
    gw_projective_fibration_view,
    gw_punctured,
    higher_witt_punctured,
    homotopy_invariance,
    k_minus_one,
    k_theory_punctured,
    node_l_table,
    node_laurent_witt,
    node_witt,
    normalize,
    witt_bass,
    witt_field,
    witt_field_oracle,
    witt_les_punctured,
    witt_punctured,
)
from wittkit.wittcalc.finite_field import prime_power
from wittkit.zmodule import FgModule, cokernel, direct_sum, is_isomorphic, to_canonical

F3, F5 = FieldDesc.finite(3), FieldDesc.finite(5)
R, C = FieldDesc.real_closed(), FieldDesc.quadratically_closed()
k = FieldDesc.symbolic("k")
X = Symbolic("X")


def cf(m):
    return m.canonical_form


def iso(m, factors, free=0):
    c = cf(m)
    return (tuple(c.factors), c.free_rank) == (tuple(factors), free)


# --- an independent Witt oracle: quadratic forms over F_p by brute force -------

def _nullspace_mod(rows, n, p):
    """Basis of {x in F_p^n : r.x = 0 for every r in rows}."""
    M = [list(r) for r in rows]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, len(M)) if M[i][col] % p), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = pow(M[row][col], -1, p)
        M[row] = [x * inv % p for x in M[row]]
        for i in range(len(M)):
            if i != row and M[i][col] % p:
                f = M[i][col]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc] % p
        basis.append(v)
    return basis


def _bil(G, u, v, p):
    return sum(u[i] * G[i][j] * v[j] for i in range(len(u)) for j in range(len(v))) % p


def anisotropic_part(G, p):
    """Split off hyperbolic planes until no isotropic vector is left."""
    n = len(G)
    while n:
        iso_vec = next((v for v in itertools.product(range(p), repeat=n)
                        if any(v) and _bil(G, v, v, p) == 0), None)
        if iso_vec is None:
            return G
        w = next(e for e in (tuple(int(i == j) for j in range(n)) for i in range(n)) if _bil(G, iso_vec, e, p))
        rows = [[sum(x[i] * G[i][j] for i in range(n)) % p for j in range(n)] for x in (iso_vec, w)]
        basis = _nullspace_mod(rows, n, p)
        G = [[_bil(G, a, b, p) for b in basis] for a in basis]
        n = len(G)
    return G


def form_signature(G, p):
    """Isometry invariant of a small form: dimension and representation counts."""
    n = len(G)
    counts = [0] * p
    for v in itertools.product(range(p), repeat=n):
        counts[_bil(G, v, v, p)] += 1
    return n, tuple(counts)


def brute_witt_group(p):
    """(order, exponent of <1>) of W(F_p) from isotropy alone."""
    nonsq = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)

    def diag(entries):
        return [[entries[i] if i == j else 0 for j in range(len(entries))] for i in range(len(entries))]

    def add(G, a):
        n = len(G)
        return [list(r) + [0] for r in G] + [[0] * n + [a]]

    classes = {form_signature([], p): []}
    frontier = [[]]
    while frontier:
        nxt = []
        for G in frontier:
            for a in (1, nonsq):
                H = anisotropic_part(add(G, a), p)
                key = form_signature(H, p)
                if key not in classes:
                    classes[key] = H
                    nxt.append(H)
        frontier = nxt
    order_one = 1
    G = anisotropic_part(diag([1]), p)
    while G:
        G = anisotropic_part(add(G, 1), p)
        order_one += 1
    return len(classes), order_one


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23])
def test_witt_oracle_agrees_with_isotropy_brute_force(p):
    W, _ = witt_field_oracle(p)
    order, exponent = brute_witt_group(p)
    assert W.order == order == 4
    assert max(cf(W).factors) == exponent
    assert (exponent == 4) == (p % 4 == 3)


def test_witt_oracle_small_fields():
    assert iso(witt_field_oracle(3)[0], [4])
    assert iso(witt_field_oracle(5)[0], [2, 2])
    assert iso(witt_field_oracle(9)[0], [2, 2])
    assert iso(witt_field_oracle(27)[0], [4])
    with pytest.raises(FieldError):
        witt_field_oracle(4)
    with pytest.raises(FieldError):
        witt_field_oracle(15)
    with pytest.raises(FieldError):
        FieldDesc.finite(8)


def test_all_odd_prime_powers_below_100():
    for q in range(3, 100, 2):
        if prime_power(q) is None:
            continue
        W, rank = witt_field_oracle(q)
        assert iso(W, [4] if q % 4 == 3 else [2, 2]), q
        assert cokernel(rank)[0].is_zero


def test_real_closed_signature():
    """Every diagonal form of dimension <= 6 maps to signature times a generator."""
    W = R.witt_group
    to_c = to_canonical(W)
    assert iso(W, [], 1)
    gen = to_c.apply([1, 0])
    for dim in range(7):
        for signs in itertools.product((1, -1), repeat=dim):
            vec = [signs.count(1), signs.count(-1)]
            assert to_c.apply(vec) == [sum(signs) * g for g in gen]


def test_quadratically_closed():
    assert iso(C.witt_group, [2])
    assert fundamental_ideal(C).is_zero


def test_witt_field_degrees():
    for fld in (F3, F5, R, C):
        for r in (1, 2, 3, 5, -1):
            assert witt_field(fld, r).is_zero
    assert iso(witt_field(R, 0), [], 1)
    assert iso(witt_field(F5, 0), [2, 2])
    assert witt_field(k, 0) is None


def test_fundamental_ideal():
    assert iso(fundamental_ideal(F5), [2])
    assert iso(fundamental_ideal(F3), [2])
    assert iso(fundamental_ideal(R), [], 1)


def test_k_minus_one():
    assert str(k_minus_one(Node(F5)).underlying) == "Z"
    assert k_minus_one(Node(F5)).sigma.equals(InvolutionModule.trivial(FgModule.free(1)).sigma)
    assert k_minus_one(Field(F5)).underlying.is_zero
    assert str(k_minus_one(VectorBundleOver(Node(F5))).underlying) == "Z"
    with pytest.raises(NotTabulated, match="K_-1 not tabulated"):
        k_minus_one(PuncturedAffine(Node(k), 1))


def test_witt_punctured_examples():
    g = witt_punctured(Field(F5), 1, 0)
    assert iso(g.module, [2, 2, 2, 2]) and g.is_concrete
    g = witt_punctured(Field(k), 2, 0)
    assert str(g) == "W^0(k)"
    with pytest.raises(HypothesisFailed) as e:
        witt_punctured(Node(F5), 1, 0)
    assert iso(e.value.pair.h0, [2])
    assert e.value.pair.h1.is_zero


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_bass_route_agrees(q):
    x = Field(FieldDesc.finite(q))
    assert is_isomorphic(witt_bass(x).module, witt_punctured(x, 1, 0).module)
    with pytest.raises(NotTabulated):
        witt_bass(x, 1)


def test_bass_route_rejects_node():
    with pytest.raises(HypothesisFailed):
        witt_bass(Node(F5))


@pytest.mark.parametrize("fld", [F3, F5, R, C])
def test_punctured_four_periodic_in_n(fld):
    for n in range(1, 9):
        for r in range(4):
            a = witt_punctured(Field(fld), n, r)
            b = witt_punctured(Field(fld), n + 4, r)
            assert normalize(a) == normalize(b)


def test_les_placement():
    flat = witt_les_punctured(Field(F5), 1, 0)
    assert flat.flag == "split"
    assert all(t.group.is_zero for t in flat.terms if t.tate)
    one = witt_les_punctured(Node(F5), 1, 0)
    five = witt_les_punctured(Node(F5), 5, 0)
    assert one.flag == "extensions unresolved"
    placement = [str(t.group) for t in one.terms if t.tate]
    assert placement == [str(t.group) for t in five.terms if t.tate]
    assert placement == ["Z/2", "0"]


def test_node_witt_lemma_values():
    w = node_witt(F5)
    assert iso(w[0], [2, 2, 2]) and iso(w[1], [2]) and w[2].is_zero and w[3].is_zero
    w = node_witt(F3)
    assert iso(w[0], [2, 4]) and iso(w[1], [2]) and w[2].is_zero and w[3].is_zero
    w = node_witt(R)
    assert iso(w[0], [2], 1) and iso(w[1], [], 1) and w[2].is_zero and w[3].is_zero


def test_node_witt_trace_uses_rank_map():
    t = Trace()
    node_witt(F5, t)
    assert Rule.NODE_RANK_MAP in t.rules and Rule.NODE_SPLITTING in t.rules


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25, 27])
def test_node_order_doubles(q):
    fld = FieldDesc.finite(q)
    assert node_witt(fld)[0].order == 2 * fld.witt_group.order
    assert is_isomorphic(node_witt(fld)[1], fundamental_ideal(fld))


def test_node_l_table():
    t = node_l_table(F5)
    assert iso(t[0], [2, 2]) and t[1].is_zero and t[2].is_zero and iso(t[3], [2, 2])


def test_node_laurent():
    lw = node_laurent_witt(F5)
    assert lw[0].order == 32
    assert direct_sum(node_witt(F5)[0], node_witt(F5)[0]).order == 64
    assert iso(node_laurent_witt(F3)[1], [2, 4])
    for q in (3, 5, 7, 9):
        fld = FieldDesc.finite(q)
        nw = node_witt(fld)
        lw = node_laurent_witt(fld)
        assert is_isomorphic(lw[0], direct_sum(nw[0], fld.witt_group))
        assert not is_isomorphic(lw[0], direct_sum(nw[0], nw[0]))


def test_laurent_trace_flags_degree_one():
    t = Trace()
    node_laurent_witt(F5, t)
    assert Rule.NODE_LAURENT_DEGREE_ONE in t.rules and t.notes


def test_gm_over_node_falls_back_with_warning():
    t = Trace()
    g = evaluate(Atom("W", PuncturedAffine(Node(F5), 1), r=0), t)
    assert iso(g.module, [2] * 5)
    assert any("Balmer" in w for w in t.warnings)


def test_homotopy_invariance():
    g = homotopy_invariance(VectorBundleOver(Field(F5)), 0)
    assert g.atoms == (Atom("W", Field(F5), r=0),)
    assert iso(evaluate(Atom("W", VectorBundleOver(Field(F5)), r=0)).module, [2, 2])
    h = homotopy_invariance(GroupExpr.of(Atom("Whigh", VectorBundleOver(Node(k)), r=2, i=3)))
    assert str(h) == "Whigh^[2]_3(node(k))"
    assert homotopy_invariance(h) == h


def test_k_theory_punctured():
    g = evaluate(Atom("K", PuncturedAffine(Field(F5), 1), i=0))
    assert str(g) == "Z"
    s = k_theory_punctured(X, 1, 1)
    assert len(s.atoms) == 4
    assert len(k_theory_punctured(X, 1, 1, mode="KH").atoms) == 2


def test_gw_punctured():
    assert len(gw_punctured(Field(k), 2, 0, 0).atoms) == 2
    g = gw_punctured(X, 3, 1, 0)
    assert len(g.atoms) == 4
    # GW superscripts are not reduced mod 4
    assert "GW^[-2]" in str(g)


def test_higher_witt_punctured():
    g = higher_witt_punctured(X, 1, 0, 0)
    assert str(g) == "Whigh^[0]_0(X) + Whigh^[3]_-1(X)"
    for n in range(1, 5):
        for r in range(4):
            for co in (False, True):
                assert higher_witt_punctured(X, n, r, 2, co) == higher_witt_punctured(X, n + 4, r, 2, co)
    w = higher_witt_punctured(X, 2, 1, 0)
    c = higher_witt_punctured(X, 2, 1, 0, co=True)
    assert [(a.r, a.i) for a in w.atoms] == [(a.r, a.i) for a in c.atoms]


def _gw_shape(g):
    return sorted((a.kind, a.r) for a in g.atoms)


def test_gw_projective_table_cases():
    assert _gw_shape(gw_projective(X, 2, 0, 0)) == [("GW", 0), ("K", None)]
    assert _gw_shape(gw_projective(X, 3, 1, 0)) == [("K", None), ("K", None)]
    assert _gw_shape(gw_projective(X, 1, 0, 0)) == [("GW", -1), ("GW", 0)]
    assert _gw_shape(gw_projective(X, 2, 1, 0)) == [("GW", -2), ("K", None)]


def test_gw_projective_twist_parity():
    assert gw_projective(X, 4, 0, 1) == gw_projective(X, 4, -4, 1)
    assert gw_projective(X, 3, 1, 1) == gw_projective(X, 3, 7, 1)


def test_gw_projective_table_equals_fibration():
    for n in range(6):
        for twist in (0, 1):
            for r in range(-2, 3):
                assert gw_projective(X, n, twist, r) == gw_projective(X, n, twist, r, method="fibration")


def test_fibration_view_splits():
    for n in range(1, 6):
        view = gw_projective_fibration_view(X, n, 1 - n, 0)
        assert view["total"] == normalize(view["fibre"] + view["base"])


def test_normalize_examples():
    assert str(normalize(GroupExpr.of(Atom("W", X, r=5)))) == "W^1(X)"
    assert normalize(GroupExpr.of(Atom("W", Field(F5), r=2))).is_zero
    g = normalize(GroupExpr.of(FgModule.cyclic(2), FgModule.zero(), FgModule.cyclic(2)))
    assert str(g) == "Z/2 + Z/2"


def test_normalize_idempotent_and_order_independent():
    rng = random.Random(3)
    pool = [Atom("W", X, r=5), Atom("GW", X, r=-3, i=1), Atom("K", X, i=2), Atom("W", Field(F5), r=0),
            Atom("Whigh", X, r=7, i=0), FgModule.cyclic(4), FgModule.free(1), FgModule.cyclic(2)]
    for _ in range(40):
        parts = rng.sample(pool, rng.randint(0, len(pool)))
        g = GroupExpr.of(*parts)
        n1 = normalize(g)
        assert normalize(n1) == n1
        rng.shuffle(parts)
        assert normalize(GroupExpr.of(*parts)) == n1


def test_projective_over_field_evaluates_k():
    g = evaluate(Atom("GW", ProjSpace(Field(k), 2), r=0, i=0))
    assert "GW^[0]_0(k)" in str(g)


def test_not_tabulated():
    with pytest.raises(NotTabulated):
        evaluate(Atom("W", ProjSpace(Field(F5), 2), r=0))
