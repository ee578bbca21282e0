"""
Koszul complexes with a symmetric form
======================================

b_n is the Koszul complex of T_1..T_n over k[T_0..T_n] with a form valued in
O(1-n)[n].  We check the form, its adjoint and the chart behaviour.
"""

# %%
from wittkit.koszul import adjoint, b_complex, cone, graded_homology, is_symmetric, restrict
from wittkit.koszul.verify import lowest_degree, report

b = b_complex(3)
print("ranks:", b.complex.ranks())
print("symmetric:", is_symmetric(b))
print("adjoint is a chain map:", adjoint(b).is_chain_map())

# %%
# The cone of the adjoint, slice by slice.  The only homology is one copy of
# the base field, sitting at the irrelevant ideal.
co = cone(adjoint(b))
for d in range(lowest_degree(co), 6):
    h = graded_homology(co, d)
    print(d, {k: v for k, v in h.items() if v} or "exact")

# %%
# Off the support every chart T_j = 1 (j >= 1) is contractible.
rep = report(2, fields=("Q",))
for c in rep["checks"]:
    print(f"{'PASS' if c['result'] else 'FAIL'} {c['check']}")

# %%
r0 = restrict(b.complex, 0, 0)
print("T0 = 0 slice 0:", graded_homology(r0, 0), " slice 1:", graded_homology(r0, 1))
