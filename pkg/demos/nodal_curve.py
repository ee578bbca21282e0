"""
The node and its Laurent ring
=============================

For R the local ring of y^2 = x^3 - x^2, K_-1(R) = Z with trivial involution,
so its Tate group in degree 0 is Z/2.  This is exactly what blocks the
product formula for W(R x Gm).
"""

# %%
from wittkit.wittcalc import (
    FieldDesc,
    HypothesisFailed,
    Node,
    Trace,
    node_laurent_witt,
    node_witt,
    witt_les_punctured,
    witt_punctured,
)
from wittkit.zmodule import direct_sum

F5 = FieldDesc.finite(5)
trace = Trace()
w = node_witt(F5, trace)
for r in range(4):
    print(f"W^{r}(node) = {w[r]}")
print("rules:", [rule.id for rule in trace.rules])

# %%
lw = node_laurent_witt(F5)
naive = direct_sum(w[0], w[0])
print("|W^0(R[t,1/t])| =", lw[0].order, "  |W^0(R)^2| =", naive.order)

# %%
try:
    witt_punctured(Node(F5), 1, 0)
except HypothesisFailed as e:
    print("hypothesis failed:", e, "tate pair", e.pair)

# %%
# The long exact sequence still exists; its fibre terms are the Tate groups.
les = witt_les_punctured(Node(F5), 1, 0)
for term in les.terms:
    print(f"{term.position:>12}: {term.group}")
print(les.flag)
