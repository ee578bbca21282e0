"""
Projective spaces and periodicity
=================================

GW of P^n over a base splits into copies of GW and K of the base according to
the parities of n and the twist.  Higher Witt groups of X x C_n repeat with
period 4 in n.
"""

# %%
from wittkit.wittcalc import Symbolic, gw_projective, higher_witt_punctured

X = Symbolic("X")
for n in range(6):
    for twist in (0, 1):
        t = gw_projective(X, n, twist, 0)
        f = gw_projective(X, n, twist, 0, method="fibration")
        print(f"P^{n}, O({twist}): {t}" + ("" if t == f else "   MISMATCH"))

# %%
for n in (1, 5):
    print(n, higher_witt_punctured(X, n, 0, 0), "|", higher_witt_punctured(X, n, 0, 0, co=True))
