"""
Witt groups of finite fields from a presentation
=================================================

W(F_q) is generated by the two square classes subject to Witt's relations.
Smith normal form of the relation matrix gives the isomorphism type.
"""

# %%
from wittkit.wittcalc import FieldDesc, witt_field_oracle
from wittkit.wittcalc.finite_field import prime_power

for q in range(3, 50, 2):
    if prime_power(q) is None:
        continue
    W, rank = witt_field_oracle(q)
    print(f"F{q:<3} q%4={q % 4}  W = {W}")

# %%
# The rank map is onto Z/2 and its kernel is the fundamental ideal.
for k in (FieldDesc.finite(3), FieldDesc.finite(5), FieldDesc.real_closed(), FieldDesc.quadratically_closed()):
    print(f"{k}: W = {k.witt_group}, I = {k.fundamental_ideal}")
