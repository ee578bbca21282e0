"""
Tate cohomology of modules with an involution
==============================================

Z/2 acts on a finitely generated abelian group through an involution.  The
two Tate groups measure how far the invariants are from the norms.
"""

# %%
import random

from wittkit import FgModule, InvolutionModule, hyperbolic, tate, tate_shift
from wittkit.involution import involution_sum

Z = FgModule.free(1)
print("trivial on Z:", tate(InvolutionModule.trivial(Z)))
print("sign on Z:   ", tate(InvolutionModule.sign(Z)))

# %%
# A duality shift moves the pair by one step; odd shifts swap it.
pair = tate(InvolutionModule.trivial(Z))
for s in range(4):
    print(s, tate_shift(pair, s))

# %%
# Swapping two copies of a module kills both groups, whatever the module.
rng = random.Random(0)
for _ in range(5):
    a = FgModule.from_invariants([rng.choice([2, 3, 4, 6]) for _ in range(rng.randint(0, 3))], rng.randint(0, 2))
    print(f"hyp({a}) ->", tate(hyperbolic(a)))

# %%
# Tate groups are killed by 2, so odd torsion never contributes.
m = involution_sum(InvolutionModule.from_matrix([[9]], [[8]]), InvolutionModule.sign(FgModule.cyclic(15)))
print(m.underlying, "->", tate(m))
