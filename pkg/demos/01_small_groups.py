# %% [markdown]
# Carter subgroups of small groups
#
# A Carter subgroup is a nilpotent subgroup equal to its own normalizer. Every
# solvable group has one, and all of them are conjugate. Non-solvable groups
# may have none.

# %%
from carterlab.carter import carter_brute, carter_solvable, is_carter
from carterlab.matgrp import classical_group
from carterlab.perm import alternating_group, sylow, symmetric_group

# %% Sym(3): the Sylow 2-subgroup is self-normalizing, the Sylow 3 is normal
S3 = symmetric_group(3)
print("Sym(3) Carter order:", carter_solvable(S3).order)
print("Sylow 3 is Carter?", bool(is_carter(S3, sylow(S3, 3))))

# %% Alt(5) has no Carter subgroup at all
r = carter_brute(alternating_group(5))
print("Alt(5):", r.exists)

# %% Sym(5) does: a Sylow 2-subgroup of order 8
r = carter_brute(symmetric_group(5))
print("Sym(5):", r.classes, "class of order", r.order)
print(r.certificates[0].as_dict())

# %% SL(2,3): the normalizer of a Sylow 3-subgroup, of order 6
G = classical_group("SL", 2, 3).perm
print("SL(2,3):", carter_solvable(G).order)

# %% GU(3,2) and PGU(3,2), by full subgroup enumeration
for fam in ("GU", "PGU"):
    G = classical_group(fam, 3, 2).perm
    r = carter_brute(G)
    print(f"{fam}(3,2): |G| = {G.order()}, classes = {r.classes}, |K| = {r.order}")
