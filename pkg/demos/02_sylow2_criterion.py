# %% [markdown]
# The Sylow 2-subgroup criterion
#
# If Q is a Sylow 2-subgroup with N_G(Q) = Q C_G(Q), the Carter subgroup is Q
# times a Carter subgroup of the odd part of C_G(Q). For PSL(2,q), q odd, the
# condition holds exactly when q = +-1 mod 8.

# %%
from carterlab.carter import carter_auto, carter_syl2, esyl2
from carterlab.matgrp import classical_group
from carterlab.perm import symmetric_group

# %%
for q in (5, 7, 9, 11, 13, 17, 19, 23, 25):
    G = classical_group("PSL", 2, q).perm
    print(f"q = {q:2d}  q mod 8 = {q % 8}  ESyl2 = {esyl2(G)}")

# %% where it holds, the Carter subgroup is the Sylow 2 (times an odd part)
for n in (5, 6, 7):
    r = carter_syl2(symmetric_group(n))
    print(f"Sym({n}): |K| = {r.order}", r.detail)

# %% the dispatcher picks the path
for name, G in [("PSL(2,7)", classical_group("PSL", 2, 7).perm),
                ("PSL(2,11)", classical_group("PSL", 2, 11).perm),
                ("Sym(4)", symmetric_group(4))]:
    r = carter_auto(G)
    print(name, r.path, r.exists, r.order)
