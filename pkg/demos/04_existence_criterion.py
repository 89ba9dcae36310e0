# %% [markdown]
# The existence criterion and the catalog
#
# A group has a Carter subgroup iff, walking down a chief series, every
# non-abelian chief factor's automorphism group induced by the current Carter
# preimage has one. Large almost simple pieces are answered by the catalog.

# %%
from carterlab import catalog
from carterlab.carter import carter_auto, satisfies_E
from carterlab.matgrp import classical_group, semilinear_extend, wreath_counterexample
from carterlab.perm import symmetric_group

# %%
ok, cert = satisfies_E(symmetric_group(5))
print("Sym(5):", ok, cert.series.names())

# %% PSL(2,27) has no Carter subgroup; adjoining the Frobenius map creates one
S = classical_group("PSL", 2, 27)
print(catalog.catalog_query("A1(27)", "S").as_dict())
A = semilinear_extend(S, 1).perm
r = carter_auto(A)
print("<PSL(2,27), phi>:", r.path, r.order)

# %% a group of degree 56 built from two copies of <PSL(2,27), phi>
W = wreath_counterexample(27)
ok, cert = satisfies_E(W["G"])
print("criterion holds:", ok)
print(cert.failure)
