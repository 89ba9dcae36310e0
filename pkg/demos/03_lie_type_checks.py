# %% [markdown]
# Root systems and Chevalley groups
#
# Weyl groups act on the root list; Chevalley groups are built as matrices in
# the adjoint representation over GF(q) from integer structure constants.

# %%
from carterlab import chevalley, rootsys

# %% Weyl groups and the longest element
for t in ("G2", "F4", "E6", "A3", "D5", "E7"):
    Phi = rootsys.root_system(t)
    W = rootsys.weyl_group(Phi)
    print(t, "|W| =", W.order(), " w0 = -1:", rootsys.minus_one_test(Phi))
print("E6 order-3 centralizers:", rootsys.order3_centralizer_orders("E6"))

# %% Borel-de Siebenthal subsystems of G2 against a brute-force oracle
Phi = rootsys.root_system("G2")
print([d.label for d in rootsys.borel_de_siebenthal(Phi)])
print("contained in oracle, full-rank covered:", rootsys.bds_vs_oracle(Phi))

# %% commutator formula, exhaustively over G2(3)
print("G2(3) commutator failures / checks:", chevalley.commutator_suite("G2", 3))

# %% unipotent classes of G2(3): orders and centralizers from class sizes
rep = chevalley.verify_unipotent_table("G2", 3)
print(rep["orders"])
print({i: c["centralizer"] for i, c in rep["centralizers"].items()})

# %% the torus reaches only squares on the long roots of C2
for r in [(1, 0), (0, 1)]:
    print(r, chevalley.hartley_shute_witness("C2", 3, r, 2))
