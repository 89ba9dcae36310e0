"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``python3 -m pytest tests/test_acceptance.py -v``; single criteria with
``-k c07`` etc. Time bounds are wall-clock seconds measured inside each test.
"""

import time
from contextlib import contextmanager

from carterlab import catalog, chevalley, rootsys
from carterlab.carter import (
    carter_auto, carter_brute, carter_solvable, carter_syl2, conjugate_in_table, esyl2,
    is_carter, property_suite, satisfies_E,
)
from carterlab.matgrp import classical_group, semilinear_extend, wreath_counterexample
from carterlab.perm import (
    CosetAction, PermGroup, alternating_group, cyclic_group, dihedral_group, direct_product,
    intersection, normalizer, p_part, sylow, symmetric_group,
)

BOUNDS = {
    1: 10, 2: 30, 3: 5, 4: 600, 5: 120, 6: 600, 7: 300, 8: 120, 9: 180, 10: 600,
    11: 60, 12: 300, 13: 1800, 14: 300,
}


@contextmanager
def criterion(capsys, n, title):
    """Time the block, enforce the bound and print one result line."""
    t0 = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - t0
        if elapsed > BOUNDS[n]:
            detail = f"over time bound {BOUNDS[n]} s"
            raise AssertionError(f"criterion {n} took {elapsed:.1f} s > {BOUNDS[n]} s")
        status = "PASS"
    except Exception as exc:
        detail = detail or f"{type(exc).__name__}: {exc}"
        raise
    finally:
        elapsed = time.perf_counter() - t0
        with capsys.disabled():
            line = f"[criterion {n:2d}] {status}  {title}  ({elapsed:.1f} s, bound {BOUNDS[n]} s)"
            print("\n" + line + (f"  {detail}" if status == "FAIL" else ""))


def test_c01_alt5_has_no_carter(capsys):
    with criterion(capsys, 1, "Alt(5): no Carter subgroup by brute force and by criterion (E)"):
        A5 = alternating_group(5)
        assert carter_brute(A5).exists is False
        ok, cert = satisfies_E(A5)
        assert ok is False
        assert cert.failure["factor"] == "Alt(5)"


def test_c02_sym5(capsys):
    with criterion(capsys, 2, "Sym(5): one class of order 8, a Sylow 2-subgroup; brute = syl2"):
        S5 = symmetric_group(5)
        b = carter_brute(S5)
        s = carter_syl2(S5)
        assert b.classes == 1 and b.order == 8 == s.order
        K = b.representatives[0]
        assert K.order() == p_part(S5.order(), 2)
        assert conjugate_in_table(S5, K, s.representatives[0])
        assert conjugate_in_table(S5, K, sylow(S5, 2))


def test_c03_sl23(capsys):
    with criterion(capsys, 3, "SL(2,3): Carter subgroup N(P_3) of order 6 (solvable path, brute)"):
        G = classical_group("SL", 2, 3).perm
        r = carter_solvable(G)
        assert r.order == 6
        K = r.representatives[0]
        N3 = normalizer(G, sylow(G, 3))
        assert N3.order() == 6 and conjugate_in_table(G, K, N3)
        b = carter_brute(G)
        assert b.classes == 1 and conjugate_in_table(G, K, b.representatives[0])


def test_c04_unitary(capsys):
    with criterion(capsys, 4, "GU(3,2): one class of order 18; PGU(3,2): order 6 (brute)"):
        GU = classical_group("GU", 3, 2).perm
        assert GU.order() == 648
        r = carter_brute(GU)
        assert r.classes == 1 and r.order == 18
        PGU = classical_group("PGU", 3, 2).perm
        r = carter_brute(PGU)
        assert r.classes == 1 and r.order == 6


def test_c05_esyl2_dichotomy(capsys):
    qs = [5, 7, 9, 11, 13, 17, 19, 23, 25]
    with criterion(capsys, 5, f"ESyl2 for PSL(2,q) iff q = +-1 mod 8, q in {qs}"):
        got = {q: esyl2(classical_group("PSL", 2, q).perm) for q in qs}
        want = {q: q % 8 in (1, 7) for q in qs}
        assert got == want


def _solvable_corpus():
    D = {
        "C2": cyclic_group(2), "C6": cyclic_group(6), "D8": dihedral_group(4),
        "D10": dihedral_group(5), "D12": dihedral_group(6), "C2xS3": direct_product(cyclic_group(2), symmetric_group(3)),
        "S3xS3": direct_product(symmetric_group(3), symmetric_group(3)),
        "A4xC3": direct_product(alternating_group(4), cyclic_group(3)),
        "S4xC2": direct_product(symmetric_group(4), cyclic_group(2)),
        "GL(2,3)": classical_group("GL", 2, 3).perm, "AGL(1,5)": PermGroup(5, [(1, 2, 3, 4, 0), (0, 2, 4, 1, 3)]),
    }
    return D


def _corpus():
    corpus = dict(_solvable_corpus())
    for n in range(3, 8):
        corpus[f"Sym({n})"] = symmetric_group(n)
        corpus[f"Alt({n})"] = alternating_group(n)
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13):
        corpus[f"PSL(2,{q})"] = classical_group("PSL", 2, q).perm
    corpus["SL(2,3)"] = classical_group("SL", 2, 3).perm
    corpus["GU(3,2)"] = classical_group("GU", 3, 2).perm
    corpus["PGU(3,2)"] = classical_group("PGU", 3, 2).perm
    return corpus


def test_c06_conjugacy_and_images(capsys):
    with criterion(capsys, 6, "corpus: at most one Carter class; KN/N Carter for all normal N of index <= 10^4"):
        bad = []
        for name, G in _corpus().items():
            r = carter_brute(G, bound=6000)
            if r.classes > 1:
                bad.append((name, "classes", r.classes))
            if r.exists:
                rep = property_suite(G, r, max_index=10**4, bound=6000)
                if not rep["quotients_pass"]:
                    bad.append((name, "quotients"))
                if carter_auto(G, bound=6000).order != r.order:
                    bad.append((name, "auto"))
        assert not bad, bad


def test_c07_g2_table(capsys):
    with criterion(capsys, 7, "G2(3) unipotent table: |x1| = 9, inverse witnesses, centralizers 5832/729/5832"):
        rep = chevalley.verify_unipotent_table("G2", 3)
        assert rep["orders"][1] == 9
        assert rep["inverse_witnesses"][6] == {"by": "h_a(-1)", "inverse": True}
        assert rep["inverse_witnesses"][8] == {"by": "h_b(-1)", "inverse": True}
        c = rep["centralizers"]
        assert c[6]["class_size"] == 728 and c[6]["centralizer"] == 5832
        assert c[8]["class_size"] == 728 and c[8]["centralizer"] == 5832
        assert c[7]["centralizer"] == 729


def test_c08_f4_orders(capsys):
    with criterion(capsys, 8, "F4(3): |x_i| > 3 for i in {9,10} and {12..27} minus {16}"):
        orders = chevalley.verify_unipotent_table("F4", 3)["orders"]
        idx = [9, 10] + [i for i in range(12, 28) if i != 16]
        assert all(orders[i] > 3 for i in idx), {i: orders[i] for i in idx}


SHIPPED_TYPES = ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "B2", "B3", "B4", "B5", "C3", "C4",
                 "D4", "D5", "D6", "D7", "D8", "E6", "E7", "E8", "F4", "G2"]


def test_c09_weyl_suite(capsys):
    with criterion(capsys, 9, "Weyl orders 12/1152/51840; w0 = -1 fails exactly on A_l (l>1), D_odd, E6; E6 order-3 check"):
        assert rootsys.weyl_group(rootsys.root_system("G2")).order() == 12
        assert rootsys.weyl_group(rootsys.root_system("F4")).order() == 1152
        assert rootsys.weyl_group(rootsys.root_system("E6")).order() == 51840
        for t in SHIPPED_TYPES:
            fam, n = t[0], int(t[1:])
            expected_false = (fam == "A" and n > 1) or (fam == "D" and n % 2 == 1) or t == "E6"
            assert rootsys.minus_one_test(rootsys.root_system(t)) == (not expected_false), t
        assert rootsys.e6_order3_check()


def test_c10_borel_de_siebenthal(capsys):
    with criterion(capsys, 10, "Borel-de Siebenthal list vs closed-subsystem oracle on A2..F4"):
        for t in ["A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4"]:
            inside, full = rootsys.bds_vs_oracle(rootsys.root_system(t))
            assert inside and full, t
        g2 = {d.label for d in rootsys.borel_de_siebenthal(rootsys.root_system("G2"))}
        assert {"G2", "A2", "A1x~A1"} <= g2


def test_c11_hartley_shute(capsys):
    with criterion(capsys, 11, "Hartley-Shute: s^2 scaling on A1(3,5,7) and C2(3) long roots; exact on A2(4), G2(3)"):
        for q in (3, 5, 7):
            squares = {x * x % q for x in range(1, q)}
            nonsq = [s for s in range(1, q) if s not in squares]
            for s in nonsq:
                w = chevalley.hartley_shute_witness("A1", q, (1,), s)
                assert not w["exact"] and w["achieved"] == s * s % q
        c2 = chevalley.chevalley_group("C2", 3)
        for r in c2.Phi.roots:
            w = chevalley.hartley_shute_witness("C2", 3, r, 2)
            assert w["exact"] == (not c2.Phi.is_long(r)), r
            if c2.Phi.is_long(r):
                assert w["achieved"] == 1
        for label, q in (("A2", 4), ("G2", 3)):
            G = chevalley.chevalley_group(label, q)
            for r in G.Phi.roots:
                for s in range(1, q):
                    assert chevalley.hartley_shute_witness(label, q, r, s)["exact"], (label, r, s)


def test_c12_semilinear(capsys):
    with criterion(capsys, 12, "<PSL(2,27), phi>: Carter subgroup of order 81 = P_3 : <phi>; PSL(2,27) alone: none"):
        S = classical_group("PSL", 2, 27)
        L = semilinear_extend(S, 1)
        A = L.perm
        assert A.degree == 28 and A.order() == 29484
        r = carter_auto(A)
        assert r.exists and r.order == 81
        K = r.representatives[0]
        assert is_carter(A, K)
        # K = P_3(S) : <phi>: K meets S in a Sylow 3-subgroup and maps onto A/S
        assert intersection(K, S.perm).order() == p_part(S.perm.order(), 3) == 27
        assert not K.is_subgroup_of(S.perm)
        assert not esyl2(S.perm)
        assert catalog.catalog_query("A1(27)", "S").exists is False
        assert catalog.catalog_query("A1(27)", "field=3").exists is True


def test_c13_wreath_counterexample(capsys):
    with criterion(capsys, 13, "degree-56 group: G/H ~ Sym3, self-normalizing Sylow 3 in G cap M, criterion (E) fails at PSL(2,27)"):
        W = wreath_counterexample(27)
        G = PermGroup(W["G"].degree, W["G"].gens, check=False)
        H, Mc = W["H"], W["G_cap_M"]
        assert G.degree == 56 and G.order() == 9828 ** 2 * 6
        act = CosetAction(G, H)
        Q = act.image
        assert Q.order() == 6 and not Q.is_abelian()
        P3 = sylow(Mc, 3)
        assert normalizer(Mc, P3).order() == P3.order()
        ok, cert = satisfies_E(G)
        assert ok is False
        f = cert.failure
        assert f["factor"] == "PSL(2,27)" and f["induced_order"] == 9828
        assert cert.catalog_sourced


def test_c14_chevalley_algebra(capsys):
    with criterion(capsys, 14, "Jacobi, additivity, commutator formula, h(chi)^2 = h(chi^2): zero failures"):
        failures = {}
        for label in ("A2", "B2", "G2", "C3", "F4"):
            failures[f"jacobi {label}"] = chevalley.jacobi_check(label)
        for label, q in (("A2", 2), ("A2", 3), ("A2", 4), ("B2", 2), ("B2", 3), ("G2", 2), ("G2", 3)):
            failures[f"commutator {label}({q})"] = chevalley.commutator_suite(label, q)[0]
            failures[f"additivity {label}({q})"] = chevalley.additivity_check(label, q)
            failures[f"torus {label}({q})"] = chevalley.torus_square_check(label, q)
        assert not any(failures.values()), {k: v for k, v in failures.items() if v}
