import pytest
from hypothesis import given, settings, strategies as st

from carterlab.carter import (
    brute_bound, carter_auto, carter_brute, carter_solvable, carter_syl2, conjugate_in_table,
    esyl2, image_in_quotient, is_carter, property_suite, quotient_checks, satisfies_E,
)
from carterlab.errors import ESyl2Fails, NotASubgroup, NotSolvable
from carterlab.matgrp import classical_group
from carterlab.perm import (
    PermGroup, alternating_group, cyclic_group, dihedral_group, direct_product, group_make,
    is_nilpotent, sylow, symmetric_group,
)


def test_is_carter_examples():
    D8 = dihedral_group(4)
    assert is_carter(D8, D8)
    S4 = symmetric_group(4)
    assert is_carter(S4, sylow(S4, 2))
    S3 = symmetric_group(3)
    assert not is_carter(S3, sylow(S3, 3))
    with pytest.raises(NotASubgroup):
        is_carter(alternating_group(4), PermGroup(4, [(1, 0, 2, 3)]))


def test_brute_examples():
    assert not carter_brute(alternating_group(5)).exists
    gu = carter_brute(classical_group("GU", 3, 2).perm)
    assert gu.classes == 1 and gu.order == 18
    pgu = carter_brute(classical_group("PGU", 3, 2).perm)
    assert pgu.classes == 1 and pgu.order == 6


def test_solvable_examples():
    assert carter_solvable(symmetric_group(3)).order == 2
    assert carter_solvable(symmetric_group(4)).order == 8
    sl = carter_solvable(classical_group("SL", 2, 3).perm)
    assert sl.order == 6 and sl.path == "solvable"
    with pytest.raises(NotSolvable):
        carter_solvable(alternating_group(5))


def test_esyl2_examples():
    assert esyl2(classical_group("PSL", 2, 7).perm)
    assert not esyl2(classical_group("PSL", 2, 5).perm)
    assert esyl2(dihedral_group(8))


def test_syl2_examples():
    assert carter_syl2(classical_group("PSL", 2, 7).perm).order == 8
    assert carter_syl2(symmetric_group(6)).order == 16
    C15 = cyclic_group(15)
    assert carter_syl2(C15).order == 15
    with pytest.raises(ESyl2Fails):
        carter_syl2(alternating_group(5))


def test_criterion_examples():
    ok, cert = satisfies_E(symmetric_group(5))
    assert ok is True
    ok, cert = satisfies_E(alternating_group(5))
    assert ok is False and cert.failure["factor"] == "Alt(5)"


def test_auto_examples():
    r = carter_auto(symmetric_group(5))
    assert r.order == 8 and r.path == "syl2"
    r = carter_auto(classical_group("SL", 2, 3).perm)
    assert r.order == 6 and r.path == "solvable"
    r = carter_auto(alternating_group(5))
    assert r.exists is False and r.path == "criterion"


def test_property_suite_sym4():
    S4 = symmetric_group(4)
    res = carter_solvable(S4)
    rep = property_suite(S4, res)
    assert rep["quotients_pass"] and rep["classes_pass"] and rep["powers_pass"]
    V4 = group_make(4, ["(0 1)(2 3)", "(0 2)(1 3)"])
    Q, img = image_in_quotient(S4, res.representatives[0], V4)
    assert Q.order() == 6 and img.order() == 2
    assert is_carter(Q, img)
    # N = 1 gives K itself
    assert dict(quotient_checks(S4, res.representatives[0]))[1]


def test_brute_bound_env(monkeypatch):
    monkeypatch.setenv("CARTER_BRUTE_BOUND", "100")
    assert brute_bound() == 100
    from carterlab.errors import TooLarge

    with pytest.raises(TooLarge):
        carter_brute(symmetric_group(5))


# random groups: all paths agree with the brute-force oracle

@st.composite
def random_groups(draw):
    kind = draw(st.sampled_from(["perm", "product"]))
    if kind == "product":
        parts = draw(st.lists(st.sampled_from(
            [cyclic_group(2), cyclic_group(3), symmetric_group(3), dihedral_group(4), alternating_group(4)]),
            min_size=1, max_size=2))
        return direct_product(*parts)
    n = draw(st.integers(3, 6))
    gens = [tuple(draw(st.permutations(list(range(n))))) for _ in range(draw(st.integers(1, 2)))]
    return PermGroup(n, gens)


@settings(max_examples=40, deadline=None)
@given(random_groups())
def test_auto_agrees_with_brute(G):
    b = carter_brute(G, bound=1000)
    a = carter_auto(G, bound=1000)
    assert b.classes <= 1
    assert a.exists == b.exists
    if a.exists:
        K = a.representatives[0]
        assert is_carter(G, K)
        assert is_nilpotent(K)
        assert conjugate_in_table(G, K, b.representatives[0], bound=1000)


@settings(max_examples=25, deadline=None)
@given(random_groups())
def test_homomorphic_images(G):
    res = carter_brute(G, bound=1000)
    if res.exists:
        assert all(ok for _, ok in quotient_checks(G, res.representatives[0], bound=1000))
