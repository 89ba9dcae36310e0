import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from carterlab import perm
from carterlab.errors import ElementNotInGroup, InvalidPermutation, NotASubgroup, NotNormal, NotSolvable
from carterlab.matgrp import classical_group
from carterlab.perm import (
    PermGroup, alternating_group, brute_centralizer, brute_normalizer, center, centralizer,
    chief_series, coset_action, cyclic_group, dihedral_group, enumerate_subgroups, group_make,
    hall, induced_autos, is_conjugate, is_nilpotent, is_solvable, minimal_normals, normalizer,
    parse_cycles, power_witness, structure_tests, sylow, symmetric_group, trivial_group,
)


def test_group_make_orders():
    assert group_make(5, ["(0 1)", "(0 1 2 3 4)"]).order() == 120
    three_cycles = [f"({a} {b} {c})" for a, b, c in [(0, 1, 2), (1, 2, 3), (2, 3, 4)]]
    assert group_make(5, three_cycles).order() == 60
    assert classical_group("PSL", 2, 7).perm.order() == 168


def test_membership_and_invalid_input():
    S4 = symmetric_group(4)
    A4 = alternating_group(4)
    assert A4.contains(parse_cycles(4, "(0 1 2)"))
    assert not A4.contains(parse_cycles(4, "(0 1)"))
    assert S4.contains(parse_cycles(4, "(0 3)"))
    with pytest.raises(InvalidPermutation):
        PermGroup(3, [(0, 0, 1)])
    with pytest.raises(InvalidPermutation):
        parse_cycles(3, "(0 1 5)")


def test_structure_tests():
    st3 = structure_tests(symmetric_group(3))
    assert st3["is_solvable"] and not st3["is_nilpotent"]
    assert is_nilpotent(dihedral_group(4))
    assert not is_solvable(alternating_group(5))
    assert center(dihedral_group(4)).order() == 2


def test_normalizer_centralizer():
    S4 = symmetric_group(4)
    P = sylow(S4, 2)
    assert normalizer(S4, P).order() == 8
    assert brute_normalizer(S4, P).order() == 8
    assert centralizer(S4, [perm.identity(4)]).order() == 24
    PSL27 = classical_group("PSL", 2, 7).perm
    assert normalizer(PSL27, sylow(PSL27, 2)).order() == 8
    with pytest.raises(NotASubgroup):
        normalizer(alternating_group(4), PermGroup(4, [parse_cycles(4, "(0 1)")]))


def test_sylow_and_hall():
    assert sylow(symmetric_group(4), 2).order() == 8
    assert sylow(classical_group("SL", 2, 3).perm, 3).order() == 3
    assert hall(symmetric_group(4), {3}).order() == 3
    assert sylow(symmetric_group(4), 5).order() == 1
    with pytest.raises(NotSolvable):
        hall(alternating_group(5), {2, 3})


def test_power_witness():
    A5 = alternating_group(5)
    five = parse_cycles(5, "(0 1 2 3 4)")
    assert power_witness(A5, five) == 4
    assert power_witness(A5, parse_cycles(5, "(0 1)(2 3)")) is None
    A4 = alternating_group(4)
    assert power_witness(A4, parse_cycles(4, "(0 1 2)")) is None
    with pytest.raises(ElementNotInGroup):
        power_witness(A4, parse_cycles(4, "(0 1)"))


def test_chief_series():
    assert sorted(chief_series(symmetric_group(4)).names()) == ["C2", "C2^2", "C3"]
    assert chief_series(alternating_group(5)).names() == ["Alt(5)"]
    assert chief_series(symmetric_group(5)).names() == ["C2", "Alt(5)"]
    assert [N.order() for N in minimal_normals(symmetric_group(4))] == [4]


def test_coset_action():
    S4 = symmetric_group(4)
    V4 = group_make(4, ["(0 1)(2 3)", "(0 2)(1 3)"])
    Q, act = coset_action(S4, V4)
    assert Q.order() == 6 and Q.degree == 6
    Q1, _ = coset_action(S4, S4)
    assert Q1.order() == 1
    with pytest.raises(NotNormal):
        coset_action(S4, sylow(S4, 2))


def test_induced_autos():
    S3 = symmetric_group(3)
    assert induced_autos(S3, S3).order() == 6
    A = cyclic_group(4)
    assert induced_autos(A, A).order() == 1


def test_enumerate_subgroups():
    assert sorted(H.order() for H in enumerate_subgroups(symmetric_group(3))) == [1, 2, 3, 6]
    assert sorted(H.order() for H in enumerate_subgroups(cyclic_group(7))) == [1, 7]
    assert sorted(H.order() for H in enumerate_subgroups(alternating_group(4))) == [1, 2, 3, 4, 12]


# brute-force oracles on random subgroups of Sym(5)

def _all_elements(G):
    return set(G.elements())


@st.composite
def small_groups(draw):
    n = draw(st.integers(3, 5))
    pts = list(range(n))
    gens = []
    for _ in range(draw(st.integers(1, 2))):
        gens.append(tuple(draw(st.permutations(pts))))
    return PermGroup(n, gens)


@settings(max_examples=60, deadline=None)
@given(small_groups())
def test_order_matches_enumeration(G):
    els = _all_elements(G)
    assert len(els) == G.order()
    for g in els:
        assert G.contains(g)
    outside = [p for p in permutations(range(G.degree)) if p not in els]
    for p in outside[:20]:
        assert not G.contains(p)


@settings(max_examples=40, deadline=None)
@given(small_groups(), st.integers(0, 10**6))
def test_normalizer_centralizer_match_brute(H, seed):
    G = symmetric_group(H.degree)
    assert normalizer(G, H).order() == brute_normalizer(G, H).order()
    x = random.Random(seed).choice(sorted(G.elements()))
    assert centralizer(G, [x]).order() == brute_centralizer(G, [x]).order()


@settings(max_examples=40, deadline=None)
@given(small_groups())
def test_sylow_orders(G):
    for p in (2, 3, 5):
        P = sylow(G, p)
        assert P.order() == perm.p_part(G.order(), p)
        assert P.is_subgroup_of(G)


@settings(max_examples=40, deadline=None)
@given(small_groups(), st.integers(0, 10**6))
def test_conjugacy_brute(G, seed):
    rng = random.Random(seed)
    els = sorted(G.elements())
    x, y = rng.choice(els), rng.choice(els)
    brute = any(perm.conj(x, g) == y for g in els)
    assert is_conjugate(G, x, y) == brute
