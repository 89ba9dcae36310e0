import pytest
from hypothesis import given, settings, strategies as st

from carterlab.errors import TooLarge
from carterlab.rootsys import (
    WeylElement, bad_primes, bds_vs_oracle, borel_de_siebenthal, closed_subsystems_oracle,
    e6_order3_check, extended_dynkin, fundamental_group_str, fundamental_reflections, heights,
    highest_root, length, longest_element, minus_one_test, root_system, weyl_elements, weyl_group,
)

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"]
ROOT_COUNTS = {"A1": 2, "A2": 6, "A3": 12, "A4": 20, "B2": 8, "B3": 18, "C3": 18, "D4": 24,
               "D5": 40, "D6": 60, "E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


@pytest.mark.parametrize("t", TYPES)
def test_root_counts(t):
    Phi = root_system(t)
    assert len(Phi.roots) == ROOT_COUNTS[t]
    assert all(Phi.neg(r) in Phi.index for r in Phi.roots)


def test_g2_and_f4_roots():
    G2 = root_system("G2")
    assert highest_root(G2) == (3, 2)
    F4 = root_system("F4")
    assert sum(1 for r in F4.roots if F4.is_long(r)) == 24
    A1 = root_system("A1")
    assert A1.roots == ((1,), (-1,))


def test_heights_and_bad_primes():
    Phi = root_system("E6")
    h = heights(Phi)
    assert all(h[a] == 1 for a in Phi.simple)
    assert bad_primes(root_system("A5")) == []
    assert bad_primes(root_system("G2")) == [2, 3]
    assert bad_primes(root_system("E8")) == [2, 3, 5]
    assert fundamental_group_str(root_system("D4")) == "Z2 x Z2"
    assert fundamental_group_str(root_system("D5")) == "Z4"
    assert fundamental_group_str(root_system("E8")) == "1"


def test_weyl_orders():
    assert weyl_group(root_system("G2")).order() == 12
    assert weyl_group(root_system("F4")).order() == 1152
    assert weyl_group(root_system("E6")).order() == 51840
    assert len(weyl_elements(root_system("B3"))) == 48
    with pytest.raises(TooLarge):
        weyl_elements(root_system("E8"))


@pytest.mark.parametrize("t", TYPES)
def test_longest_element(t):
    Phi = root_system(t)
    w0 = longest_element(Phi)
    npos = len(Phi.roots) // 2
    assert length(w0) == npos
    assert all(w0(r) in Phi.roots[npos:] for r in Phi.roots[:npos])
    ident = WeylElement(Phi, tuple(range(len(Phi.roots))))
    assert length(ident) == 0


def test_minus_one_test():
    expected_false = {"A2", "A3", "A4", "D5", "E6"}
    for t in TYPES:
        assert minus_one_test(root_system(t)) == (t not in expected_false), t


def test_e6_order3():
    assert e6_order3_check()


def test_extended_dynkin_g2():
    d = extended_dynkin(root_system("G2"))
    assert d["marks"] == [1, 3, 2]
    assert len(d["nodes"]) == 3


def test_bds_examples():
    labels = [d.label for d in borel_de_siebenthal(root_system("G2"))]
    assert "A2" in labels and "A1x~A1" in labels
    assert [d.label for d in borel_de_siebenthal(root_system("A1"))] == ["A1", "1"]
    f4 = {d.label for d in borel_de_siebenthal(root_system("F4"))}
    assert {"B4", "C3xA1", "A2x~A2", "D4"} <= f4
    a2 = [d.label for d in closed_subsystems_oracle(root_system("A2"))]
    assert sorted(a2) == ["1", "A1", "A2"]


@pytest.mark.parametrize("t", ["A2", "B2", "G2", "A3", "B3", "C3", "D4"])
def test_bds_against_oracle(t):
    Phi = root_system(t)
    inside, full = bds_vs_oracle(Phi)
    assert inside and full
    assert t in [d.label for d in closed_subsystems_oracle(Phi)]


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A3", "B3", "G2", "F4", "D4"]), st.lists(st.integers(0, 3), min_size=1, max_size=12))
def test_length_and_reflections(t, word):
    Phi = root_system(t)
    refl = fundamental_reflections(Phi)
    w = WeylElement(Phi, tuple(range(len(Phi.roots))))
    for i in word:
        w = w * refl[i % Phi.rank]
    # l(w) <= word length; W acts by permutations preserving negation
    assert length(w) <= len(word)
    assert length(w) % 2 == len(word) % 2
    for r in Phi.roots:
        assert w(Phi.neg(r)) == Phi.neg(w(r))
