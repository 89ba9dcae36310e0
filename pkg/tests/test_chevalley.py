import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from carterlab.chevalley import (
    additivity_check, chevalley_group, commutator_check, commutator_suite, cu_q_check,
    hartley_shute_witness, jacobi_check, structure_constants, table_parameters, torus_action,
    torus_square_check, verify_unipotent_table,
)
from carterlab.errors import BadParameters, NotATorusElement, ZeroParameter


def test_structure_constants_examples():
    sc = structure_constants("A2")
    a, b = (1, 0), (0, 1)
    assert abs(sc.n(a, b)) == 1
    assert sc.n(a, a) == 0
    g2 = structure_constants("G2")
    assert max(abs(v) for v in g2.N.values()) == 3
    # antisymmetry
    for (r, s), v in g2.N.items():
        assert g2.n(s, r) == -v


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "C3", "F4"])
def test_jacobi(label):
    assert jacobi_check(label) == 0


def test_element_basics():
    G = chevalley_group("A2", 3)
    r = (1, 0)
    assert G.is_identity(G.x(r, 0))
    assert G.is_identity(G.h(r, 1))
    assert G.eq(G.mul(G.x(r, 1), G.x(r, 2)), G.identity())
    with pytest.raises(ZeroParameter):
        G.n(r, 0)
    with pytest.raises(ZeroParameter):
        G.h(r, 0)


def test_commutator_examples():
    # i = j = 1 term only in A2
    assert commutator_check("A2", 3, (1, 0), (0, 1), 1, 2)
    # r + s not a root
    G = chevalley_group("A2", 3)
    assert G.is_identity(G.comm(G.x((1, 0), 1), G.x((1, 1), 1)))
    with pytest.raises(BadParameters):
        commutator_check("A2", 3, (1, 0), (-1, 0), 1, 1)


@pytest.mark.parametrize("label,q", [("A2", 2), ("A2", 3), ("B2", 2), ("B2", 3), ("G2", 2), ("G2", 3)])
def test_commutator_suites(label, q):
    fails, total = commutator_suite(label, q)
    assert total > 0 and fails == 0


@pytest.mark.parametrize("label,q", [("A2", 3), ("B2", 3), ("G2", 3), ("A2", 4)])
def test_additivity_and_torus(label, q):
    assert additivity_check(label, q) == 0
    assert torus_square_check(label, q) == 0


def test_torus_action():
    _, c, ok = torus_action("G2", 3, [1, 1], (1, 1), 2)
    assert ok and c == 1
    with pytest.raises(NotATorusElement):
        torus_action("G2", 3, [1, 0], (1, 0), 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([("A2", 5), ("B2", 5), ("G2", 5), ("A2", 4)]), st.data())
def test_torus_action_random(case, data):
    label, q = case
    G = chevalley_group(label, q)
    lams = [data.draw(st.integers(1, q - 1)) for _ in range(G.Phi.rank)]
    r = data.draw(st.sampled_from(G.Phi.roots))
    t = data.draw(st.integers(0, q - 1))
    assert torus_action(label, q, lams, r, t)[2]


def test_hartley_shute_examples():
    w = hartley_shute_witness("A1", 5, (1,), 2)
    assert not w["exact"] and w["achieved"] == 4
    for r in [(0, 1), (2, 1)]:
        w = hartley_shute_witness("C2", 3, r, 2)
        assert not w["exact"] and w["achieved"] == 1
    G = chevalley_group("G2", 3)
    assert all(hartley_shute_witness("G2", 3, r, 2)["exact"] for r in G.Phi.roots)
    with pytest.raises(BadParameters):
        hartley_shute_witness("A1", 5, (1,), 0)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_hartley_shute_reaches_squares_on_a1(q):
    squares = {s * s % q for s in range(1, q)}
    for s in range(1, q):
        w = hartley_shute_witness("A1", q, (1,), s)
        assert w["exact"] == (s in squares)
        assert w["achieved"] == (s if w["exact"] else s * s % q)


def test_cu_q():
    assert cu_q_check("G2", 3)["order"] == 1
    c2 = cu_q_check("C2", 3)
    assert c2["order"] == 9 and c2["roots"] == c2["long_roots"]
    assert cu_q_check("A2", 5)["order"] == 1


def test_table_parameters():
    p = table_parameters(3)
    assert p == {"eta": 2, "xi": 1, "zeta": 1}


def test_g2_table_orders():
    rep = verify_unipotent_table("G2", 3, classes=())
    assert rep["orders"][1] == 9
    assert all(w["inverse"] for w in rep["inverse_witnesses"].values())


def test_group_elements_invertible():
    G = chevalley_group("B2", 3)
    rng = np.random.default_rng(1)
    for _ in range(10):
        r = G.Phi.roots[rng.integers(len(G.Phi.roots))]
        x = G.x(r, int(rng.integers(3)))
        assert G.is_identity(G.mul(x, G.inv(x)))
