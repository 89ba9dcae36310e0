import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from carterlab.errors import BadParameters
from carterlab.gf import field_make
from carterlab.matgrp import (
    Matrix, classical_group, classical_order, is_unitary, matrix_group, projective_reduction,
    scalar_subgroup_order, semilinear_extend, unitary_form, wreath_counterexample,
)
from carterlab.perm import PermGroup

CASES = [("SL", 2, 3), ("GL", 2, 3), ("PSL", 2, 7), ("PGL", 2, 5), ("Sp", 4, 2), ("PSp", 4, 3),
         ("GU", 2, 2), ("SU", 3, 2), ("GU", 3, 2), ("PGU", 3, 2), ("PSU", 3, 3), ("SL", 3, 2),
         ("PSL", 2, 8), ("PSL", 2, 9)]


@pytest.mark.parametrize("family,n,q", CASES)
def test_classical_orders(family, n, q):
    G = classical_group(family, n, q)
    assert G.order() == classical_order(family, n, q)


def test_named_orders():
    assert classical_group("SL", 2, 3).order() == 24
    assert classical_group("GU", 3, 2).order() == 648
    assert classical_group("PSL", 2, 7).order() == 168
    assert classical_group("Sym", 5).order() == 120
    assert classical_group("Alt", 6).order() == 360


def test_unitary_form():
    I = unitary_form(3, 2)
    assert is_unitary(I, 2)
    F = I.F
    # diag(l, l', 1) with l^(q+1) = l'^(q+1) = 1
    norm_one = [x for x in F.nonzero() if x ** 3 == F.one()]
    for a in norm_one:
        for b in norm_one:
            D = Matrix(F, np.diag([a.index, b.index, 1]).astype(np.int32))
            assert is_unitary(D, 2)


def test_gu22_by_exhaustive_scan():
    F = field_make(2, 2)
    count = 0
    for entries in np.ndindex(4, 4, 4, 4):
        A = Matrix(F, np.array(entries, dtype=np.int32).reshape(2, 2))
        if is_unitary(A, 2):
            count += 1
    assert count == 18
    assert classical_group("GU", 2, 2).order() == 18


def test_semilinear_extensions():
    S = classical_group("PSL", 2, 27)
    assert semilinear_extend(S, 1).order() == 3 * 9828
    assert semilinear_extend(S, 0) is S
    # PSL(2,9) extended by the field automorphism of order 2
    assert semilinear_extend(classical_group("PSL", 2, 9), 1).order() == 720


def test_projective_reduction():
    assert projective_reduction(classical_group("SL", 2, 3)).order() == 12
    assert projective_reduction(classical_group("GU", 3, 2)).order() == 216
    assert scalar_subgroup_order(classical_group("GU", 3, 2)) == 3
    assert projective_reduction(classical_group("SL", 2, 4)).order() == 60


def test_matrix_group():
    G = matrix_group(3, 2, [[[1, 1], [0, 1]], [[0, 2], [1, 0]]])
    assert G.order() == 24
    with pytest.raises(BadParameters):
        matrix_group(3, 2, [[[1, 1], [1, 1]]])


def test_bad_parameters():
    with pytest.raises(BadParameters):
        classical_group("Sp", 3, 3)
    with pytest.raises(BadParameters):
        classical_group("XL", 2, 3)


def test_wreath_counterexample_structure():
    W = wreath_counterexample(27)
    G, H = W["G"], W["H"]
    # recompute the order from the generators alone
    G0 = PermGroup(G.degree, G.gens, check=False)
    assert G0.degree == 56
    assert G0.order() == 9828 ** 2 * 3 * 2
    assert H.is_normal_in(G0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(0, 10**6))
def test_random_products_stay_in_sl(q, seed):
    rng = np.random.default_rng(seed)
    G = classical_group("SL", 2, q)
    F = G.field
    A, B = (G.generators[i % len(G.generators)].mat for i in rng.integers(0, 10, size=2))
    from carterlab.matgrp import det_index, mat_mul

    assert det_index(F, mat_mul(F, A.a, B.a)) == F.one().index
