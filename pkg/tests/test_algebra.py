from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from philambda import algebra
from philambda.algebra import AnyonKind, classify, fuse

from oracles import explicit_split

V, LAM, PHI = AnyonKind.VACUUM, AnyonKind.LAMBDA, AnyonKind.PHI
residues = st.integers(0, 5)


@pytest.mark.parametrize("b, kind", [(0, V), (3, LAM), (5, PHI), (1, PHI), (2, PHI), (4, PHI)])
def test_classify(b, kind):
    assert classify(b) is kind


@pytest.mark.parametrize("a, b, out", [(3, 3, 0), (1, 5, 0), (1, 1, 2), (2, 3, 5)])
def test_fuse_examples(a, b, out):
    assert fuse(a, b) == out


def test_phi_absorbs_lambda():
    assert classify(fuse(2, 3)) is PHI


@given(residues, residues, residues)
def test_fuse_is_an_abelian_group_law(a, b, c):
    assert fuse(a, b) == fuse(b, a)
    assert fuse(fuse(a, b), c) == fuse(a, fuse(b, c))
    assert fuse(a, 0) == a


@given(st.sampled_from(algebra.PHI_VALUES))
def test_lambda_absorption_keeps_phi(b):
    assert classify(fuse(b, 3)) is PHI


@given(residues, residues)
def test_residue_fusion_respects_kind_rules(a, b):
    assert classify(fuse(a, b)) in algebra.FUSION_RULES[(classify(a), classify(b))]


def test_fusion_rule_table():
    rules = algebra.FUSION_RULES
    assert rules[(LAM, LAM)] == {V}
    assert rules[(PHI, LAM)] == rules[(LAM, PHI)] == {PHI}
    assert rules[(PHI, PHI)] == {V, LAM, PHI}


@pytest.mark.parametrize("parent", range(6))
def test_split_matches_case_list(parent):
    assert algebra.split_pair_distribution(parent) == explicit_split(parent)


@pytest.mark.parametrize("parent", range(6))
def test_split_invariants(parent):
    dist = algebra.split_pair_distribution(parent)
    assert all(isinstance(w, Fraction) for w in dist.values())
    assert sum(dist.values()) == 1
    for b1, b2 in dist:
        assert fuse(b1, b2) == parent
        assert b1 in algebra.PHI_VALUES and b2 in algebra.PHI_VALUES
    assert len(dist) == (4 if parent in (0, 3) else 2)


def test_split_examples():
    q = Fraction(1, 4)
    assert algebra.split_pair_distribution(0) == {(1, 5): q, (2, 4): q, (4, 2): q, (5, 1): q}
    assert algebra.split_pair_distribution(3) == {(1, 2): q, (2, 1): q, (4, 5): q, (5, 4): q}
    assert algebra.split_pair_distribution(2) == {(1, 1): Fraction(1, 2), (4, 4): Fraction(1, 2)}


@pytest.mark.parametrize("parent", [0, 3])
def test_sample_split_support(parent):
    rng = np.random.default_rng(5)
    for _ in range(50):
        b1, b2 = algebra.sample_split(parent, rng)
        assert b1 in algebra.PHI_VALUES and fuse(b1, b2) == parent


def test_sample_split_frequency():
    rng = np.random.default_rng(11)
    n = 10 ** 6
    hits = sum(algebra.sample_split(0, rng) == (1, 5) for _ in range(n))
    assert abs(hits / n - 0.25) < 0.002


@pytest.mark.parametrize("x, expected", [
    (V, {V: Fraction(1, 4), LAM: Fraction(1, 4), PHI: Fraction(1, 2)}),
    (LAM, {V: Fraction(1, 4), LAM: Fraction(1, 4), PHI: Fraction(1, 2)}),
    (PHI, {V: Fraction(1, 2), LAM: Fraction(1, 2), PHI: Fraction(0)}),
])
def test_cross_pair_fusion_table(x, expected):
    table = algebra.cross_pair_fusion_table(x)
    assert table == expected
    assert table == algebra.PROBS_TABLE[x]


def test_cross_pair_table_detects_wrong_split():
    def biased(parent):
        dist = dict(algebra.split_pair_distribution(parent))
        first = next(iter(dist))
        dist = {o: Fraction(0) for o in dist}
        dist[first] = Fraction(1)
        return dist

    assert algebra.cross_pair_fusion_table(V, biased) != algebra.PROBS_TABLE[V]


def test_four_phi_state_is_normalised_and_conserving():
    for x in AnyonKind:
        state = algebra.four_phi_state(x)
        assert sum(state.values()) == 1
        for s in state:
            assert classify(sum(s)) is V


def test_braid_orders_differ():
    first = algebra.braid_order_experiment("ii-then-i")
    second = algebra.braid_order_experiment("i-then-ii")
    assert first == {V: 1, LAM: 0, PHI: 0}
    assert second == {V: Fraction(1, 4), LAM: Fraction(1, 4), PHI: Fraction(1, 2)}
    assert first != second


@pytest.mark.parametrize("order", algebra.BRAID_ORDERS)
def test_braid_relabelling_pairs(order):
    assert algebra.braid_order_experiment(order, relabel_pairs=True) == algebra.braid_order_experiment(order)


def test_braid_order_rejects_unknown():
    with pytest.raises(ValueError):
        algebra.braid_order_experiment("i-then-i")


def test_f_matrix():
    F = algebra.F_MATRIX
    expected = np.array([[0.5, 0.5, -1 / np.sqrt(2)], [0.5, 0.5, 1 / np.sqrt(2)],
                         [-1 / np.sqrt(2), 1 / np.sqrt(2), 0]])
    assert np.allclose(F, expected, atol=1e-15)
    assert np.allclose(F, F.T, atol=1e-12)
    assert np.abs(F @ F - np.eye(3)).max() < 1e-12


def test_f_matrix_squares_give_fusion_probabilities():
    assert algebra.f_matrix_probabilities() == algebra.PROBS_TABLE
    assert algebra.F_SQUARED[0][2] == Fraction(1, 2)


def test_r_phases():
    assert algebra.R_PHASES == {V: 1, LAM: -1, PHI: 1}


def test_kind_symbols():
    assert [k.symbol for k in AnyonKind] == ["1", "Λ", "Φ"]
