import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from philambda import ds3
from philambda.ds3 import C, C2, E, T, TC, TC2, Charge, Color

ATOL = 1e-12
elements = st.integers(0, 5)
colors = st.sampled_from(list(Color))


def test_group_table():
    assert ds3.s3_mul(T, C) == TC
    assert ds3.s3_mul(C, T) == ds3.s3_mul(T, C2) == TC2
    assert ds3.s3_inv(C) == C2
    assert ds3.s3_mul(T, T) == E
    assert ds3.s3_mul(C, ds3.s3_mul(C, C)) == E
    assert ds3.s3_mul(T, C) == ds3.s3_mul(C2, T)


def test_group_axioms():
    for a, b, c in itertools.product(range(6), repeat=3):
        assert ds3.s3_mul(ds3.s3_mul(a, b), c) == ds3.s3_mul(a, ds3.s3_mul(b, c))
    for a in range(6):
        assert ds3.s3_mul(a, E) == ds3.s3_mul(E, a) == a
        assert ds3.s3_mul(a, ds3.s3_inv(a)) == E
        assert sorted(ds3.MUL[a]) == list(range(6))


def test_omega_factor():
    assert ds3.omega_factor(E) == 1
    assert ds3.omega_factor(C2) == pytest.approx(ds3.OMEGA ** 2)
    assert all(ds3.omega_factor(h) == 0 for h in (T, TC, TC2))


@pytest.mark.parametrize("color", list(Color))
def test_vacuum_states_carry_no_charge(color):
    for h in ds3.h_triples():
        state = ds3.vacuum_state(*h, color=color)
        assert abs(state.norm - 1) < ATOL
        probs = ds3.measure_charge(state)
        assert abs(probs[Charge.VACUUM] - 1) < ATOL
        for q in (Charge.LAMBDA, Charge.PHI, Charge.PHIBAR):
            assert abs(probs[q]) < ATOL
            assert np.abs(ds3.project(q, state).amplitudes).max() < ATOL
        assert np.abs(ds3.project(Charge.VACUUM, state).amplitudes - state.amplitudes).max() < ATOL


@pytest.mark.parametrize("color", list(Color))
def test_projector_matrices(color):
    mats = {q: ds3.projector_matrix(q, color) for q in Charge}
    total = sum(mats.values())
    assert np.abs(total - np.eye(6 ** 4)).max() < ATOL
    for q, P in mats.items():
        assert np.abs(P - P.conj().T).max() < ATOL
    rng = np.random.default_rng(0)
    v = rng.normal(size=6 ** 4) + 1j * rng.normal(size=6 ** 4)
    for q, P in mats.items():
        Pv = P @ v
        assert np.abs(P @ Pv - Pv).max() < 1e-10
        for q2, P2 in mats.items():
            if q2 is not q:
                assert np.abs(P2 @ Pv).max() < 1e-10


def test_projector_matrix_agrees_with_project():
    rng = np.random.default_rng(1)
    v = rng.normal(size=6 ** 4) + 1j * rng.normal(size=6 ** 4)
    state = ds3.PlaquetteState(v / np.linalg.norm(v), Color.WHITE)
    for q in Charge:
        assert np.allclose(ds3.projector_matrix(q, Color.WHITE) @ state.amplitudes.ravel(),
                           ds3.project(q, state).amplitudes.ravel(), atol=ATOL)


def test_w_phi_squared_is_w_phibar():
    W = ds3.W_DIAGONALS
    assert np.abs(W["phi"] ** 2 - W["phibar"]).max() < ATOL
    assert np.abs(W["phibar"] - W["phi"].conj()).max() < ATOL


def test_w_unitarity():
    W = ds3.W_DIAGONALS
    assert np.allclose(np.abs(W["Lambda"]), 1)
    # the phi operators vanish on the reflections, so neither they nor W_Phi are unitary
    assert not np.allclose(np.abs(W["phi"]), 1)
    assert not np.allclose(np.abs(W["Phi"]), 1)


@pytest.mark.parametrize("color", list(Color))
def test_lambda_creation(color):
    for h in [(E, C, T), (TC, TC2, C2), (T, T, T)]:
        vac = ds3.vacuum_state(*h, color=color)
        lam = ds3.apply_w("Lambda", 1, vac)
        assert lam.normalized
        assert abs(ds3.measure_charge(lam)[Charge.LAMBDA] - 1) < ATOL


@pytest.mark.parametrize("color", list(Color))
def test_double_lambda_is_plus_minus_identity(color):
    for h in ds3.h_triples():
        vac = ds3.vacuum_state(*h, color=color)
        for j in range(1, 5):
            twice = ds3.apply_w("Lambda", j, ds3.apply_w("Lambda", 1, vac))
            overlap = twice.vdot(vac)
            assert abs(abs(overlap) - 1) < ATOL and abs(overlap.imag) < ATOL
            # the sign is -1 exactly when one relative factor is a reflection and the other is not
            factors = (E,) + h
            expected = -1 if (factors[0] in ds3.T_CLASS) != (factors[j - 1] in ds3.T_CLASS) else 1
            assert abs(overlap.real - expected) < ATOL


@pytest.mark.parametrize("color, seen", [(Color.WHITE, Charge.PHI), (Color.GREY, Charge.PHIBAR)])
def test_w_phi_charge_by_colour(color, seen):
    vac = ds3.vacuum_state(C, T, E, color=color)
    probs = ds3.measure_charge(ds3.apply_w("phi", 1, vac).normalize())
    assert abs(probs[seen] - 1) < ATOL


def test_unnormalized_states_are_rejected():
    vac = ds3.vacuum_state(E, E, E)
    raw = ds3.apply_w("phi", 1, vac)
    assert not raw.normalized and abs(raw.norm - 1 / np.sqrt(2)) < ATOL
    with pytest.raises(ValueError):
        ds3.measure_charge(raw)


def test_annihilation_is_signalled():
    vac = ds3.vacuum_state(T, E, E, color=Color.GREY)
    # W_phi on spins 1 and 2 needs both g and g t to be rotations
    once = ds3.apply_w("phi", 2, vac)
    with pytest.raises(ds3.Annihilated):
        ds3.apply_w("phi", 1, once)
    zero = ds3.apply_w("phi", 1, once, allow_zero=True)
    assert zero.norm < ATOL
    with pytest.raises(ds3.Annihilated):
        zero.normalize()


def test_capital_phi_is_renormalized():
    out = ds3.apply_w("Phi", 1, ds3.vacuum_state(E, C, C2))
    assert out.normalized and abs(out.norm - 1) < ATOL
    probs = ds3.measure_charge(out)
    assert abs(probs[Charge.PHI] + probs[Charge.PHIBAR] - 1) < ATOL


def test_bad_operator_arguments():
    vac = ds3.vacuum_state(E, E, E)
    with pytest.raises(ValueError):
        ds3.apply_w("tau", 1, vac)
    with pytest.raises(ValueError):
        ds3.apply_w("phi", 5, vac)


@pytest.mark.parametrize("color", list(Color))
def test_omega_identity(color):
    for h in ds3.h_triples():
        vac = ds3.vacuum_state(*h, color=color)
        for j in (2, 3, 4):
            lhs = ds3.apply_w("phi", 1, ds3.apply_w("phi", j, vac, allow_zero=True), allow_zero=True)
            rhs = ds3.omega_factor(h[j - 2]) * ds3.apply_w("phibar", 1, vac).amplitudes
            assert np.abs(lhs.amplitudes - rhs).max() < ATOL
            if h[j - 2] in ds3.T_CLASS:
                assert lhs.norm < ATOL


@pytest.mark.parametrize("color", list(Color))
def test_phi_phibar_fusion(color):
    for h in ds3.h_triples():
        if h[0] in ds3.T_CLASS:
            continue
        vac = ds3.vacuum_state(*h, color=color)
        out = ds3.apply_w("phibar", 1, ds3.apply_w("phi", 2, vac)).normalize()
        probs = ds3.measure_charge(out)
        assert abs(probs[Charge.VACUUM] - 0.5) < ATOL and abs(probs[Charge.LAMBDA] - 0.5) < ATOL


@pytest.mark.parametrize("color, seen", [(Color.WHITE, Charge.PHI), (Color.GREY, Charge.PHIBAR)])
def test_lambda_hidden(color, seen):
    for h in ds3.h_triples():
        vac = ds3.vacuum_state(*h, color=color)
        for j in range(1, 5):
            out = ds3.apply_w("phi", 1, ds3.apply_w("Lambda", j, vac)).normalize()
            assert abs(ds3.measure_charge(out)[seen] - 1) < ATOL


@given(colors, st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(1, 4), st.sampled_from(["phi", "phibar"]))
def test_diagonal_operators_commute(color, seed, i, j, op):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=6 ** 4) + 1j * rng.normal(size=6 ** 4)
    s = ds3.PlaquetteState(v / np.linalg.norm(v), color)
    ab = ds3.apply_w("Lambda", i, ds3.apply_w(op, j, s))
    ba = ds3.apply_w(op, j, ds3.apply_w("Lambda", i, s))
    assert np.abs(ab.amplitudes - ba.amplitudes).max() < ATOL


@given(colors, elements, elements, elements, st.lists(st.tuples(st.sampled_from(["Lambda", "phi", "phibar"]), st.integers(1, 4)), max_size=4))
def test_charge_sector_probabilities_sum_to_one(color, h2, h3, h4, ops):
    state = ds3.vacuum_state(h2, h3, h4, color=color)
    for op, spin in ops:
        state = ds3.apply_w(op, spin, state, allow_zero=True)
    if state.norm < ATOL:
        return
    probs = ds3.measure_charge(state.normalize())
    assert abs(sum(probs.values()) - 1) < ATOL
    assert all(p > -ATOL for p in probs.values())


def test_classical_dictionary_examples():
    frac = ds3.classical_distribution
    assert frac(1, 1, Color.WHITE)[Charge.PHIBAR] == 1
    phi_phibar = frac(1, 2, Color.WHITE)
    assert phi_phibar[Charge.VACUUM] == phi_phibar[Charge.LAMBDA] == 0.5
    assert frac(3, 1, Color.WHITE)[Charge.PHI] == 1
    assert frac(3, 3, Color.GREY)[Charge.VACUUM] == 1


def test_quantum_mixture_examples():
    q = ds3.quantum_distribution("phi", 1, "phi", 2, Color.WHITE)
    assert abs(q[Charge.PHIBAR] - 1) < ATOL
    q = ds3.quantum_distribution("phi", 1, "phibar", 3, Color.GREY)
    assert abs(q[Charge.VACUUM] - 0.5) < ATOL and abs(q[Charge.LAMBDA] - 0.5) < ATOL


def test_correspondence():
    ok, mismatches = ds3.correspondence_check()
    assert ok and mismatches == []


def test_correspondence_needs_coset_randomisation():
    # with a definite residue 1 for phi, a Lambda on top would read as residue 4
    # yet quantum mechanically a Lambda added to phi changes nothing
    definite = ds3.quantum_charge(1 + 3)
    assert definite is Charge.PHI
    assert ds3.quantum_charge(2 + 3) is Charge.PHIBAR
