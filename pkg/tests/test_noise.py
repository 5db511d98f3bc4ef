import numpy as np
import pytest
from hypothesis import given, strategies as st

from philambda.lattice import build_geometry, vacuum_config
from philambda.noise import (
    BLOCK_SIZE, ErrorParams, FlipRecord, apply_record, flips_from_uniforms, sample_block,
    sample_errors, sample_stream,
)


def test_params_validation():
    with pytest.raises(ValueError):
        ErrorParams(0.6, 0.5)
    with pytest.raises(ValueError):
        ErrorParams(-0.1, 0.0)
    assert ErrorParams.symmetric(0.03).total == pytest.approx(0.06)


def test_no_noise_gives_empty_record():
    geom = build_geometry(5)
    assert len(sample_errors(geom, ErrorParams(0, 0), np.random.default_rng(0))) == 0


def test_full_phi_noise_hits_every_spin():
    geom = build_geometry(4)
    rec = sample_errors(geom, ErrorParams(1, 0), np.random.default_rng(1))
    assert [s for s, _ in rec] == list(range(geom.n_spins))
    assert {g for _, g in rec} <= {1, 2, 4, 5}


def test_mean_record_length():
    geom = build_geometry(9)
    params = ErrorParams(0.03, 0.03)
    n = 10 ** 5
    lengths = np.zeros(n)
    for b in range(-(-n // BLOCK_SIZE)):
        rows = min(BLOCK_SIZE, n - b * BLOCK_SIZE)
        lengths[b * BLOCK_SIZE:b * BLOCK_SIZE + rows] = np.count_nonzero(sample_block(geom, params, 3, b, rows), axis=1)
    mean = geom.n_spins * 0.06
    se = np.sqrt(geom.n_spins * 0.06 * 0.94 / n)
    assert abs(lengths.mean() - mean) < 3 * se


def test_marginal_frequencies():
    u = np.random.default_rng(2).random(4 * 10 ** 5)
    p_phi, p_lambda = 0.2, 0.1
    g = flips_from_uniforms(u, p_phi, p_lambda)
    n = len(u)
    for value, prob in [(3, p_lambda), (1, p_phi / 4), (2, p_phi / 4), (4, p_phi / 4), (5, p_phi / 4)]:
        freq = np.count_nonzero(g == value) / n
        assert abs(freq - prob) < 4 * np.sqrt(prob * (1 - prob) / n)


def test_apply_empty_record():
    config = vacuum_config(build_geometry(3))
    apply_record(config, FlipRecord())
    assert not config.values.any()


@given(st.integers(0, 2 ** 32 - 1))
def test_record_then_inverse_restores(seed):
    geom = build_geometry(4)
    config = vacuum_config(geom)
    rec = sample_errors(geom, ErrorParams(0.3, 0.2), np.random.default_rng(seed))
    apply_record(config, rec)
    assert config.total_charge() == 0
    apply_record(config, rec.inverse())
    assert not config.values.any() and not config.charges.any()


def test_single_interior_flip_makes_two_phis():
    geom = build_geometry(4)
    config = vacuum_config(geom)
    j = geom.shared_spin(geom.plaquette(1, 1), geom.plaquette(2, 1))
    apply_record(config, FlipRecord([(j, 1)]))
    assert len(config.syndrome().anyons) == 2


def test_record_json_roundtrip():
    rec = FlipRecord([(3, 1), (7, 5)])
    assert FlipRecord.from_json(rec.to_json()).flips == rec.flips
    assert rec.to_json() == "[[3, 1], [7, 5]]"


def test_streams_are_deterministic_and_index_addressed():
    geom = build_geometry(6)
    params = ErrorParams(0.1, 0.1)
    block = sample_block(geom, params, 42, 1)
    again = sample_block(geom, params, 42, 1)
    assert np.array_equal(block, again)
    i = BLOCK_SIZE + 17
    rng = sample_stream(42, geom.L, params, i, geom.n_spins)
    rec = sample_errors(geom, params, rng)
    assert rec.flips == FlipRecord.from_array(block[17]).flips
    assert not np.array_equal(sample_block(geom, params, 43, 1), block)


def test_same_rates_same_errors_whatever_the_grid():
    geom = build_geometry(5)
    a = sample_block(geom, ErrorParams(0.03, 0.03), 0, 0, 64)
    b = sample_block(geom, ErrorParams(0.03, 0.03), 0, 0, 64)
    c = sample_block(geom, ErrorParams(0.035, 0.035), 0, 0, 64)
    assert np.array_equal(a, b) and not np.array_equal(a, c)
