import numpy as np
import pytest
from hypothesis import given, strategies as st

from philambda import _kernels as K
from philambda.decoder import VARIANT_CODES, Variant, decode
from philambda.lattice import SpinConfig, build_geometry
from philambda.noise import ErrorParams, sample_block


def _kernel_run(geom, g, variant):
    ch = K.charges_from_flips(g.astype(np.int64), geom.spin_plus, geom.spin_minus, geom.n_regions)
    stats = np.zeros(4, dtype=np.int64)
    verdict = K.decode_charges(ch, geom.L, VARIANT_CODES[variant], stats)
    return verdict, stats, ch


@given(st.integers(2, 9), st.floats(0.0, 0.4), st.integers(0, 2 ** 32 - 1), st.sampled_from(list(Variant)))
def test_kernel_matches_reference(L, p, seed, variant):
    geom = build_geometry(L)
    g = sample_block(geom, ErrorParams(p, p), seed, 0, 1)[0]
    config = SpinConfig(geom, g)
    assert np.array_equal(K.charges_from_flips(g.astype(np.int64), geom.spin_plus, geom.spin_minus,
                                               geom.n_regions), config.charges)
    report = decode(config, variant)
    verdict, stats, ch = _kernel_run(geom, g, variant)
    assert verdict == int(report.verdict)
    assert np.array_equal(ch, config.charges)
    if variant is not Variant.STATIC:
        assert stats[K.INSPECTIONS] == report.candidate_inspections
        assert stats[K.PASSES] == report.passes
        assert stats[K.MAX_K] == report.max_k
        assert stats[K.PAIRINGS] == len(report.pairings)


@pytest.mark.parametrize("variant", list(Variant))
def test_decode_block_matches_per_sample(variant):
    geom = build_geometry(6)
    block = sample_block(geom, ErrorParams(0.05, 0.05), 9, 0, 200)
    verdicts, inspections = K.decode_block(block, geom.spin_plus, geom.spin_minus, 6, VARIANT_CODES[variant])
    for i in range(len(block)):
        report = decode(SpinConfig(geom, block[i]), variant)
        assert verdicts[i] == int(report.verdict)
        assert inspections[i] == report.candidate_inspections


def test_combinations_enumerated_in_order():
    idx = np.arange(2)
    seen = [tuple(idx)]
    while K._next_combination(idx, 4):
        seen.append(tuple(idx))
    assert seen == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_first_failure_is_a_real_failure():
    geom = build_geometry(5)
    found, idx, g = K.first_failure_of_weight(2, geom.spin_plus, geom.spin_minus, 5, 0)
    assert found
    config = SpinConfig(geom)
    for s, v in zip(idx, g):
        config.apply_flip(int(s), int(v))
    assert decode(config).verdict != 0


@given(st.integers(3, 7), st.integers(0, 2 ** 32 - 1))
def test_negating_errors_keeps_verdict_class(L, seed):
    geom = build_geometry(L)
    g = sample_block(geom, ErrorParams(0.1, 0.1), seed, 0, 1)[0].astype(np.int64)
    a = decode(SpinConfig(geom, g))
    b = decode(SpinConfig(geom, (-g) % 6))
    assert a.verdict == b.verdict
    assert [x.as_tuple()[:4] for x in a.pairings] == [x.as_tuple()[:4] for x in b.pairings]
