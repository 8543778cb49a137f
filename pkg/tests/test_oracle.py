import numpy as np
import pytest

from polarharq import oracle
from polarharq._kernels.llrmath import boxplus
from polarharq.gf2lin import kernel_matrix
from polarharq.polar import PolarSpec, encode, scl_decode


def test_posterior_perfect_channel():
    llrs = np.full(4, np.inf)
    assert oracle.bit_channel_posteriors(llrs, 0, np.empty(0, dtype=np.uint8)) == np.inf


def test_posterior_n2_is_boxplus():
    rng = np.random.default_rng(0)
    for _ in range(50):
        a, b = rng.normal(0, 3, 2)
        got = oracle.bit_channel_posteriors(np.array([a, b]), 0, np.empty(0, dtype=np.uint8))
        assert got == pytest.approx(boxplus(a, b), rel=1e-9)


def test_posterior_rejects_large_n():
    with pytest.raises(ValueError):
        oracle.bit_channel_posteriors(np.zeros(16), 0, np.empty(0))


def test_step1_identity_passthrough():
    rng = np.random.default_rng(1)
    kern = kernel_matrix("IF", 3)
    llrs = rng.normal(0, 2, 3)
    got = oracle.step1_marginal(llrs, 1, np.array([0], dtype=np.uint8), kern)
    assert got == pytest.approx(llrs[1], rel=1e-12)


def test_step1_fl_t2_is_boxplus():
    rng = np.random.default_rng(2)
    kern = kernel_matrix("FL", 2)
    for _ in range(30):
        llrs = rng.normal(0, 2, 2)
        got = oracle.step1_marginal(llrs, 1, np.empty(0, dtype=np.uint8), kern)
        assert got == pytest.approx(boxplus(llrs[1], llrs[0]), rel=1e-9)


def test_step1_arikan_equals_fl_t3():
    rng = np.random.default_rng(3)
    ka = kernel_matrix("ARIKAN", 3)
    kf = kernel_matrix("FL", 3)
    for _ in range(20):
        llrs = rng.normal(0, 2, 3)
        for s in range(3):
            later = rng.integers(0, 2, 3 - s - 1).astype(np.uint8)
            assert oracle.step1_marginal(llrs, s, later, ka) == pytest.approx(
                oracle.step1_marginal(llrs, s, later, kf), rel=1e-12
            )


def test_step1_known_zero_block_is_inf():
    kern = kernel_matrix("FL", 2)
    got = oracle.step1_marginal(np.array([1.0, -2.0]), 1, np.empty(0, dtype=np.uint8), kern, known_zero_blocks=(1,))
    assert got == np.inf


def test_map_decode_noiseless():
    rng = np.random.default_rng(4)
    spec = PolarSpec.from_sets(8, active=[3, 5, 6, 7])
    for _ in range(10):
        u = np.zeros(8, dtype=np.uint8)
        u[spec.active_positions] = rng.integers(0, 2, 4)
        llr = np.where(encode(u) == 0, np.inf, -np.inf)
        assert np.array_equal(oracle.map_decode(spec, llr), u)


def test_map_decode_single_active_is_sign_decision():
    spec = PolarSpec.from_sets(4, active=[3])
    rng = np.random.default_rng(5)
    for _ in range(20):
        llr = rng.normal(0, 2, 4)
        got = oracle.map_decode(spec, llr)
        post = oracle.bit_channel_posteriors(llr, 3, np.zeros(3, dtype=np.uint8))
        assert got[3] == (0 if post >= 0 else 1)


def test_map_matches_exhausted_list():
    rng = np.random.default_rng(6)
    spec = PolarSpec.from_sets(8, active=[1, 3, 5, 7])
    for _ in range(20):
        llr = rng.normal(0, 2, 8)
        assert np.array_equal(
            oracle.map_decode(spec, llr), scl_decode(llr, spec, 16)[0].decisions
        )


def test_mc_density_perfect_channel_reports_inf():
    means, err = oracle.mc_density(4, [np.inf] * 4, samples=100, seed=0)
    assert np.all(np.isinf(means))
    assert np.all(err == 0)


def test_mc_density_variable_node_mean():
    means, _ = oracle.mc_density(2, [3.0, 3.0], samples=100_000, seed=1)
    sigma = np.sqrt(2 * 6.0 / 100_000)
    assert abs(means[1] - 6.0) < 3 * sigma * 3


def test_mc_density_deterministic_given_seed():
    a = oracle.mc_density(4, [2.0] * 4, samples=5000, seed=3)
    b = oracle.mc_density(4, [2.0] * 4, samples=5000, seed=3)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_mc_step1_mean_matches_ga_shape():
    # FL t=2 decode-first block: mean of boxplus(L1, L0) with both ~ (m, 2m)
    kern = kernel_matrix("FL", 2)
    m = 4.0
    est = oracle.mc_step1_mean(kern, 1, np.array([m, m]), samples=200_000, seed=4)
    rng = np.random.default_rng(5)
    ref = float(np.mean(boxplus(rng.normal(m, np.sqrt(2 * m), 200_000),
                                rng.normal(m, np.sqrt(2 * m), 200_000))))
    assert est == pytest.approx(ref, rel=0.03)
