import numpy as np
import pytest

from polarharq import gf2lin, oracle, polar
from polarharq.polar import (
    CrcConfig,
    PolarSpec,
    crc_attach,
    crc_check,
    crc_remainder,
    encode,
    sc_bit_llrs,
    sc_decode,
    scl_decode,
    select_by_crc,
)


def noiseless_llr(x):
    return np.where(np.asarray(x) == 0, np.inf, -np.inf)


def test_encode_examples():
    assert np.array_equal(encode(np.zeros(8, dtype=np.uint8)), np.zeros(8))
    assert np.array_equal(encode([1, 1, 0, 0]), [0, 0, 1, 0])


def test_encode_self_inverse():
    rng = np.random.default_rng(1)
    for _ in range(20):
        u = rng.integers(0, 2, 16).astype(np.uint8)
        assert np.array_equal(encode(encode(u)), u)


@pytest.mark.parametrize("n", [2, 4, 8, 32, 256])
def test_encode_matches_matrix_product(n):
    rng = np.random.default_rng(2)
    g = gf2lin.transform_matrix(n)
    for _ in range(10):
        u = rng.integers(0, 2, n).astype(np.uint8)
        assert np.array_equal(encode(u), gf2lin.mat_vec_mul(u, g))


def test_encode_length_mismatch():
    with pytest.raises(ValueError):
        encode([0, 1, 0], 4)


def test_sc_all_frozen_infinite_llr():
    spec = PolarSpec.from_sets(8, active=range(8))
    dec = sc_decode(np.full(8, np.inf), spec)
    assert np.array_equal(dec, np.zeros(8))


def test_sc_noiseless_roundtrip_with_roles():
    rng = np.random.default_rng(3)
    spec = PolarSpec.from_sets(16, active=[7, 9, 10, 11, 12, 13, 14, 15])
    for _ in range(10):
        u = np.zeros(16, dtype=np.uint8)
        u[spec.active_positions] = rng.integers(0, 2, spec.active_count)
        dec = sc_decode(noiseless_llr(encode(u)), spec)
        assert np.array_equal(dec, u)


def test_sc_decisions_follow_sequential_posteriors():
    # N=4, all active: each decision is the sign decision of the exact
    # posterior conditioned on the decoder's earlier decisions
    spec = PolarSpec.from_sets(4, active=range(4))
    llr = np.array([2.0, -1.0, 0.5, 3.0])
    dec = sc_decode(llr, spec)
    prefix = []
    for i in range(4):
        post = oracle.bit_channel_posteriors(llr, i, np.array(prefix, dtype=np.uint8))
        want = 0 if post >= 0 else 1
        assert dec[i] == want
        prefix.append(dec[i])


@pytest.mark.parametrize("n", [2, 4, 8])
def test_sc_bit_llrs_match_oracle(n):
    rng = np.random.default_rng(4)
    spec = PolarSpec.from_sets(n, active=range(n))
    for _ in range(25):
        llr = rng.normal(0, 3, n)
        u = rng.integers(0, 2, n).astype(np.uint8)
        got = sc_bit_llrs(llr, spec, u)
        for i in range(n):
            want = oracle.bit_channel_posteriors(llr, i, u[:i])
            assert got[i] == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_scl_list_of_one_is_sc():
    rng = np.random.default_rng(5)
    spec = PolarSpec.from_sets(16, active=range(6, 16))
    for _ in range(20):
        llr = rng.normal(0, 2, 16)
        assert np.array_equal(scl_decode(llr, spec, 1)[0].decisions, sc_decode(llr, spec))


def test_scl_noiseless_top_metric_zero():
    rng = np.random.default_rng(6)
    spec = PolarSpec.from_sets(16, active=range(8, 16))
    u = np.zeros(16, dtype=np.uint8)
    u[8:] = rng.integers(0, 2, 8)
    paths = scl_decode(noiseless_llr(encode(u)), spec, 4)
    assert np.array_equal(paths[0].decisions, u)
    assert paths[0].metric == pytest.approx(0.0, abs=1e-12)
    assert all(np.isinf(p.metric) for p in paths[1:])


def test_scl_exhaustive_equals_map():
    rng = np.random.default_rng(7)
    spec = PolarSpec.from_sets(8, active=[3, 5, 6, 7])
    for _ in range(30):
        llr = rng.normal(0, 2, 8)
        got = scl_decode(llr, spec, 16)[0].decisions
        assert np.array_equal(got, oracle.map_decode(spec, llr))


def test_scl_metric_is_nondecreasing_in_rank():
    rng = np.random.default_rng(8)
    spec = PolarSpec.from_sets(32, active=range(16, 32))
    llr = rng.normal(1, 2, 32)
    paths = scl_decode(llr, spec, 8)
    metrics = [p.metric for p in paths]
    assert metrics == sorted(metrics)


def test_known_bits_equal_translated_problem():
    # forcing KNOWN(v) matches decoding with v's re-encoded contribution
    # removed from the channel and the position frozen to zero
    rng = np.random.default_rng(9)
    n = 4
    known_pos = 1
    for _ in range(25):
        llr = rng.normal(0, 2, n)
        v = rng.integers(0, 2)
        spec_known = PolarSpec.from_sets(n, active=[2, 3], known=[known_pos])
        vals = np.zeros(n, dtype=np.uint8)
        vals[known_pos] = v
        dec_known = sc_decode(llr, spec_known, known_values=vals)

        contrib = np.zeros(n, dtype=np.uint8)
        contrib[known_pos] = v
        x_known = encode(contrib)
        llr_translated = np.where(x_known == 1, -llr, llr)
        spec_frozen = PolarSpec.from_sets(n, active=[2, 3])
        dec_frozen = sc_decode(llr_translated, spec_frozen)
        expect = dec_frozen.copy()
        expect[known_pos] = v
        assert np.array_equal(dec_known, expect)


def test_scl_seeding_carries_metrics_and_parents():
    spec = PolarSpec.from_sets(4, active=[3])
    llr = np.array([[1.0, 2.0, 1.0, 0.5], [1.0, 2.0, 1.0, -0.5]])
    seeds = [polar.DecodePath(decisions=np.empty(0), metric=0.3),
             polar.DecodePath(decisions=np.empty(0), metric=0.1)]
    paths = scl_decode(llr, spec, 4, initial_paths=seeds)
    assert {p.parent for p in paths} == {0, 1}
    assert all(p.metric >= min(0.3, 0.1) for p in paths)
    assert [p.metric for p in paths] == sorted(p.metric for p in paths)


def test_crc_ccitt_false_check_value():
    msg = np.unpackbits(np.frombuffer(b"123456789", dtype=np.uint8))
    assert crc_remainder(msg, CrcConfig()) == 0x29B1


def test_crc_zero_variant():
    cfg = CrcConfig(initial=0)
    assert crc_remainder(np.zeros(24, dtype=np.uint8), cfg) == 0
    attached = crc_attach(np.zeros(24, dtype=np.uint8), cfg)
    assert np.array_equal(attached[-16:], np.zeros(16))


def test_crc_roundtrip_many():
    rng = np.random.default_rng(10)
    for _ in range(1000):
        m = rng.integers(0, 2, int(rng.integers(1, 80))).astype(np.uint8)
        assert crc_check(crc_attach(m))


def test_crc_detects_flip():
    rng = np.random.default_rng(11)
    for _ in range(50):
        m = rng.integers(0, 2, 40).astype(np.uint8)
        d = crc_attach(m)
        d[int(rng.integers(0, len(d)))] ^= 1
        assert not crc_check(d)


def test_select_by_crc_orders():
    good = crc_attach(np.array([1, 0, 1, 1], dtype=np.uint8))
    bad = good.copy()
    bad[0] ^= 1
    bits, metric, ok = select_by_crc([(good, 0.5)])
    assert ok and metric == 0.5
    bits, metric, ok = select_by_crc([(bad, 0.1), (bad, 0.2)])
    assert not ok and metric == 0.1 and np.array_equal(bits, bad)
    bits, metric, ok = select_by_crc([(bad, 0.1), (good, 0.2), (good, 0.3)])
    assert ok and metric == 0.2


def test_select_by_crc_empty():
    with pytest.raises(ValueError):
        select_by_crc([])
