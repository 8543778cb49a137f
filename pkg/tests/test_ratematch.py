import numpy as np
import pytest

from polarharq.polar import PolarSpec, encode, sc_decode
from polarharq.ratematch import RateMatchMode, apply_plan, de_rate_match, make_plan


def test_puncture_plan_example():
    plan = make_plan(8, 6, "PUNCTURE")
    assert plan.affected == (0, 1)
    assert plan.forced_frozen_u == ()


def test_shorten_plan_example():
    plan = make_plan(4, 3, "SHORTEN")
    assert plan.affected == (3,)
    assert plan.forced_frozen_u == (3,)


def test_repeat_plan_example():
    plan = make_plan(4, 6, "REPEAT")
    x = np.array([1, 0, 1, 1], dtype=np.uint8)
    assert np.array_equal(apply_plan(plan, x), [1, 0, 1, 1, 1, 0])


def test_none_plan_identity():
    plan = make_plan(8, 8, "NONE")
    x = np.arange(8)
    assert np.array_equal(apply_plan(plan, x), x)
    assert np.array_equal(de_rate_match(plan, x.astype(float)), x)


def test_mode_length_consistency_errors():
    with pytest.raises(ValueError):
        make_plan(8, 8, "PUNCTURE")
    with pytest.raises(ValueError):
        make_plan(8, 10, "SHORTEN")
    with pytest.raises(ValueError):
        make_plan(8, 6, "REPEAT")
    with pytest.raises(ValueError):
        make_plan(8, 6, "NONE")
    with pytest.raises(ValueError):
        make_plan(8, 17, "REPEAT")
    with pytest.raises(ValueError):
        make_plan(6, 4, "PUNCTURE")


def test_apply_length_mismatch():
    plan = make_plan(8, 6, "PUNCTURE")
    with pytest.raises(ValueError):
        apply_plan(plan, np.zeros(4, dtype=np.uint8))
    with pytest.raises(ValueError):
        de_rate_match(plan, np.zeros(8))


def test_puncture_apply_and_inverse():
    plan = make_plan(8, 6, "PUNCTURE")
    x = np.arange(8)
    assert np.array_equal(apply_plan(plan, x), [2, 3, 4, 5, 6, 7])
    llr = np.array([1.0, 2, 3, 4, 5, 6])
    assert np.array_equal(de_rate_match(plan, llr), [0, 0, 1, 2, 3, 4, 5, 6])


def test_repeat_inverse_sums():
    plan = make_plan(4, 6, "REPEAT")
    llr = np.array([1.0, 2, 3, 4, 10, 20])
    assert np.array_equal(de_rate_match(plan, llr), [11, 22, 3, 4])


def test_shorten_inverse_zero_fills():
    plan = make_plan(4, 3, "SHORTEN")
    llr = np.array([1.0, 2, 3])
    assert np.array_equal(de_rate_match(plan, llr), [1, 2, 3, 0])


def test_contribution_counts_consistent():
    # a bit sent once contributes one LLR, twice two summed, zero times zero
    for n, m, mode in ((8, 5, "PUNCTURE"), (8, 6, "SHORTEN"), (8, 13, "REPEAT"), (8, 8, "NONE")):
        plan = make_plan(n, m, mode)
        sent_idx = apply_plan(plan, np.arange(n))
        ones = de_rate_match(plan, np.ones(m))
        for j in range(n):
            assert ones[j] == np.sum(sent_idx == j), (mode, j)


@pytest.mark.parametrize("n", [4, 8, 16])
def test_shorten_zero_guarantee_exhaustive(n):
    # with the bit-reversed tail frozen, the tail coded bits are always zero
    for m in range(n // 2, n):
        plan = make_plan(n, m, "SHORTEN")
        free = [i for i in range(n) if i not in plan.forced_frozen_u]
        for word in range(1 << len(free)):
            u = np.zeros(n, dtype=np.uint8)
            for j, pos in enumerate(free):
                u[pos] = (word >> j) & 1
            x = encode(u)
            assert np.all(x[list(plan.affected)] == 0)


def test_standalone_shortened_code_noiseless():
    rng = np.random.default_rng(0)
    n, m = 16, 11
    plan = make_plan(n, m, "SHORTEN")
    allowed = [i for i in range(n) if i not in plan.forced_frozen_u]
    active = allowed[-6:]
    spec = PolarSpec.from_sets(n, active)
    for _ in range(20):
        u = np.zeros(n, dtype=np.uint8)
        u[active] = rng.integers(0, 2, 6)
        tx = apply_plan(plan, encode(u))
        llr = de_rate_match(plan, np.where(tx == 0, np.inf, -np.inf))
        llr[list(plan.affected)] = np.inf
        assert np.array_equal(sc_decode(llr, spec), u)
