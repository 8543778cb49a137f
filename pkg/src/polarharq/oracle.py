"""Brute-force reference computations for tiny instances.

Everything here works in the log domain via logsumexp and enumerates
hypotheses exhaustively, so it is slow but exact; the decoder and the
Gaussian-approximation construction are cross-checked against these results.
Block indices are 0-based (block 0 is the first transmission).
"""
from __future__ import annotations

import numpy as np

from ._kernels.llrmath import add_llrs, boxplus, softplus
from .gf2lin import as_bits, mat_vec_mul, transform_matrix

MC_MEAN_CAP = 1e9  # empirical means beyond this are reported as +inf


def _log_probs(llr):
    """(logP(bit=0), logP(bit=1)) for a bit observed with the given LLR."""
    llr = np.asarray(llr, dtype=np.float64)
    return -softplus(-llr), -softplus(llr)


def _llr_from_logs(l0: float, l1: float) -> float:
    if np.isneginf(l0) and np.isneginf(l1):
        return 0.0
    if np.isneginf(l1):
        return np.inf
    if np.isneginf(l0):
        return -np.inf
    return float(l0 - l1)


def bit_channel_posteriors(llrs: np.ndarray, index: int, prefix: np.ndarray) -> float:
    """Exact LLR of u[index] given channel LLRs and the true decisions before it.

    Marginalizes all later u bits uniformly; limited to N <= 8.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    n_len = len(llrs)
    if n_len > 8:
        raise ValueError("brute-force posterior limited to N <= 8")
    prefix = as_bits(prefix)
    if len(prefix) != index:
        raise ValueError("prefix must contain the decisions before `index`")
    g_mat = transform_matrix(n_len)
    lp0, lp1 = _log_probs(llrs)
    n_tail = n_len - index - 1
    totals = [-np.inf, -np.inf]
    u = np.zeros(n_len, dtype=np.uint8)
    u[:index] = prefix
    for hyp in (0, 1):
        u[index] = hyp
        acc = -np.inf
        for tail in range(1 << n_tail):
            for j in range(n_tail):
                u[index + 1 + j] = (tail >> j) & 1
            x = mat_vec_mul(u, g_mat)
            ll = float(np.sum(np.where(x == 0, lp0, lp1)))
            acc = np.logaddexp(acc, ll)
        totals[hyp] = acc
    return _llr_from_logs(totals[0], totals[1])


def step1_marginal(
    position_llrs: np.ndarray,
    s: int,
    known_later: np.ndarray,
    kernel: np.ndarray,
    known_zero_blocks=(),
) -> float:
    """Exact LLR of z_s at one coded position after t transmissions.

    ``position_llrs`` holds the t per-block observation LLRs of the masked
    bits x_k at this position. Blocks after s are fixed to ``known_later``;
    blocks listed in ``known_zero_blocks`` (shortened or padded) are fixed to
    zero; the remaining earlier blocks are marginalized uniformly.
    """
    llrs = np.asarray(position_llrs, dtype=np.float64)
    t = len(llrs)
    kernel = as_bits(kernel)
    if kernel.shape != (t, t):
        raise ValueError("kernel must be t x t")
    if s < 0 or s >= t:
        raise ValueError("block index out of range")
    known_later = as_bits(known_later)
    if len(known_later) != t - s - 1:
        raise ValueError("need one known value per later block")
    if s in known_zero_blocks:
        return np.inf
    lp0, lp1 = _log_probs(llrs)
    free = [k for k in range(s) if k not in known_zero_blocks]
    if len(free) > 8:
        raise ValueError("too many unknown blocks for brute force")
    z = np.zeros(t, dtype=np.uint8)
    z[s + 1 :] = known_later
    totals = [-np.inf, -np.inf]
    for hyp in (0, 1):
        z[s] = hyp
        acc = -np.inf
        for assign in range(1 << len(free)):
            for j, k in enumerate(free):
                z[k] = (assign >> j) & 1
            x = mat_vec_mul(z, kernel)
            ll = float(np.sum(np.where(x == 0, lp0, lp1)))
            acc = np.logaddexp(acc, ll)
        totals[hyp] = acc
    return _llr_from_logs(totals[0], totals[1])


def map_decode(spec, llrs: np.ndarray, known_values=None) -> np.ndarray:
    """Exhaustive maximum-likelihood u-vector over all active-bit assignments."""
    llrs = np.asarray(llrs, dtype=np.float64)
    active = spec.active_positions
    if len(active) > 16:
        raise ValueError("exhaustive search limited to 16 active bits")
    g_mat = transform_matrix(spec.n_len)
    lp0, lp1 = _log_probs(llrs)
    u = np.zeros(spec.n_len, dtype=np.uint8)
    if known_values is not None:
        known = spec.known_positions
        u[known] = as_bits(known_values)[known]
    best_ll = -np.inf
    best_u = u.copy()
    for assign in range(1 << len(active)):
        for j, pos in enumerate(active):
            u[pos] = (assign >> j) & 1
        x = mat_vec_mul(u, g_mat)
        ll = float(np.sum(np.where(x == 0, lp0, lp1)))
        if ll > best_ll:
            best_ll = ll
            best_u = u.copy()
    return best_u


def _genie_tree_llrs(chan: np.ndarray) -> np.ndarray:
    """All-zero genie SC bit-LLRs for every synthesized channel, vectorized
    over the sample axis. ``chan`` is (samples, N) in tree order."""
    n_len = chan.shape[1]
    if n_len == 1:
        return chan
    half = n_len // 2
    a = chan[:, :half]
    b = chan[:, half:]
    left = _genie_tree_llrs(boxplus(a, b))
    right = _genie_tree_llrs(add_llrs(a, b))
    return np.hstack([left, right])


def _sample_llrs(rng, means: np.ndarray, samples: int) -> np.ndarray:
    """Draw consistent Gaussian LLRs: mean m, variance 2m; 0 and +inf are
    point masses."""
    means = np.asarray(means, dtype=np.float64)
    out = np.empty((samples, len(means)))
    for j, m in enumerate(means):
        if np.isposinf(m):
            out[:, j] = np.inf
        elif m == 0.0:
            out[:, j] = 0.0
        else:
            out[:, j] = rng.normal(m, np.sqrt(2.0 * m), size=samples)
    return out


def mc_density(n_len: int, init_means: np.ndarray, samples: int = 100_000, seed: int = 0):
    """Monte-Carlo density evolution for one polar transform.

    Simulates all-zero transmission with per-coded-position LLR means,
    runs the exact SC recursion, and returns (empirical means, error rates)
    per synthesized channel. Means beyond MC_MEAN_CAP report as +inf.
    """
    from .gf2lin import bit_reversal_perm

    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.Generator(np.random.Philox(key=seed))
    chan = _sample_llrs(rng, init_means, samples)[:, bit_reversal_perm(n_len)]
    bit_llrs = _genie_tree_llrs(chan)
    with np.errstate(invalid="ignore"):
        means = np.mean(bit_llrs, axis=0)
    means = np.where(np.isnan(means) | (means > MC_MEAN_CAP), np.inf, means)
    err = np.mean(bit_llrs < 0, axis=0) + 0.5 * np.mean(bit_llrs == 0, axis=0)
    return means, err


def mc_step1_mean(
    kernel: np.ndarray,
    s: int,
    block_means: np.ndarray,
    known_zero_blocks=(),
    samples: int = 100_000,
    seed: int = 0,
) -> float:
    """Empirical mean of the exact block-s combined LLR at one position.

    All-zero transmission: later blocks decode to zero, ``known_zero_blocks``
    are fixed zero, remaining earlier blocks are marginalized. Used to
    construct codes under kernels without a closed-form combination.
    """
    kernel = as_bits(kernel)
    t = kernel.shape[0]
    block_means = np.asarray(block_means, dtype=np.float64)
    rng = np.random.Generator(np.random.Philox(key=seed))
    llrs = _sample_llrs(rng, block_means, samples)  # (samples, t)
    lp0 = -softplus(-llrs)
    lp1 = -softplus(llrs)
    free = [k for k in range(s) if k not in known_zero_blocks]
    if s in known_zero_blocks:
        return np.inf
    z = np.zeros(t, dtype=np.uint8)
    totals = []
    for hyp in (0, 1):
        z[s] = hyp
        acc = np.full(samples, -np.inf)
        for assign in range(1 << len(free)):
            for j, k in enumerate(free):
                z[k] = (assign >> j) & 1
            x = mat_vec_mul(z, kernel)
            ll = np.sum(np.where(x == 0, lp0, lp1), axis=1)
            acc = np.logaddexp(acc, ll)
        totals.append(acc)
        for k in free:
            z[k] = 0
    with np.errstate(invalid="ignore"):
        sample_llr = totals[0] - totals[1]
        sample_llr = np.where(
            np.isnan(sample_llr), 0.0, sample_llr
        )  # -inf minus -inf: no evidence either way
        mean = float(np.mean(sample_llr))
    if np.isnan(mean) or mean > MC_MEAN_CAP:
        return np.inf
    return mean
