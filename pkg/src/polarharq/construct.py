"""Reliability evaluation and active-set selection.

Synthesized-channel quality is tracked as the mean of the Gaussian-modeled
LLR under the all-zero assumption. The check-node mean uses the standard
two-regime fit of phi(x) = 1 - E[tanh(L/2)]:

    phi(x) ~= exp(-0.4527 x^0.86 + 0.0218)                 for 0 < x < 10
    phi(x) ~= sqrt(pi/x) exp(-x/4) (1 - 10/(7x))           for x >= 10

+inf is a symbolic perfect channel (phi = 0) and 0 a full erasure (phi = 1).

For the inter-transmission combining step, identity and first-xor-latest
kernels have closed-form mean updates; any other kernel falls back to
Monte-Carlo density evolution of the exact per-position combination.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .gf2lin import as_bits, bit_reversal_perm

GA_COEF_A = -0.4527
GA_COEF_B = 0.0218
GA_COEF_C = 0.86
GA_REGIME_BOUNDARY = 10.0
MC_DEFAULT_SAMPLES = 100_000


def _phi(x: float) -> float:
    if x <= 0.0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < GA_REGIME_BOUNDARY:
        return math.exp(GA_COEF_A * x**GA_COEF_C + GA_COEF_B)
    return math.sqrt(math.pi / x) * math.exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x))


_PHI_AT_BOUNDARY = _phi(GA_REGIME_BOUNDARY)


def _phi_inv(y: float) -> float:
    if y >= 1.0:
        return 0.0
    if y <= 0.0:
        return math.inf
    if y > _PHI_AT_BOUNDARY:
        return ((GA_COEF_B - math.log(y)) / -GA_COEF_A) ** (1.0 / GA_COEF_C)
    lo, hi = GA_REGIME_BOUNDARY, GA_REGIME_BOUNDARY * 2.0
    while _phi(hi) > y:
        hi *= 2.0
        if hi > 1e12:
            return math.inf
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _phi(mid) > y:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, lo):
            break
    return 0.5 * (lo + hi)


def ga_variable(m1: float, m2: float) -> float:
    """Variable-node mean update: means add."""
    if m1 < 0 or m2 < 0:
        raise ValueError("LLR means must be non-negative")
    return m1 + m2


def ga_check(m1: float, m2: float) -> float:
    """Check-node mean update via the two-regime phi fit."""
    if m1 < 0 or m2 < 0:
        raise ValueError("LLR means must be non-negative")
    if m1 == 0.0 or m2 == 0.0:
        return 0.0
    if math.isinf(m1):
        return m2
    if math.isinf(m2):
        return m1
    return _phi_inv(1.0 - (1.0 - _phi(m1)) * (1.0 - _phi(m2)))


def _ga_tree(means: np.ndarray) -> np.ndarray:
    n_len = len(means)
    if n_len == 1:
        return means
    half = n_len // 2
    a, b = means[:half], means[half:]
    check = np.array([ga_check(a[j], b[j]) for j in range(half)])
    var = np.array([ga_variable(a[j], b[j]) for j in range(half)])
    return np.concatenate([_ga_tree(check), _ga_tree(var)])


def reliability_single(n_len: int, init_means: np.ndarray) -> np.ndarray:
    """Per-synthesized-channel LLR means for one polar transform.

    ``init_means`` is indexed by coded position; rate matching enters through
    it (punctured 0, shortened +inf, repeated positions summed).
    """
    init_means = np.asarray(init_means, dtype=np.float64)
    if len(init_means) != n_len:
        raise ValueError("need one initial mean per coded position")
    if np.any(init_means < 0):
        raise ValueError("LLR means must be non-negative")
    return _ga_tree(init_means[bit_reversal_perm(n_len)])


@dataclass(frozen=True)
class BlockChannel:
    """Receiver-side view of one transmission used for construction.

    means: de-rate-matched channel LLR means over the working length (zeros
    beyond the mother length and at punctured/shortened positions).
    known_zero: positions whose unmasked coded bit is zero a priori
    (shortened plus padding). n_mother: the block's own code length.
    """

    means: np.ndarray
    known_zero: np.ndarray
    n_mother: int


def _is_identity(kernel: np.ndarray) -> bool:
    return bool(np.array_equal(kernel, np.eye(kernel.shape[0], dtype=np.uint8)))


def _is_first_xor_latest(kernel: np.ndarray) -> bool:
    t = kernel.shape[0]
    expect = np.eye(t, dtype=np.uint8)
    expect[0, :] = 1
    return bool(np.array_equal(kernel, expect))


def step1_means(kernel: np.ndarray, blocks: list[BlockChannel], s: int, mc_samples: int = MC_DEFAULT_SAMPLES, mc_seed: int = 0) -> np.ndarray:
    """Combined z-domain LLR means for block ``s`` when it is decoded
    (later blocks known, earlier blocks unknown)."""
    kernel = as_bits(kernel)
    t = len(blocks)
    n_max = len(blocks[0].means)
    out = np.empty(n_max)
    if _is_identity(kernel):
        out[:] = blocks[s].means
    elif _is_first_xor_latest(kernel):
        later = np.zeros(n_max)
        for k in range(s + 1, t):
            later = later + blocks[k].means
        if s == 0:
            out[:] = blocks[0].means + later
        else:
            first_ev = np.where(blocks[0].known_zero, np.inf, blocks[0].means + later)
            out[:] = [ga_check(blocks[s].means[j], first_ev[j]) for j in range(n_max)]
    else:
        for j in range(n_max):
            kz = tuple(k for k in range(t) if blocks[k].known_zero[j])
            means_j = np.array([blocks[k].means[j] for k in range(t)])
            est = oracle.mc_step1_mean(
                kernel, s, means_j, known_zero_blocks=kz, samples=mc_samples, seed=mc_seed + j
            )
            # sampling noise can push a no-information position slightly negative
            out[j] = max(est, 0.0)
    out[blocks[s].known_zero] = np.inf
    return out


def reliability_arum(
    kernel: np.ndarray,
    blocks: list[BlockChannel],
    mc_samples: int = MC_DEFAULT_SAMPLES,
    mc_seed: int = 0,
) -> list[np.ndarray]:
    """Two-step reliabilities: per-position combining across blocks, then the
    per-block polar transform. Returns one u-domain mean vector per block."""
    kernel = as_bits(kernel)
    t = len(blocks)
    if kernel.shape != (t, t):
        raise ValueError("kernel size must match the number of blocks")
    if np.any(np.tril(kernel, -1)):
        raise ValueError("kernel must be upper triangular")
    out = []
    for s in range(t):
        combined = step1_means(kernel, blocks, s, mc_samples=mc_samples, mc_seed=mc_seed)
        n_s = blocks[s].n_mother
        out.append(reliability_single(n_s, combined[:n_s]))
    return out


@dataclass
class ActiveSets:
    """Active-position history over a session; positions are global indices
    block * n_max + i."""

    n_max: int
    k: int
    sets: list[frozenset[int]] = field(default_factory=list)
    relocations: list[tuple[tuple[int, int], ...]] = field(default_factory=list)

    def block_of(self, g: int) -> int:
        return g // self.n_max

    def pos_of(self, g: int) -> int:
        return g % self.n_max

    @property
    def current(self) -> frozenset[int]:
        return self.sets[-1]


@dataclass(frozen=True)
class SelectionResult:
    active: frozenset[int]
    relocation: tuple[tuple[int, int], ...]
    k_new: int
    warning: bool


def select_active(prev_active, reliab, k: int, new_candidates) -> SelectionResult:
    """Pick the k most reliable positions among the previous active set and
    the new block's candidates.

    ``reliab`` maps global index to LLR mean and must cover every candidate.
    Ties break toward the lower global index. The relocation pairs vacated old
    positions with chosen new positions, both in ascending order. A warning is
    flagged when the new block carries no active bits.
    """
    prev = frozenset() if prev_active is None else frozenset(prev_active)
    candidates = sorted(prev | frozenset(new_candidates))
    if len(candidates) < k:
        raise ValueError(f"only {len(candidates)} candidates for {k} active bits")
    ranked = sorted(candidates, key=lambda g: (-reliab[g], g))
    active = frozenset(ranked[:k])
    if not prev:
        return SelectionResult(active=active, relocation=(), k_new=k, warning=False)
    vacated = sorted(prev - active)
    incoming = sorted(active - prev)
    if len(vacated) != len(incoming):
        raise AssertionError("relocation sets must pair off one-to-one")
    relocation = tuple(zip(vacated, incoming))
    k_new = len(incoming)
    return SelectionResult(active=active, relocation=relocation, k_new=k_new, warning=k_new == 0)


def export_reliability_csv(path, per_block: list[np.ndarray]) -> None:
    """Write (position, block, mean) rows for debugging."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["position", "block", "mean"])
        for b, rel in enumerate(per_block):
            for i, m in enumerate(rel):
                writer.writerow([i, b, repr(float(m))])
