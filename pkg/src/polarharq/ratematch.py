"""Length adaptation between a mother code and the transmitted block.

The encoder matrix already embeds the bit-reversal permutation, so
quasi-uniform puncturing drops leading codeword positions and shortening
drops trailing ones. Shortening additionally freezes the bit-reversed
u-positions, which forces the dropped coded bits to zero: a coded position j
depends only on u-positions whose index bits cover bitrev(j), and the
bit-reversed tail is closed under that covering relation.

For shortened blocks the receiver-side LLR here is 0, not +inf: the zero
guarantee lives before any masking, and the +inf knowledge is applied by the
HARQ combiner in the unmasked domain.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .gf2lin import bit_reversal_perm


class RateMatchMode(str, Enum):
    NONE = "NONE"
    REPEAT = "REPEAT"
    PUNCTURE = "PUNCTURE"
    SHORTEN = "SHORTEN"


@dataclass(frozen=True)
class RateMatchPlan:
    """How one block's N_t coded bits become M_t transmitted bits."""

    mode: RateMatchMode
    n_mother: int
    m_tx: int
    affected: tuple[int, ...]
    forced_frozen_u: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"mode": self.mode.value, "n_mother": self.n_mother, "m_tx": self.m_tx}


def make_plan(n_mother: int, m_tx: int, mode: RateMatchMode | str) -> RateMatchPlan:
    """Build the rate-matching plan; mode must be consistent with the lengths."""
    mode = RateMatchMode(mode)
    if n_mother < 1 or n_mother & (n_mother - 1):
        raise ValueError("mother length must be a power of two")
    if m_tx < 1:
        raise ValueError("transmitted length must be positive")
    if mode is RateMatchMode.NONE:
        if m_tx != n_mother:
            raise ValueError("NONE requires M == N")
        return RateMatchPlan(mode, n_mother, m_tx, (), ())
    if mode is RateMatchMode.REPEAT:
        if m_tx <= n_mother:
            raise ValueError("REPEAT requires M > N")
        if m_tx > 2 * n_mother:
            raise ValueError("cannot repeat more than the full codeword")
        return RateMatchPlan(mode, n_mother, m_tx, tuple(range(m_tx - n_mother)), ())
    if m_tx >= n_mother:
        raise ValueError(f"{mode.value} requires M < N")
    if mode is RateMatchMode.PUNCTURE:
        return RateMatchPlan(mode, n_mother, m_tx, tuple(range(n_mother - m_tx)), ())
    # SHORTEN: drop the tail, freeze the bit-reversed images
    affected = tuple(range(m_tx, n_mother))
    rev = bit_reversal_perm(n_mother)
    forced = tuple(sorted(int(rev[j]) for j in affected))
    return RateMatchPlan(mode, n_mother, m_tx, affected, forced)


def apply_plan(plan: RateMatchPlan, x: np.ndarray) -> np.ndarray:
    """Map an N_t-length coded vector to the M_t transmitted bits."""
    x = np.asarray(x)
    if len(x) != plan.n_mother:
        raise ValueError("coded vector length mismatch")
    if plan.mode is RateMatchMode.NONE:
        return x.copy()
    if plan.mode is RateMatchMode.REPEAT:
        return np.concatenate([x, x[list(plan.affected)]])
    if plan.mode is RateMatchMode.PUNCTURE:
        return x[plan.n_mother - plan.m_tx :].copy()
    return x[: plan.m_tx].copy()


def de_rate_match(plan: RateMatchPlan, received_llr: np.ndarray) -> np.ndarray:
    """Soft inverse: spread M_t received LLRs back over the N_t coded positions.

    Punctured and shortened positions carry LLR 0; repeated positions sum.
    """
    llr = np.asarray(received_llr, dtype=np.float64)
    if len(llr) != plan.m_tx:
        raise ValueError("received vector length mismatch")
    if plan.mode is RateMatchMode.NONE:
        return llr.copy()
    if plan.mode is RateMatchMode.REPEAT:
        out = llr[: plan.n_mother].copy()
        out[list(plan.affected)] += llr[plan.n_mother :]
        return out
    out = np.zeros(plan.n_mother)
    if plan.mode is RateMatchMode.PUNCTURE:
        out[plan.n_mother - plan.m_tx :] = llr
    else:
        out[: plan.m_tx] = llr
    return out
