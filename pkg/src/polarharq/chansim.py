"""BPSK over AWGN with counter-based reproducible noise.

SNR is configured as Es/N0 in dB with sigma^2 = 1 / (2 * Es/N0_linear) per
real dimension; Eb/N0 is derived from the effective code rate where reported.
Noise is drawn from a Philox stream keyed by (seed, frame index), so frame i
sees identical noise regardless of worker scheduling.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelParams:
    """AWGN noise level per real dimension."""

    sigma2: float

    def __post_init__(self):
        if not self.sigma2 > 0:
            raise ValueError("noise variance must be positive")

    @classmethod
    def from_es_n0_db(cls, es_n0_db: float) -> "ChannelParams":
        return cls(sigma2=1.0 / (2.0 * 10.0 ** (es_n0_db / 10.0)))

    @property
    def es_n0_db(self) -> float:
        return 10.0 * np.log10(1.0 / (2.0 * self.sigma2))


def eb_n0_db(es_n0_db: float, rate: float) -> float:
    """Translate Es/N0 to Eb/N0 for a given information rate."""
    return es_n0_db - 10.0 * np.log10(rate)


def llr_mean_from_es_n0_db(es_n0_db: float) -> float:
    """Mean of the channel LLR for an all-zero BPSK symbol: 2/sigma^2."""
    return 4.0 * 10.0 ** (es_n0_db / 10.0)


def modulate(bits: np.ndarray) -> np.ndarray:
    """BPSK: bit 0 -> +1.0, bit 1 -> -1.0."""
    bits = np.asarray(bits)
    return 1.0 - 2.0 * bits.astype(np.float64)


class FrameRng:
    """Deterministic per-frame random source (Philox keyed by seed and frame)."""

    def __init__(self, seed: int, frame: int):
        key = np.array([seed, frame], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def bits(self, count: int) -> np.ndarray:
        return self._gen.integers(0, 2, size=count, dtype=np.uint8)

    def noise(self, count: int, sigma2: float) -> np.ndarray:
        return self._gen.normal(0.0, np.sqrt(sigma2), size=count)


def transmit(symbols: np.ndarray, sigma2: float, rng: FrameRng) -> np.ndarray:
    """Add white Gaussian noise from the frame's stream."""
    symbols = np.asarray(symbols, dtype=np.float64)
    return symbols + rng.noise(len(symbols), sigma2)


def llr(received: np.ndarray, sigma2: float) -> np.ndarray:
    """Channel LLRs for BPSK over AWGN: 2y / sigma^2."""
    if not sigma2 > 0:
        raise ValueError("noise variance must be positive")
    return 2.0 * np.asarray(received, dtype=np.float64) / sigma2
