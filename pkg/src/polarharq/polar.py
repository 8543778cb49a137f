"""Polar encoding, SC decoding, and LLR-domain SCL decoding with CRC selection.

Conventions:
  * u-domain indices follow the successive-decoding order (bit i decoded at
    step i); the encoder matrix includes the bit-reversal permutation, so the
    butterfly runs in natural order and the codeword is permuted on the way
    out (and channel LLRs on the way in).
  * LLR > 0 means bit 0 is more likely; ties decide 0. +inf / -inf mark bits
    known to be 0 / 1.
  * Positions carry one of three roles: FROZEN (always 0), ACTIVE (data), or
    KNOWN (value supplied at decode time, e.g. relocated bits).

Decoders hold no state between calls; a spec is immutable and shareable.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .gf2lin import as_bits, bit_reversal_perm

FROZEN = _kernels.ROLE_FROZEN
ACTIVE = _kernels.ROLE_ACTIVE
KNOWN = _kernels.ROLE_KNOWN


@dataclass(frozen=True)
class PolarSpec:
    """Mother-code description: length and per-position roles."""

    n_len: int
    roles: np.ndarray  # (N,) int8 of FROZEN / ACTIVE / KNOWN

    def __post_init__(self):
        if self.n_len < 1 or self.n_len & (self.n_len - 1):
            raise ValueError("mother code length must be a power of two")
        roles = np.ascontiguousarray(self.roles, dtype=np.int8)
        if roles.shape != (self.n_len,):
            raise ValueError("roles must have one entry per position")
        object.__setattr__(self, "roles", roles)

    @classmethod
    def from_sets(cls, n_len: int, active, known=()) -> "PolarSpec":
        roles = np.full(n_len, FROZEN, dtype=np.int8)
        roles[list(active)] = ACTIVE
        if len(tuple(known)):
            roles[list(known)] = KNOWN
        return cls(n_len, roles)

    @property
    def active_positions(self) -> np.ndarray:
        return np.flatnonzero(self.roles == ACTIVE)

    @property
    def known_positions(self) -> np.ndarray:
        return np.flatnonzero(self.roles == KNOWN)

    @property
    def active_count(self) -> int:
        return int(np.sum(self.roles == ACTIVE))


@dataclass(frozen=True)
class DecodePath:
    """One list-decoder survivor: decisions for the decoded block plus its
    accumulated metric; ``parent`` indexes the seed path it descends from."""

    decisions: np.ndarray
    metric: float
    parent: int = 0


@dataclass(frozen=True)
class CrcConfig:
    """16-bit CRC parameters (MSB-first, no reflection)."""

    polynomial: int = 0x1021
    initial: int = 0xFFFF
    final_xor: int = 0x0000
    width: int = 16

    def __post_init__(self):
        if self.width != 16:
            raise ValueError("only 16-bit CRCs are supported")


def encode(u: np.ndarray, n_len: int | None = None) -> np.ndarray:
    """Codeword u @ G via the butterfly; identical to the gf2lin matrix product."""
    u = as_bits(u)
    if n_len is None:
        n_len = len(u)
    if len(u) != n_len or n_len & (n_len - 1) or n_len < 1:
        raise ValueError("input length must equal the power-of-two code length")
    c = u.copy()
    size = n_len
    while size > 1:
        half = size // 2
        view = c.reshape(-1, size)
        view[:, :half] ^= view[:, half:]
        size = half
    return c[bit_reversal_perm(n_len)]


def _tree_order(llr: np.ndarray, n_len: int) -> np.ndarray:
    """Permute codeword-order channel LLRs into butterfly tree order."""
    return np.ascontiguousarray(llr[..., bit_reversal_perm(n_len)], dtype=np.float64)


def _as_paths(values, n_paths: int, n_len: int, dtype) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype)
    if arr.ndim == 1:
        arr = np.broadcast_to(arr, (n_paths, n_len))
    if arr.shape != (n_paths, n_len):
        raise ValueError(f"expected shape ({n_paths}, {n_len}), got {arr.shape}")
    out = np.ascontiguousarray(arr)
    if not out.flags.writeable:
        out = out.copy()
    return out


def scl_decode(
    llr: np.ndarray,
    spec: PolarSpec,
    list_size: int,
    initial_paths: list[DecodePath] | None = None,
    known_values=None,
) -> list[DecodePath]:
    """List-decode one block; returns surviving paths sorted by metric.

    ``llr`` is (N,) or, when seeding from ``initial_paths``, (P, N) with one
    channel view per seed. ``known_values`` supplies the values consumed at
    KNOWN positions, (N,) or (P, N).
    """
    if list_size < 1:
        raise ValueError("list size must be >= 1")
    if initial_paths:
        seeds = np.array([p.metric for p in initial_paths], dtype=np.float64)
    else:
        seeds = np.zeros(1, dtype=np.float64)
    n_paths = len(seeds)
    llr = np.asarray(llr, dtype=np.float64)
    if llr.ndim == 1:
        llr = np.broadcast_to(llr, (n_paths, spec.n_len))
    chan = _tree_order(llr, spec.n_len)
    if known_values is None:
        known_values = np.zeros(spec.n_len, dtype=np.uint8)
    vals = _as_paths(known_values, n_paths, spec.n_len, np.uint8)
    decisions, metrics, parents = _kernels.decode_block(
        chan, spec.roles, vals, seeds, int(list_size)
    )
    return [
        DecodePath(decisions=decisions[i], metric=float(metrics[i]), parent=int(parents[i]))
        for i in range(decisions.shape[0])
    ]


def sc_decode(llr: np.ndarray, spec: PolarSpec, known_values=None) -> np.ndarray:
    """Successive cancellation decisions (all N u-domain bits)."""
    return scl_decode(llr, spec, 1, known_values=known_values)[0].decisions


def sc_bit_llrs(llr: np.ndarray, spec: PolarSpec, forced_u: np.ndarray) -> np.ndarray:
    """Decision LLRs at every position with all decisions forced to ``forced_u``.

    Genie-aided view of the decoder's internal bit-LLRs; used by the oracle
    cross-checks.
    """
    llr = np.asarray(llr, dtype=np.float64)
    chan = _tree_order(llr, spec.n_len)
    forced = np.ascontiguousarray(as_bits(forced_u))
    return _kernels.genie_leaf_llrs(chan, forced)


def crc_remainder(bits: np.ndarray, cfg: CrcConfig) -> int:
    """Run the CRC register over a bit sequence (MSB-first)."""
    bits = as_bits(bits)
    mask = (1 << cfg.width) - 1
    top = 1 << (cfg.width - 1)
    reg = cfg.initial & mask
    for b in bits:
        fed = ((reg & top) >> (cfg.width - 1)) ^ int(b)
        reg = (reg << 1) & mask
        if fed:
            reg ^= cfg.polynomial
    return reg ^ cfg.final_xor


def crc_attach(info: np.ndarray, cfg: CrcConfig = CrcConfig()) -> np.ndarray:
    """Append the CRC bits (MSB-first) to an info bit vector."""
    info = as_bits(info)
    rem = crc_remainder(info, cfg)
    crc_bits = np.array([(rem >> (cfg.width - 1 - i)) & 1 for i in range(cfg.width)], dtype=np.uint8)
    return np.concatenate([info, crc_bits])


def crc_check(data: np.ndarray, cfg: CrcConfig = CrcConfig()) -> bool:
    """True when the trailing CRC bits match the leading payload."""
    data = as_bits(data)
    if len(data) < cfg.width:
        return False
    return crc_remainder(data[: -cfg.width], cfg) == _bits_to_int(data[-cfg.width :])


def _bits_to_int(bits: np.ndarray) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | int(b)
    return out


def select_by_crc(candidates, cfg: CrcConfig = CrcConfig()):
    """Pick the lowest-metric candidate whose data passes the CRC.

    ``candidates`` is a metric-ascending list of (data bits, metric) pairs.
    Falls back to the metric-best candidate with a False flag when none pass.
    """
    candidates = list(candidates)
    if not candidates:
        raise ValueError("no candidates to select from")
    for bits, metric in candidates:
        if crc_check(bits, cfg):
            return bits, metric, True
    bits, metric = candidates[0]
    return bits, metric, False
