"""GF(2) matrix/vector algebra for polar coding.

Bit vectors and matrices are plain numpy uint8 arrays with entries in {0, 1}.
All indices are 0-based. ``transform_matrix(N)`` returns the encoder matrix
including the bit-reversal row permutation, so a vector's natural index order
is the successive-decoding order throughout the package.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np


class KernelKind(str, Enum):
    """Inter-transmission combining kernels."""

    IF = "IF"          # identity: no masking (incremental freezing)
    FL = "FL"          # first-xor-latest: every mask equals block 1
    ARIKAN = "ARIKAN"  # Kronecker powers of the transposed polar kernel


def as_bits(values) -> np.ndarray:
    """Coerce to a uint8 bit array, validating entries are 0/1."""
    arr = np.asarray(values, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ValueError("bit array entries must be 0 or 1")
    return arr


def kernel_f() -> np.ndarray:
    """The 2x2 lower-triangular polar kernel."""
    return np.array([[1, 0], [1, 1]], dtype=np.uint8)


def kron_power(mat: np.ndarray, n: int) -> np.ndarray:
    """n-th Kronecker power over GF(2); n=0 gives the 1x1 identity."""
    if n < 0:
        raise ValueError("Kronecker power must be >= 0")
    out = np.array([[1]], dtype=np.uint8)
    for _ in range(n):
        out = np.kron(out, mat).astype(np.uint8) % 2
    return out


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"length must be a power of two, got {n}")
    return n.bit_length() - 1


@lru_cache(maxsize=None)
def bit_reversal_perm(n_len: int) -> np.ndarray:
    """Permutation mapping index i to the bit-reversal of i over log2(n_len) bits.

    Cached and returned read-only; index with it, never mutate it.
    """
    n = _log2_exact(n_len)
    perm = np.zeros(n_len, dtype=np.int64)
    for i in range(n_len):
        r = 0
        v = i
        for _ in range(n):
            r = (r << 1) | (v & 1)
            v >>= 1
        perm[i] = r
    perm.setflags(write=False)
    return perm


def transform_matrix(n_len: int) -> np.ndarray:
    """Encoder matrix G = B * F^(x n): bit-reversal permutation times the Kronecker power.

    Self-inverse over GF(2): G @ G = I.
    """
    n = _log2_exact(n_len)
    f_pow = kron_power(kernel_f(), n)
    return f_pow[bit_reversal_perm(n_len), :]


def kernel_matrix(kind: KernelKind | str, t: int) -> np.ndarray:
    """Upper-triangular t x t combining kernel with unit diagonal.

    All kinds are nested: the leading t x t block of the size-s matrix equals
    the size-t matrix for every s > t.
    """
    kind = KernelKind(kind)
    if t < 1:
        raise ValueError("kernel size must be >= 1")
    if kind is KernelKind.IF:
        return np.eye(t, dtype=np.uint8)
    if kind is KernelKind.FL:
        mat = np.eye(t, dtype=np.uint8)
        mat[0, :] = 1
        return mat
    n = max(t - 1, 0).bit_length()  # ceil(log2 t)
    full = kron_power(kernel_f().T.copy(), n)
    return full[:t, :t].copy()


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """GF(2) matrix product."""
    a = as_bits(a)
    b = as_bits(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def mat_vec_mul(vec: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """Row vector times matrix over GF(2)."""
    vec = as_bits(vec)
    mat = as_bits(mat)
    if vec.shape[0] != mat.shape[0]:
        raise ValueError(f"dimension mismatch: ({vec.shape[0]},) @ {mat.shape}")
    return (vec.astype(np.int64) @ mat.astype(np.int64) % 2).astype(np.uint8)
