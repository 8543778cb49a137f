"""Pure-numpy successive cancellation list decoding kernels.

Mirrors the compiled extension in ``_ckern.pyx``; both expose the same
``decode_block`` / ``genie_leaf_llrs`` contract so the caller can swap
backends. LLR and partial-sum trees use the depth-packed layout: depth d of an
n-stage tree occupies ``off(d) = 2N - (2N >> d)`` with length ``N >> d``;
depth 0 holds the (tree-ordered) channel LLRs and depth n the current leaf.
"""
from __future__ import annotations

import numpy as np

from .llrmath import boxplus, path_penalty

BACKEND = "python"

ROLE_FROZEN = 0
ROLE_ACTIVE = 1
ROLE_KNOWN = 2


def _offsets(n_len: int) -> np.ndarray:
    two_n = 2 * n_len
    return np.array([two_n - (two_n >> d) for d in range(n_len.bit_length())], dtype=np.int64)


def _refresh(lmem: np.ndarray, cmem: np.ndarray, phi: int, n: int, n_len: int, off: np.ndarray) -> None:
    """Recompute the LLR tree depths invalidated by moving to leaf ``phi``."""
    if phi == 0:
        first = 1
    else:
        first = n - (phi & -phi).bit_length() + 1
    for d in range(first, n + 1):
        half = n_len >> d
        src = off[d - 1]
        dst = off[d]
        a = lmem[:, src : src + half]
        b = lmem[:, src + half : src + 2 * half]
        if (phi >> (n - d)) & 1:
            c = cmem[:, 0, dst : dst + half]
            res = np.where(c == 1, -a, a)
            clash = np.isinf(res) & np.isinf(b) & (np.sign(res) != np.sign(b))
            res = np.where(clash, 0.0, np.where(clash, 0.0, res) + np.where(clash, 0.0, b))
            lmem[:, dst : dst + half] = res
        else:
            lmem[:, dst : dst + half] = boxplus(a, b)


def _commit(cmem: np.ndarray, phi: int, n: int, n_len: int, off: np.ndarray, beta: np.ndarray) -> None:
    """Write leaf decisions ``beta`` (one per path) and fold partial sums upward."""
    d = n
    pos = phi
    cmem[:, pos & 1, off[n]] = beta
    while d > 0 and (pos & 1):
        half = n_len >> d
        src = off[d]
        left = cmem[:, 0, src : src + half]
        right = cmem[:, 1, src : src + half]
        d -= 1
        pos >>= 1
        dst = off[d]
        cmem[:, pos & 1, dst : dst + half] = left ^ right
        cmem[:, pos & 1, dst + half : dst + 2 * half] = right


def decode_block(
    chan_llrs: np.ndarray,
    roles: np.ndarray,
    known_vals: np.ndarray,
    seed_metrics: np.ndarray,
    list_cap: int,
):
    """List-decode one block of N = chan_llrs.shape[1] synthesized channels.

    chan_llrs: (P0, N) float64, already permuted to tree order, one row per
    seed path. roles: (N,) int8. known_vals: (P0, N) uint8 values consumed at
    KNOWN positions. seed_metrics: (P0,) starting metrics.

    Returns (decisions (P, N) uint8, metrics (P,) float64, parents (P,) int64)
    sorted ascending by metric; ties keep creation order (parent-major,
    0-extension before 1-extension). P <= list_cap.
    """
    chan_llrs = np.ascontiguousarray(chan_llrs, dtype=np.float64)
    p0, n_len = chan_llrs.shape
    if p0 > list_cap:
        raise ValueError("more seed paths than the list cap")
    n = n_len.bit_length() - 1
    if 1 << n != n_len:
        raise ValueError("block length must be a power of two")
    off = _offsets(n_len)

    lmem = np.zeros((p0, 2 * n_len - 1), dtype=np.float64)
    lmem[:, :n_len] = chan_llrs
    cmem = np.zeros((p0, 2, 2 * n_len - 1), dtype=np.uint8)
    decisions = np.zeros((p0, n_len), dtype=np.uint8)
    vals = np.ascontiguousarray(known_vals, dtype=np.uint8)
    metrics = np.asarray(seed_metrics, dtype=np.float64).copy()
    parents = np.arange(p0, dtype=np.int64)

    for phi in range(n_len):
        _refresh(lmem, cmem, phi, n, n_len, off)
        lam = lmem[:, off[n]]
        role = int(roles[phi])
        if role == ROLE_ACTIVE:
            pen0 = path_penalty(lam, 0)
            pen1 = path_penalty(lam, 1)
            cand = np.empty(2 * len(metrics))
            cand[0::2] = metrics + pen0
            cand[1::2] = metrics + pen1
            order = np.argsort(cand, kind="stable")[: min(list_cap, cand.size)]
            src = order // 2
            beta = (order & 1).astype(np.uint8)
            lmem = lmem[src]
            cmem = cmem[src]
            vals = vals[src]
            decisions = decisions[src]
            parents = parents[src]
            metrics = cand[order]
            decisions[:, phi] = beta
        else:
            beta = np.zeros(len(metrics), dtype=np.uint8) if role == ROLE_FROZEN else vals[:, phi]
            metrics = metrics + path_penalty(lam, beta)
            decisions[:, phi] = beta
        _commit(cmem, phi, n, n_len, off, beta)

    order = np.argsort(metrics, kind="stable")
    return decisions[order], metrics[order], parents[order]


def genie_leaf_llrs(chan_llrs: np.ndarray, forced_u: np.ndarray) -> np.ndarray:
    """Per-position decision LLRs with every decision forced to ``forced_u``."""
    chan_llrs = np.ascontiguousarray(chan_llrs, dtype=np.float64)
    n_len = chan_llrs.shape[0]
    n = n_len.bit_length() - 1
    if 1 << n != n_len:
        raise ValueError("block length must be a power of two")
    off = _offsets(n_len)
    lmem = np.zeros((1, 2 * n_len - 1), dtype=np.float64)
    lmem[0, :n_len] = chan_llrs
    cmem = np.zeros((1, 2, 2 * n_len - 1), dtype=np.uint8)
    out = np.zeros(n_len, dtype=np.float64)
    forced = np.asarray(forced_u, dtype=np.uint8)
    for phi in range(n_len):
        _refresh(lmem, cmem, phi, n, n_len, off)
        out[phi] = lmem[0, off[n]]
        _commit(cmem, phi, n, n_len, off, forced[phi : phi + 1])
    return out
