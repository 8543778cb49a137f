"""Numpy LLR arithmetic with explicit +/-inf algebra.

Sign convention: LLR > 0 means bit 0 is more likely. +inf encodes a bit known
to be 0, -inf a bit known to be 1. These helpers never produce NaN from inf
inputs; contradictory perfect evidence (+inf added to -inf) cancels to 0.
"""
from __future__ import annotations

import numpy as np


def boxplus(a, b):
    """Exact check-node combination 2*atanh(tanh(a/2)*tanh(b/2)).

    Evaluated in the log domain as max(a+b, 0) + log1p(e^-|a+b|)
    - max(a, b) - log1p(e^-|a-b|), which is the same function but stays
    well conditioned for large arguments, where the tanh product sits within
    an ulp of 1 and atanh amplifies that ulp to order one.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    with np.errstate(invalid="ignore", over="ignore"):
        a_inf = np.isinf(a)
        b_inf = np.isinf(b)
        a_safe = np.where(a_inf, 0.0, a)
        b_safe = np.where(b_inf, 0.0, b)
        u = a_safe + b_safe
        out = (
            np.maximum(u, 0.0)
            + np.log1p(np.exp(-np.abs(u)))
            - np.maximum(a_safe, b_safe)
            - np.log1p(np.exp(-np.abs(a_safe - b_safe)))
        )
        sign = np.sign(a) * np.sign(b)
        # either side infinite: result is the other value, negated for -inf
        out = np.where(b_inf & ~a_inf, np.sign(b) * a, out)
        out = np.where(a_inf & ~b_inf, np.sign(a) * b, out)
        out = np.where(a_inf & b_inf, sign * np.inf, out)
        # an erased input erases the output exactly
        out = np.where((a == 0.0) | (b == 0.0), 0.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def add_llrs(a, b):
    """LLR sum; opposite infinities cancel to 0 instead of NaN."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    clash = np.isinf(a) & np.isinf(b) & (np.sign(a) != np.sign(b))
    out = np.where(clash, 0.0, np.where(clash, 0.0, a) + np.where(clash, 0.0, b))
    if out.ndim == 0:
        return float(out)
    return out


def softplus(x):
    """log(1 + exp(x)) computed stably, with softplus(+inf) = +inf."""
    x = np.asarray(x, dtype=np.float64)
    big = x > 0
    x_neg = np.where(big, -x, x)
    out = np.log1p(np.exp(x_neg)) + np.where(big, x, 0.0)
    out = np.where(np.isposinf(x), np.inf, out)
    out = np.where(np.isneginf(x), 0.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def path_penalty(lam, decision):
    """Metric increment for deciding ``decision`` against bit-LLR ``lam``.

    ln(1+exp(-|lam|)) when the decision agrees with the LLR sign,
    ln(1+exp(+|lam|)) when it disagrees; ln 2 at lam = 0.
    """
    lam = np.asarray(lam, dtype=np.float64)
    decision = np.asarray(decision)
    signed = np.where(decision == 0, -lam, lam)
    return softplus(signed)
