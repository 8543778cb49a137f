"""Decoder kernel backend selection.

The compiled extension is preferred; the numpy fallback is used when the
extension is unavailable. Set POLARHARQ_BACKEND=py or =c to force one.
"""
from __future__ import annotations

import os

from . import pyfallback
from .llrmath import add_llrs, boxplus, path_penalty, softplus

ROLE_FROZEN = pyfallback.ROLE_FROZEN
ROLE_ACTIVE = pyfallback.ROLE_ACTIVE
ROLE_KNOWN = pyfallback.ROLE_KNOWN

_forced = os.environ.get("POLARHARQ_BACKEND", "").lower()

if _forced in ("py", "python"):
    _impl = pyfallback
else:
    try:
        from . import _ckern as _impl  # type: ignore[no-redef]
    except ImportError:
        if _forced in ("c", "compiled"):
            raise
        _impl = pyfallback

BACKEND = _impl.BACKEND
decode_block = _impl.decode_block
genie_leaf_llrs = _impl.genie_leaf_llrs


def get_backend(name: str):
    """Return a specific backend module ('python' or 'compiled') for benchmarks."""
    if name == "python":
        return pyfallback
    if name == "compiled":
        from . import _ckern

        return _ckern
    raise ValueError(f"unknown backend {name!r}")
