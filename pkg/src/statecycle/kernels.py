"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``STATECYCLE_PURE=1`` to force the pure-Python versions.
"""

from __future__ import annotations

import os

from . import _purepy

MODP = 2147483647
MODP_ALT = 2305843009213693951  # 2**61 - 1

BACKEND = "python"
_compiled = None
if os.environ.get("STATECYCLE_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        _compiled = None

_impl = _compiled if _compiled is not None else _purepy


def loop_histogram(crossings, n_arcs: int):
    if not len(crossings):
        import numpy as np

        counts = np.zeros((1, n_arcs + 2), dtype=np.int64)
        counts[0, n_arcs] = 1
        return counts
    return _impl.loop_histogram(crossings, n_arcs)


def rank_modp(indptr, indices, data, ncols: int, p: int = MODP) -> int:
    return _impl.rank_modp(indptr, indices, data, ncols, p)


def rank_exact(indptr, indices, data, ncols: int) -> int:
    """Rank over Q.  The compiled path is 64-bit and falls back on overflow."""
    if _compiled is not None:
        try:
            return _compiled.rank_int(indptr, indices, data, ncols)
        except OverflowError:
            pass
    return _purepy.rank_int(indptr, indices, data, ncols)
