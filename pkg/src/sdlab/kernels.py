"""Backend selection for the hot kernels.

The compiled extension is used when it imported cleanly; set
SDLAB_PURE_PYTHON=1 to force the pure-Python fallback.  Both backends
implement the same contracts and return identical results.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None

_FORCE_PURE = os.environ.get("SDLAB_PURE_PYTHON", "") not in ("", "0")

if _kernels_cy is not None and not _FORCE_PURE:
    _impl = _kernels_cy
    BACKEND = "cython"
else:
    _impl = _kernels_py
    BACKEND = "python"

IntervalCoverEngine = _impl.IntervalCoverEngine


def available_backends() -> dict[str, object]:
    """Name -> kernel module, for parity tests and benchmarks."""
    out: dict[str, object] = {"python": _kernels_py}
    if _kernels_cy is not None:
        out["cython"] = _kernels_cy
    return out


def rank_over_q(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank over the rationals.

    The compiled int64 path bails out (returns -1) when entries pass its
    overflow guard; in that case the arbitrary-precision fallback runs.
    """
    nrows = len(rows)
    if nrows == 0 or len(rows[0]) == 0:
        return 0
    if _impl is _kernels_cy:
        r = _kernels_cy.rank_over_q_int64(rows)
        if r >= 0:
            return r
    return _kernels_py.rank_over_q(rows)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over the prime field F_p."""
    nrows = len(rows)
    if nrows == 0 or len(rows[0]) == 0:
        return 0
    if _impl is _kernels_cy and p < (1 << 30):
        return _kernels_cy.rank_mod_p(rows, p)
    return _kernels_py.rank_mod_p(rows, p)
