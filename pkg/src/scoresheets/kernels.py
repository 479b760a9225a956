"""Backend selection for the hot kernels.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_pykernels`` module is used.  Set ``SCORESHEETS_PURE_PYTHON=1``
to force the fallback.  Both backends produce identical results.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

BACKEND = "python"
if _compiled is not None and os.environ.get("SCORESHEETS_PURE_PYTHON") != "1":
    BACKEND = "cython"

_INT64_SAFE = 2**62


def available_backends() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.append("cython")
    return names


def _impl(backend: str | None):
    name = backend or BACKEND
    if name == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    if name == "python":
        return _pykernels
    raise ValueError(f"unknown backend {name!r}")


def count_by_degree(A, d: int, maxdeg: int, cap: int | None = None, backend=None) -> list[int]:
    """Histogram by total degree of lattice points of ``{x >= 0 : A x >= 0}``."""
    impl = _impl(backend)
    if impl is _compiled:
        return impl.count_by_degree(np.asarray(A, dtype=np.int64), d, maxdeg, -1 if cap is None else cap)
    return impl.count_by_degree(A, d, maxdeg, cap)


def enumerate_points(A, d: int, maxdeg: int, cap: int | None = None, backend=None) -> np.ndarray:
    """Lattice points of ``{x >= 0 : A x >= 0}`` with total degree <= maxdeg."""
    impl = _impl(backend)
    if impl is _compiled:
        return impl.enumerate_points(np.asarray(A, dtype=np.int64), d, maxdeg, -1 if cap is None else cap)
    pts = impl.enumerate_points(A, d, maxdeg, cap)
    return np.array(pts, dtype=np.int64).reshape(len(pts), d)


def adjacent_pairs(zero_sets: list[int], nwords: int, pos, neg, min_common: int, backend=None):
    """Adjacent (pos, neg) ray pairs; ``zero_sets`` are int bitmasks."""
    impl = _impl(backend)
    if impl is _compiled:
        words = np.zeros((len(zero_sets), max(nwords, 1)), dtype=np.uint64)
        mask = (1 << 64) - 1
        for r, z in enumerate(zero_sets):
            for w in range(nwords):
                words[r, w] = (z >> (64 * w)) & mask
        return impl.adjacent_pairs(words, np.asarray(pos, dtype=np.int64), np.asarray(neg, dtype=np.int64), min_common)
    return impl.adjacent_pairs(zero_sets, list(pos), list(neg), min_common)


def det_adj(M, backend=None):
    """Exact ``(det, adj)`` of a square integer matrix; ``adj`` is None if singular.

    The compiled path works in int64 with 128-bit intermediates and falls
    back to Python integers on overflow.
    """
    impl = _impl(backend)
    if impl is _compiled:
        arr = np.asarray(M)
        if arr.dtype != object and (arr.size == 0 or int(np.abs(arr).max()) < 2**31):
            try:
                return impl.det_adj(arr.astype(np.int64))
            except OverflowError:
                pass
    D, X = _pykernels.det_adj(M)
    if X is None:
        return 0, None
    big = max((abs(v) for row in X for v in row), default=0)
    return D, np.array(X, dtype=np.int64 if big < _INT64_SAFE else object)
