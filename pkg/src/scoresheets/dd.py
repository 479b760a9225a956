"""Incremental double description for cones ``{y : a_i . y >= 0}``.

Rays are kept as primitive integer rows together with the bitmask of
inserted inequalities they satisfy with equality.  Two rays are adjacent
when their common zero set has at least ``d - 2`` members and no third
ray's zero set contains it.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import kernels, linalg
from .errors import CapExceeded

_SMALL = 2**20


def primitive_rows(M: np.ndarray) -> np.ndarray:
    if M.dtype == object:
        return np.array([linalg.primitive(r) for r in M], dtype=object).reshape(M.shape)
    g = np.gcd.reduce(np.abs(M), axis=1)
    g[g == 0] = 1
    return M // g[:, None]


def _narrow(R: np.ndarray) -> np.ndarray:
    if R.size == 0:
        return R.astype(np.int64)
    if R.dtype == object:
        big = max(abs(int(v)) for v in R.ravel())
        return R.astype(np.int64) if big < _SMALL else R
    return R if int(np.abs(R).max()) < _SMALL else R.astype(object)


class DoubleDescription:
    """Extreme rays of a pointed cone, updated one inequality at a time.

    ``rows[k]`` is the k-th inequality ever given; bit ``k`` of a zero set
    refers to it regardless of the order in which rows were inserted.
    """

    def __init__(self, rows: Sequence[Sequence[int]], order: Sequence[int] | None = None,
                 max_rays: int | None = None, backend=None):
        self.rows = [tuple(int(v) for v in r) for r in rows]
        if not self.rows:
            raise ValueError("no inequalities")
        self.d = len(self.rows[0])
        self.max_rays = max_rays
        self.backend = backend
        order = list(range(len(self.rows))) if order is None else list(order)
        basis: list[int] = []
        ech = linalg.Echelon(self.d)
        for i in order:
            if ech.add(self.rows[i]):
                basis.append(i)
                if len(basis) == self.d:
                    break
        if len(basis) < self.d:
            raise ValueError("inequalities have rank < dimension: cone is not pointed")
        B = np.array([self.rows[i] for i in basis], dtype=np.int64 if self._fits(basis) else object)
        det, adj = kernels.det_adj(B, backend=backend)
        sgn = 1 if det > 0 else -1
        d = self.d
        R = np.array([[sgn * int(adj[r][k]) for r in range(d)] for k in range(d)], dtype=object)
        self.R = _narrow(primitive_rows(R))
        self.zero = []
        for k in range(d):
            z = 0
            for pos, i in enumerate(basis):
                if pos != k:
                    z |= 1 << i
            self.zero.append(z)
        self.inserted = set(basis)
        for i in order:
            if i not in self.inserted:
                self._insert(i)

    def _fits(self, idx) -> bool:
        return all(abs(v) < 2**31 for i in idx for v in self.rows[i])

    def values(self, row: Sequence[int]) -> np.ndarray:
        return self.R.dot(np.asarray(row, dtype=self.R.dtype))

    def insert(self, row: Sequence[int]) -> int:
        """Add a new inequality; returns its row index."""
        self.rows.append(tuple(int(v) for v in row))
        i = len(self.rows) - 1
        self._insert(i)
        return i

    def _insert(self, i: int) -> None:
        self.inserted.add(i)
        vals = self.values(self.rows[i])
        pos = np.nonzero(vals > 0)[0]
        neg = np.nonzero(vals < 0)[0]
        zer = np.nonzero(vals == 0)[0]
        bit = 1 << i
        if len(neg) == 0:
            for r in zer:
                self.zero[r] |= bit
            return
        nwords = (len(self.rows) + 63) // 64
        pairs = kernels.adjacent_pairs(self.zero, nwords, pos, neg, self.d - 2, backend=self.backend)
        keep = np.concatenate([pos, zer]).astype(np.int64)
        zero = self.zero
        new_zero = [zero[r] | (bit if vals[r] == 0 else 0) for r in keep]
        R = self.R
        if pairs:
            P = np.array([p for p, _ in pairs])
            Q = np.array([q for _, q in pairs])
            if R.dtype != object and int(np.abs(vals).max()) * int(np.abs(R).max()) >= 2**62:
                R = R.astype(object)
                vals = vals.astype(object)
            new = vals[P][:, None] * R[Q] - vals[Q][:, None] * R[P]
            new = primitive_rows(new)
            new_zero += [(zero[p] & zero[q]) | bit for p, q in pairs]
            R = np.concatenate([R[keep], new.astype(R.dtype)])
        else:
            R = R[keep]
        self.R = _narrow(R)
        self.zero = new_zero
        if self.max_rays is not None and len(self.R) > self.max_rays:
            raise CapExceeded(f"ray count {len(self.R)} exceeds cap {self.max_rays}")

    def rays(self) -> list[tuple[int, ...]]:
        return sorted(tuple(int(v) for v in r) for r in self.R)
