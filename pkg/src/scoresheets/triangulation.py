"""Placing triangulations of rational cones.

Generators are placed one at a time.  While the generators placed so far
span a subspace of lower dimension, a new generator outside that span is
joined to every simplex; otherwise it is joined to the simplices of every
boundary facet it sees.  The restriction of a placing triangulation to a
face is the placing triangulation of the face's generators in the induced
order, so the simplices over a visible facet are obtained recursively from
the facet alone.  This lets volumes be aggregated face by face without
ever holding the full list of simplices.

Volumes are normalized so that a unimodular simplex has volume 1: each
recursion step works in coordinates of the lattice spanned by the current
face, and joining a generator at lattice height ``h`` multiplies volumes
by ``h``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

import time

import numpy as np

from . import kernels, linalg
from .dd import DoubleDescription
from .errors import CapExceeded


@dataclass
class Triangulation:
    """Explicit simplices; ``simplices[k]`` indexes into ``rays``."""

    rays: tuple[tuple[int, ...], ...]
    simplices: list[tuple[int, ...]]
    volumes: list[int]
    order: tuple[int, ...] = ()

    @property
    def total_volume(self) -> int:
        return sum(self.volumes)

    def is_unimodular(self) -> bool:
        return all(v == 1 for v in self.volumes)

    def volume_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = defaultdict(int)
        for v in self.volumes:
            hist[v] += 1
        return dict(sorted(hist.items()))

    def weighted_volume(self, degs: Sequence[int]) -> Fraction:
        """``sum |det| / prod(deg of the simplex's generators)``."""
        by_den: dict[int, int] = defaultdict(int)
        for simplex, vol in zip(self.simplices, self.volumes):
            by_den[prod(degs[i] for i in simplex)] += vol
        return sum((Fraction(v, den) for den, v in by_den.items()), Fraction(0))

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "simplices": [list(s) for s in self.simplices],
            "volumes": list(self.volumes),
        }


@dataclass
class TriangulationStats:
    """Aggregate of a triangulation: simplex count per volume and graded volume."""

    histogram: dict[int, int]
    weighted_volume: Fraction
    order: tuple[int, ...] = ()
    faces_visited: int = 0

    @property
    def count(self) -> int:
        return sum(self.histogram.values())

    @property
    def total_volume(self) -> int:
        return sum(v * c for v, c in self.histogram.items())

    def is_unimodular(self) -> bool:
        return set(self.histogram) == {1}

    def volume_histogram(self) -> dict[int, int]:
        return dict(sorted(self.histogram.items()))


class _StatsAgg:
    def __init__(self, degs):
        self.degs = degs

    def unit(self):
        return ({1: 1}, Fraction(1))

    def empty(self):
        return ({}, Fraction(0))

    def simplex(self, gids, vol):
        return ({vol: 1}, Fraction(vol, prod(self.degs[g] for g in gids)))

    def join(self, res, h, gid):
        hist, w = res
        return ({v * h: c for v, c in hist.items()}, w * h / self.degs[gid])

    def add(self, a, b):
        hist = dict(a[0])
        for v, c in b[0].items():
            hist[v] = hist.get(v, 0) + c
        return (hist, a[1] + b[1])


class _ListAgg:
    def unit(self):
        return [((), 1)]

    def empty(self):
        return []

    def simplex(self, gids, vol):
        return [(tuple(sorted(gids)), vol)]

    def join(self, res, h, gid):
        return [(tuple(sorted(s + (gid,))), v * h) for s, v in res]

    def add(self, a, b):
        return a + b


class _Placer:
    def __init__(self, agg, memo: bool, backend=None, deadline: float | None = None):
        self.agg = agg
        self.memo: dict | None = {} if memo else None
        self.backend = backend
        self.deadline = deadline
        self.calls = 0
        self.simplices_seen = 0
        self.max_volume_seen = 0

    def place(self, gens: list[tuple[int, tuple[int, ...]]]):
        """``gens``: ordered ``(id, coords)`` spanning ``Z^r`` rationally, ``r = len(coords)``."""
        key = None
        if self.memo is not None:
            key = tuple(g for g, _ in gens)
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        self.calls += 1
        if self.deadline is not None and self.calls % 256 == 0 and time.monotonic() > self.deadline:
            raise CapExceeded(
                f"triangulation budget exhausted after {self.calls} faces; "
                f"{self.simplices_seen} simplicial faces seen, largest volume {self.max_volume_seen}")
        res = self._place(gens)
        if key is not None:
            self.memo[key] = res
        return res

    def _place(self, gens):
        agg = self.agg
        if not gens:
            return agg.unit()
        r = len(gens[0][1])
        if r == 0:
            return agg.unit()
        if len(gens) == r:
            det, _ = kernels.det_adj(np.array([c for _, c in gens], dtype=object), backend=self.backend)
            if det == 0:
                raise ValueError("generators do not span the lattice dimension")
            self.simplices_seen += 1
            self.max_volume_seen = max(self.max_volume_seen, abs(det))
            return agg.simplex([g for g, _ in gens], abs(det))
        ech = linalg.Echelon(r)
        k = 0
        while len(ech) < r:
            if k >= len(gens):
                raise ValueError("generators do not span the lattice dimension")
            if ech.add(gens[k][1]):
                if len(ech) == r:
                    break
            k += 1
        prefix = gens[:k]
        gid, x = gens[k]
        if r == 1:
            normal = (1,) if x[0] > 0 else (-1,)
        else:
            normal = linalg.nullspace([g for _, g in prefix], r)[0]
            if linalg.dot(normal, x) < 0:
                normal = tuple(-v for v in normal)
        acc = agg.join(self.place(self._restrict(prefix, normal)), linalg.dot(normal, x), gid)
        if k + 1 == len(gens):
            return acc
        dd = DoubleDescription([g for _, g in gens[:k + 1]], backend=self.backend)
        for pos in range(k + 1, len(gens)):
            gid, y = gens[pos]
            vals = dd.values(y)
            for f in np.nonzero(vals < 0)[0]:
                mask = dd.zero[f]
                face = [gens[i] for i in range(pos) if mask >> i & 1]
                normal = tuple(int(v) for v in dd.R[f])
                sub = self.place(self._restrict(face, normal))
                acc = agg.add(acc, agg.join(sub, -int(vals[f]), gid))
            dd.insert(y)
        return acc

    @staticmethod
    def _restrict(face, normal):
        if len(normal) == 1:
            return [(g, ()) for g, _ in face]
        _, Ui = linalg.lattice_complement(normal)
        Ui = Ui[1:]
        return [(g, tuple(linalg.dot(row, c) for row in Ui)) for g, c in face]


def default_order(rays) -> list[int]:
    """The first linearly independent generators that span, then the rest, each in listed order."""
    ray_t = [tuple(int(v) for v in r) for r in getattr(rays, "rays", rays)]
    ech = linalg.Echelon(len(ray_t[0]))
    start = [i for i, r in enumerate(ray_t) if len(ech) < ech.ncols and ech.add(r)]
    chosen = set(start)
    return start + [i for i in range(len(ray_t)) if i not in chosen]


def _prepare(rays, order):
    ray_t = tuple(tuple(int(v) for v in r) for r in getattr(rays, "rays", rays))
    if not ray_t:
        raise ValueError("no generators")
    order = default_order(ray_t) if order is None else list(order)
    if sorted(order) != list(range(len(ray_t))):
        raise ValueError("order must be a permutation of the generators")
    if linalg.rank(ray_t) < len(ray_t[0]):
        raise ValueError("generators do not span the full space")
    return ray_t, order


def _starts_independent(ray_t, order) -> bool:
    d = len(ray_t[0])
    return linalg.rank([ray_t[i] for i in order[:d]]) == d


def triangulate(rays, order: Sequence[int] | None = None, method: str = "auto", backend=None) -> Triangulation:
    """Placing triangulation with generators inserted in ``order``.

    The default order starts with the first ``d`` linearly independent
    generators.  ``method`` picks the construction: ``"boundary"`` keeps the
    boundary complex explicitly and needs an order whose first ``d``
    generators are independent; ``"faces"`` recurses into visible facets
    and accepts any order.  Both give the same triangulation.
    """
    ray_t, order = _prepare(rays, order)
    if method == "auto":
        method = "boundary" if _starts_independent(ray_t, order) else "faces"
    if method == "boundary":
        return triangulate_by_boundary(ray_t, order, backend=backend)
    if method != "faces":
        raise ValueError(f"unknown method {method!r}")
    placer = _Placer(_ListAgg(), memo=False, backend=backend)
    res = placer.place([(i, ray_t[i]) for i in order])
    res.sort()
    return Triangulation(ray_t, [s for s, _ in res], [v for _, v in res], tuple(order))


def triangulation_stats(rays, degs: Sequence[int] | None = None, order: Sequence[int] | None = None,
                        time_budget: float | None = None, backend=None) -> TriangulationStats:
    """Volume histogram and graded volume of the placing triangulation.

    Same triangulation as :func:`triangulate`, aggregated face by face so
    that large triangulations never have to be stored.  Raises
    :class:`CapExceeded` when ``time_budget`` seconds run out.
    """
    ray_t, order = _prepare(rays, order)
    degs = list(degs) if degs is not None else [1] * len(ray_t)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    placer = _Placer(_StatsAgg(degs), memo=True, backend=backend, deadline=deadline)
    hist, w = placer.place([(i, ray_t[i]) for i in order])
    return TriangulationStats(dict(sorted(hist.items())), w, tuple(order), placer.calls)


# -- independent construction through the boundary complex -----------------

def _simplex_normals(cols: np.ndarray, backend=None):
    det, adj = kernels.det_adj(cols.T, backend=backend)
    if det == 0:
        return 0, None
    sgn = 1 if det > 0 else -1
    return abs(det), [linalg.primitive([sgn * int(v) for v in adj[i]]) for i in range(len(cols))]


def triangulate_by_boundary(rays, order: Sequence[int] | None = None, backend=None) -> Triangulation:
    """Placing triangulation kept as an explicit boundary complex.

    The first ``d`` generators in ``order`` must be linearly independent;
    every later generator is coned over the boundary facets it sees, found
    from their inward normals.  Determinants are exact.  Used to cross-check
    :func:`triangulate` on cones small enough to list.
    """
    ray_t, order = _prepare(rays, order)
    d = len(ray_t[0])
    if not _starts_independent(ray_t, order):
        raise ValueError("the first d generators in the order must be independent")
    V = np.array(ray_t, dtype=object)
    facets: dict[tuple[int, ...], tuple[int, ...]] = {}
    simplices, volumes = [], []

    def add_simplex(key):
        vol, normals = _simplex_normals(V[list(key)].astype(np.int64), backend)
        if vol == 0:
            raise AssertionError("degenerate simplex")
        simplices.append(key)
        volumes.append(vol)
        return normals

    key0 = tuple(sorted(order[:d]))
    for p, nv in enumerate(add_simplex(key0)):
        facets[key0[:p] + key0[p + 1:]] = nv
    for x in order[d:]:
        vis = [F for F, nv in facets.items() if linalg.dot(nv, ray_t[x]) < 0]
        for F in vis:
            del facets[F]
        for F in vis:
            key = tuple(sorted(F + (x,)))
            normals = add_simplex(key)
            for p, v in enumerate(key):
                if v == x:
                    continue
                fk = key[:p] + key[p + 1:]
                if fk in facets:
                    del facets[fk]
                else:
                    facets[fk] = normals[p]
    pairs = sorted(zip(simplices, volumes))
    return Triangulation(ray_t, [s for s, _ in pairs], [v for _, v in pairs], tuple(order))
