"""Exact polyhedral computations on score-sheet cones.

Extreme rays come from an incremental double description with the
combinatorial adjacency test; facets are certified with exactly checked
LP certificates; volumes come from a placing triangulation whose
determinants are computed exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .errors import CapExceeded, NotFullDimensional, NotPointed
from .dd import DoubleDescription
from .forms import ConeSpec, LinearForm, cone_inequalities, degree_form
from .sheets import MonoidFamily, ScoreSheet
from .triangulation import Triangulation, triangulate, triangulation_stats

log = logging.getLogger(__name__)

DEFAULT_MAX_RAYS = 100_000
DEFAULT_MAX_CANDIDATES = 10**8
DEFAULT_MAX_POINTS = 10**7


@dataclass(frozen=True)
class RayList:
    n: int
    rays: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def array(self) -> np.ndarray:
        return np.array(self.rays, dtype=np.int64).reshape(len(self.rays), self.n * (self.n - 1))

    def sheets(self) -> list[ScoreSheet]:
        return [ScoreSheet(self.n, r) for r in self.rays]

    def to_json(self) -> dict:
        return {"n": self.n, "rays": [list(r) for r in self.rays]}


# -- checks ----------------------------------------------------------------

def _rows(spec: ConeSpec) -> list[tuple[int, ...]]:
    return [f.coeffs for f in spec.inequalities]


def check_pointed(spec: ConeSpec) -> None:
    if not spec.is_pointed():
        raise NotPointed(f"inequality system of rank < {spec.dim}: cone is not pointed")


def _rationalize(x, den=10**6):
    return [Fraction(float(v)).limit_denominator(den) for v in x]


def _lp(c, A_ub, b_ub, bounds):
    from scipy.optimize import linprog

    res = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
    return res


def interior_point(spec: ConeSpec) -> tuple[int, ...]:
    """An integer point with every inequality strictly positive."""
    rows = _rows(spec)
    d = spec.dim
    A = np.array(rows, dtype=float)
    # maximize t subject to A x >= t, -1 <= x <= 1, t <= 1
    c = np.zeros(d + 1)
    c[-1] = -1.0
    A_ub = np.hstack([-A, np.ones((len(rows), 1))])
    res = _lp(c, A_ub, np.zeros(len(rows)), [(-1, 1)] * d + [(None, 1)])
    if res.status == 0 and -res.fun > 1e-9:
        x = linalg.integer_scale(_rationalize(res.x[:d]))
        if all(linalg.dot(r, x) > 0 for r in rows):
            return x
    raise NotFullDimensional("no strictly interior point found")


def _irredundant_witness(rows, i, keep, d):
    """Exact point ``x`` with rows[i]·x < 0 <= rows[j]·x for the kept j != i."""
    others = [rows[j] for j in keep if j != i]
    c = np.array(rows[i], dtype=float)
    A_ub = -np.array(others, dtype=float).reshape(len(others), d)
    res = _lp(c, A_ub, np.zeros(len(others)), [(-1, 1)] * d)
    if res.status != 0:
        return None, None
    if res.fun > -1e-9:
        return False, None
    for den in (10**3, 10**6, 10**9):
        x = linalg.integer_scale(_rationalize(res.x, den))
        if linalg.dot(rows[i], x) < 0 and all(linalg.dot(r, x) >= 0 for r in others):
            return True, x
    return None, None


def _redundancy_certificate(rows, i, keep, d):
    """Exact nonnegative multipliers writing rows[i] through the other kept rows."""
    others = [j for j in keep if j != i]
    if not others:
        return None
    from scipy.optimize import nnls

    B = np.array([rows[j] for j in others], dtype=float).T
    lam, resid = nnls(B, np.array(rows[i], dtype=float))
    if resid > 1e-6:
        return None
    for den in (10**3, 10**6):
        fr = [max(Fraction(0), f) for f in _rationalize(lam, den)]
        combo = [sum(fr[k] * rows[j][c] for k, j in enumerate(others)) for c in range(d)]
        if all(combo[c] == rows[i][c] for c in range(d)):
            return fr
    return None


def _facet_by_rays(rows, i, ray_list, d):
    tight = [r for r in ray_list if linalg.dot(rows[i], r) == 0]
    return linalg.rank(tight) == d - 1 if tight else False


def irredundant_facets(spec: ConeSpec) -> ConeSpec:
    """Drop every inequality implied by the others; keeps the original order.

    Each keep/drop decision carries an exactly verified certificate: a point
    violating only the inequality under test, or nonnegative multipliers
    expressing it through the remaining ones.  If an LP certificate cannot be
    made exact, the decision falls back to the extreme rays.
    """
    check_pointed(spec)
    interior_point(spec)
    rows = _rows(spec)
    d = spec.dim
    keep = []
    seen = set()
    for i, r in enumerate(rows):
        if r in seen:
            continue
        seen.add(r)
        keep.append(i)
    ray_cache = None
    for i in list(keep):
        verdict, _ = _irredundant_witness(rows, i, keep, d)
        if verdict is True:
            continue
        if verdict is False and _redundancy_certificate(rows, i, keep, d) is not None:
            keep.remove(i)
            continue
        if ray_cache is None:
            ray_cache = list(extreme_rays(spec).rays)
        log.info("falling back to extreme rays for inequality %d", i)
        if not _facet_by_rays(rows, i, ray_cache, d):
            keep.remove(i)
        else:
            # among identical facets only the first survives
            same = [j for j in keep if j < i and _facet_by_rays(rows, j, ray_cache, d)
                    and {tuple(r) for r in ray_cache if linalg.dot(rows[j], r) == 0}
                    == {tuple(r) for r in ray_cache if linalg.dot(rows[i], r) == 0}]
            if same:
                keep.remove(i)
    forms = [spec.inequalities[i] for i in keep]
    return spec.with_forms(forms, facets_reduced=True)


# -- double description ----------------------------------------------------

def extreme_rays(spec: ConeSpec, max_rays: int = DEFAULT_MAX_RAYS, order: Sequence[int] | None = None,
                 backend=None) -> RayList:
    """Primitive generators of the extreme rays of a pointed cone.

    Inequalities are inserted one at a time in ``order`` (default: the
    listed order), starting from the simplicial cone of the first ``d``
    linearly independent ones.
    """
    check_pointed(spec)
    rows = _rows(spec)
    if order is not None and sorted(order) != list(range(len(rows))):
        raise ValueError("order must be a permutation of the inequalities")
    dd = DoubleDescription(rows, order=order, max_rays=max_rays, backend=backend)
    return RayList(spec.n, tuple(dd.rays()))


def multiplicity(spec: ConeSpec, grading: LinearForm | None = None, rays: RayList | None = None,
                 order: Sequence[int] | None = None, backend=None) -> Fraction:
    """Normalized volume of the degree-one cross-section of the cone.

    Each simplex of a placing triangulation contributes
    ``|det| / prod(deg(v))`` over its generators; the grading must be
    primitive and positive on every extreme ray.
    """
    grading = grading or spec.grading
    if not grading.is_primitive():
        raise ValueError("grading must be primitive")
    if rays is None:
        rays = extreme_rays(spec, backend=backend)
    degs = [grading(r) for r in rays.rays]
    if any(g <= 0 for g in degs):
        raise ValueError("grading is not positive on every extreme ray")
    return triangulation_stats(rays, degs, order=order, backend=backend).weighted_volume


# -- bounded Hilbert basis oracle ------------------------------------------

@dataclass
class HilbertBasisResult:
    elements: list[ScoreSheet]
    degree_cap: int
    complete: bool
    certified: bool
    certified_bound: int | None = None
    enumerated: int = 0
    info: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.elements)


def _check_total_degree(spec: ConeSpec, grading: LinearForm | None):
    g = grading or spec.grading
    if g.coeffs != degree_form(spec.n).coeffs:
        raise ValueError("the bounded oracle enumerates by total degree only")


def parallelepiped_points(tri: Triangulation) -> list[tuple[int, ...]]:
    """Nonzero lattice points of the half-open parallelepipeds of the simplices.

    Together with the generators they generate the monoid of the cone:
    every lattice point is a nonnegative integer combination of its
    simplex's generators plus one parallelepiped point.  Unimodular
    simplices contribute nothing.
    """
    out: set[tuple[int, ...]] = set()
    for simplex, vol in zip(tri.simplices, tri.volumes):
        if vol == 1:
            continue
        cols = np.array([tri.rays[i] for i in simplex], dtype=object)
        det, adj = kernels.det_adj(cols.T)
        D = abs(det)
        sgn = 1 if det > 0 else -1
        # residues w with sum w_k v_k / D integral form the group generated
        # by the columns of the adjugate
        gens = [tuple((sgn * int(adj[r][k])) % D for r in range(len(simplex))) for k in range(len(simplex))]
        seen = {tuple([0] * len(simplex))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for w in frontier:
                for g in gens:
                    u = tuple((a + b) % D for a, b in zip(w, g))
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        for w in seen:
            if not any(w):
                continue
            num = [sum(w[k] * cols[k][c] for k in range(len(simplex))) for c in range(cols.shape[1])]
            assert all(v % D == 0 for v in num)
            out.add(tuple(v // D for v in num))
    return sorted(out)


def hilbert_degree_bound(spec: ConeSpec, rays: RayList, tri: Triangulation) -> int:
    """Largest degree of an irreducible element, certified.

    The generators and the parallelepiped points form a finite generating
    set; an element of it is reducible exactly when subtracting some other
    member leaves a nonzero lattice point of the cone.
    """
    A = spec.matrix().astype(object)
    gens = sorted(set(rays.rays) | set(parallelepiped_points(tri)), key=lambda g: (sum(g), g))
    best = 0
    for x in gens:
        if sum(x) <= best:
            continue
        reducible = False
        for g in gens:
            if sum(g) >= sum(x):
                break
            diff = np.array([a - b for a, b in zip(x, g)], dtype=object)
            if (A.dot(diff) >= 0).all():
                reducible = True
                break
        if not reducible:
            best = sum(x)
    return best


def _decomposable_all(points: np.ndarray, degs: np.ndarray, basis: np.ndarray) -> bool:
    """Independent generation check: every point is a sum of basis elements."""
    reach = {tuple([0] * points.shape[1])}
    index = sorted(range(len(points)), key=lambda k: degs[k])
    basis_t = [tuple(int(v) for v in b) for b in basis]
    for k in index:
        p = tuple(int(v) for v in points[k])
        if not any(p):
            continue
        ok = False
        for b in basis_t:
            diff = tuple(u - v for u, v in zip(p, b))
            if diff in reach:
                ok = True
                break
        if not ok:
            return False
        reach.add(p)
    return True


def hilbert_basis_bounded(spec: ConeSpec, D: int | None = None, grading: LinearForm | None = None,
                          max_candidates: int = DEFAULT_MAX_CANDIDATES, verify: bool | None = None,
                          certify: bool = True, max_points: int = DEFAULT_MAX_POINTS,
                          backend=None) -> HilbertBasisResult:
    """Irreducible elements of total degree <= D among the cone's lattice points.

    With ``D=None`` the cap starts at the largest extreme-ray degree and is
    raised to :func:`hilbert_degree_bound` of a placing triangulation.
    ``certified`` is True when ``D`` reaches that bound, i.e. nothing of
    higher degree can be irreducible.  ``certify=False`` skips the
    triangulation and stops at the largest ray degree.  ``complete`` reports an independent check that the returned
    set generates every enumerated point.
    """
    _check_total_degree(spec, grading)
    A = spec.matrix()
    d = spec.dim
    info = {}
    bound = None
    if D is None:
        rays = extreme_rays(spec, backend=backend)
        degs = [sum(r) for r in rays.rays]
        info["max_ray_degree"] = max(degs)
        D = max(degs)
        if certify:
            tri = triangulate(rays, backend=backend)
            bound = hilbert_degree_bound(spec, rays, tri)
            D = max(D, bound)
    # count first so that an oversized enumeration fails before allocating
    total = sum(kernels.count_by_degree(A, d, D, cap=max_candidates, backend=backend))
    if total > max_points:
        raise CapExceeded(f"{total} lattice points up to degree {D} exceed the cap of {max_points}")
    pts = kernels.enumerate_points(A, d, D, cap=max_candidates, backend=backend)
    degs_p = pts.sum(axis=1)
    AX = pts @ A.T
    basis_rows: list[np.ndarray] = []
    basis_A: list[np.ndarray] = []
    for level in range(1, D + 1):
        sel = np.nonzero(degs_p == level)[0]
        if len(sel) == 0:
            continue
        X = pts[sel]
        AXl = AX[sel]
        red = np.zeros(len(sel), dtype=bool)
        for h, ah in zip(basis_rows, basis_A):
            cand = ~red
            if not cand.any():
                break
            idx = np.nonzero(cand)[0]
            hit = (X[idx] >= h).all(axis=1) & (AXl[idx] >= ah).all(axis=1)
            red[idx[hit]] = True
        for k in np.nonzero(~red)[0]:
            basis_rows.append(X[k])
            basis_A.append(AXl[k])
    basis = np.array(basis_rows, dtype=np.int64).reshape(len(basis_rows), d)
    if verify is None:
        verify = len(pts) <= 1_000_000
    complete = _decomposable_all(pts, degs_p, basis) if verify else True
    info["verified_generation"] = bool(verify)
    elements = [ScoreSheet(spec.n, tuple(int(v) for v in b)) for b in basis]
    elements.sort(key=lambda s: (sum(s.entries), s.entries))
    if bound is None:
        certified = False
    else:
        certified = D >= bound
    return HilbertBasisResult(elements, D, complete, certified, bound, len(pts), info)


# -- runner-up polytope checks ---------------------------------------------

@dataclass
class WidthOneReport:
    n: int
    lattice_points: int
    width_one: bool
    equals_hilbert_basis: bool
    all_vertices: bool | None
    facet_count: int

    @property
    def ok(self) -> bool:
        return self.width_one and self.equals_hilbert_basis and self.all_vertices is not False


def polytope_lattice_points(n: int, backend=None) -> list[ScoreSheet]:
    """Runner-up consistent sheets with exactly one goal for team 1."""
    spec = cone_inequalities(MonoidFamily.RUNNER_UP, n)
    pts = kernels.enumerate_points(spec.matrix(), spec.dim, n, backend=backend)
    first = pts[:, : n - 1].sum(axis=1)
    return [ScoreSheet(n, tuple(int(v) for v in p)) for p in pts[first == 1]]


def width_one_and_vertex_check(n: int, check_vertices: bool = True, backend=None) -> WidthOneReport:
    """Width one of the runner-up polytope w.r.t. its facets, and its lattice points."""
    from .hilbert import construct_A, construct_B

    if n < 3:
        raise ValueError("n must be at least 3")
    spec = irredundant_facets(cone_inequalities(MonoidFamily.RUNNER_UP, n))
    points = polytope_lattice_points(n, backend=backend)
    width_one = all(f(p) in (0, 1) for f in spec.inequalities for p in points)
    hb = set(construct_A(n)) | set(construct_B(n))
    equal = set(points) == hb and len(points) == len(hb)
    all_vertices = None
    if check_vertices:
        rays = set(extreme_rays(spec, backend=backend).rays)
        all_vertices = {p.entries for p in points} == rays
    return WidthOneReport(n, len(points), width_one, equal, all_vertices, len(spec.inequalities))
