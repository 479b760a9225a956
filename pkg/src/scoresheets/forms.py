"""Linear forms on sheet space, cone inequality systems and the Gorenstein witness."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Sequence

import numpy as np

from . import linalg
from .errors import NotPointed
from .sheets import MonoidFamily, ScoreSheet, all_subsets, cell_index, cells


@dataclass(frozen=True)
class LinearForm:
    """Integer functional on the ``n(n-1)`` off-diagonal cells."""

    n: int
    coeffs: tuple[int, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.n * (self.n - 1):
            raise ValueError("coefficient count does not match n")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, x: "ScoreSheet | Sequence[int]") -> int:
        if isinstance(x, ScoreSheet):
            if x.n != self.n:
                raise ValueError(f"dimension mismatch: form n={self.n}, sheet n={x.n}")
            x = x.entries
        elif len(x) != len(self.coeffs):
            raise ValueError("dimension mismatch")
        return sum(c * v for c, v in zip(self.coeffs, x) if c)

    @property
    def content(self) -> int:
        return reduce(gcd, (abs(c) for c in self.coeffs), 0)

    def is_primitive(self) -> bool:
        return self.content == 1

    def primitive(self) -> "LinearForm":
        g = self.content
        if g <= 1:
            return self
        return LinearForm(self.n, tuple(c // g for c in self.coeffs), self.label)

    def as_rows(self) -> list[list[int | None]]:
        return _form_rows(self)


def _form_rows(f: LinearForm) -> list[list[int | None]]:
    out = [[None] * f.n for _ in range(f.n)]
    for (i, j), c in zip(cells(f.n), f.coeffs):
        out[i][j] = c
    return out


def delta_form(n: int, i: int, j: int) -> LinearForm:
    """The coordinate form reading off ``g_ij``."""
    if i == j:
        raise ValueError("delta form needs i != j")
    coeffs = [0] * (n * (n - 1))
    coeffs[cell_index(n, i, j)] = 1
    return LinearForm(n, tuple(coeffs), f"delta[{i + 1},{j + 1}]")


def row_sum_form(n: int, i: int, P: Sequence[int] | None = None) -> LinearForm:
    """Goals of team ``i`` against the teams in ``P`` (default: everyone)."""
    P = range(n) if P is None else P
    coeffs = [0] * (n * (n - 1))
    for b in P:
        if b != i:
            coeffs[cell_index(n, i, b)] = 1
    return LinearForm(n, tuple(coeffs), f"g[{i + 1}]")


def sigma_form(n: int, P: Sequence[int], k: int) -> LinearForm:
    """Row sum of the k-th minus the (k+1)-th team of ``P`` inside ``P``.

    ``P`` is sorted ascending; ``k`` is 0-based with ``0 <= k < len(P) - 1``.
    """
    P = sorted(set(P))
    if len(P) < 2:
        raise ValueError("sigma form needs |P| >= 2")
    if not 0 <= k < len(P) - 1:
        raise ValueError(f"k={k} out of range for |P|={len(P)}")
    a, b = P[k], P[k + 1]
    coeffs = [0] * (n * (n - 1))
    for c in P:
        if c != a:
            coeffs[cell_index(n, a, c)] += 1
        if c != b:
            coeffs[cell_index(n, b, c)] -= 1
    label = "sigma[{" + ",".join(str(p + 1) for p in P) + f"}},{k + 1}]"
    return LinearForm(n, tuple(coeffs), label)


def _sub(f: LinearForm, g: LinearForm, label: str) -> LinearForm:
    return LinearForm(f.n, tuple(a - b for a, b in zip(f.coeffs, g.coeffs)), label)


@dataclass(frozen=True)
class ConeSpec:
    """A cone ``{x : sigma(x) >= 0 for every sigma in inequalities}`` with a grading."""

    family: MonoidFamily | None
    n: int
    inequalities: tuple[LinearForm, ...]
    grading: LinearForm
    facets_reduced: bool = False

    def __post_init__(self):
        forms = []
        for f in self.inequalities:
            if f.n != self.n:
                raise ValueError("form dimension does not match the cone")
            p = f.primitive()
            if p.content == 0:
                raise ValueError("zero form in inequality list")
            forms.append(p)
        object.__setattr__(self, "inequalities", tuple(forms))

    @property
    def dim(self) -> int:
        return self.n * (self.n - 1)

    def matrix(self) -> np.ndarray:
        return np.array([f.coeffs for f in self.inequalities], dtype=np.int64).reshape(-1, self.dim)

    def contains(self, x: "ScoreSheet | Sequence[int]") -> bool:
        return all(f(x) >= 0 for f in self.inequalities)

    def is_pointed(self) -> bool:
        return linalg.rank([f.coeffs for f in self.inequalities]) == self.dim

    def with_forms(self, forms, facets_reduced: bool) -> "ConeSpec":
        return replace(self, inequalities=tuple(forms), facets_reduced=facets_reduced)

    # -- export ------------------------------------------------------------

    def to_text(self) -> str:
        """Inequality matrix in the plain input style of common cone software."""
        lines = [f"amb_space {self.dim}", f"inequalities {len(self.inequalities)}"]
        lines += [" ".join(str(c) for c in f.coeffs) for f in self.inequalities]
        lines += ["grading", " ".join(str(c) for c in self.grading.coeffs)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "family": self.family.value if self.family else None,
            "n": self.n,
            "inequalities": [list(f.coeffs) for f in self.inequalities],
            "labels": [f.label for f in self.inequalities],
            "grading": list(self.grading.coeffs),
            "facets_reduced": self.facets_reduced,
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> "ConeSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        n = obj["n"]
        labels = obj.get("labels") or [""] * len(obj["inequalities"])
        forms = tuple(LinearForm(n, tuple(r), lab) for r, lab in zip(obj["inequalities"], labels))
        fam = MonoidFamily.parse(obj["family"]) if obj.get("family") else None
        return cls(fam, n, forms, LinearForm(n, tuple(obj["grading"])), bool(obj.get("facets_reduced", False)))

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "ConeSpec":
        toks = text.split()
        pos = 0
        dim = rows = None
        forms = []
        grading = None
        while pos < len(toks):
            key = toks[pos]
            if key == "amb_space":
                dim = int(toks[pos + 1])
                pos += 2
            elif key == "inequalities":
                rows = int(toks[pos + 1])
                pos += 2
                for _ in range(rows):
                    forms.append(tuple(int(t) for t in toks[pos:pos + dim]))
                    pos += dim
            elif key == "grading":
                grading = tuple(int(t) for t in toks[pos + 1:pos + 1 + dim])
                pos += 1 + dim
            else:
                raise ValueError(f"unexpected token {key!r}")
        if dim is None:
            raise ValueError("missing amb_space")
        if n is None:
            n = next(k for k in range(2, 64) if k * (k - 1) == dim)
        grading = grading or (1,) * dim
        return cls(None, n, tuple(LinearForm(n, f) for f in forms), LinearForm(n, grading))


def degree_form(n: int) -> LinearForm:
    return LinearForm(n, (1,) * (n * (n - 1)), "deg")


def degree1_form(n: int) -> LinearForm:
    return LinearForm(n, row_sum_form(n, 0).coeffs, "deg1")


def ordering_forms(n: int) -> list[LinearForm]:
    """``g_i - g_{i+1} >= 0`` for consecutive teams."""
    return [_sub(row_sum_form(n, i), row_sum_form(n, i + 1), f"g[{i + 1}]-g[{i + 2}]") for i in range(n - 1)]


def reduced_ordering_forms(n: int) -> list[LinearForm]:
    """Ordering of the row sums after team 0's row and column are deleted."""
    rest = list(range(1, n))
    return [
        _sub(row_sum_form(n, i, rest), row_sum_form(n, i + 1, rest), f"gbar[{i + 1}]-gbar[{i + 2}]")
        for i in range(1, n - 1)
    ]


def cone_inequalities(family: "MonoidFamily | str", n: int) -> ConeSpec:
    """The inequality system whose lattice points are exactly the family's sheets."""
    family = MonoidFamily.parse(family)
    if n < 2:
        raise ValueError("n must be at least 2")
    if family in (MonoidFamily.RUNNER_UP, MonoidFamily.CONSISTENT) and n < 3:
        raise ValueError(f"{family.value} cone needs n >= 3")
    nonneg = [delta_form(n, i, j) for i, j in cells(n)]
    if family is MonoidFamily.ALL:
        forms = nonneg
    elif family is MonoidFamily.ORDERED:
        forms = nonneg + ordering_forms(n)
    elif family is MonoidFamily.RUNNER_UP:
        forms = nonneg + ordering_forms(n) + reduced_ordering_forms(n)
    else:
        forms = [delta_form(n, i, j) for i, j in cells(n) if i > j]
        for P in all_subsets(n):
            forms.extend(sigma_form(n, P, k) for k in range(len(P) - 1))
    for f in forms:
        assert f.is_primitive(), f.label
    return ConeSpec(family, n, tuple(forms), degree_form(n))


def consistent_form_count(n: int) -> int:
    from math import comb
    return n * (n - 1) // 2 + sum(comb(n, k) * (k - 1) for k in range(2, n + 1))


def gorenstein_witness(n: int) -> ScoreSheet:
    """The sheet with 2 above the diagonal and 1 below it."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return ScoreSheet(n, tuple(2 if i < j else 1 for i, j in cells(n)))


@dataclass(frozen=True)
class GorensteinResult:
    status: str  # "found", "absent" or "inconclusive"
    witness: ScoreSheet | None = None

    def __bool__(self) -> bool:
        return self.status == "found"


def verify_gorenstein(spec: ConeSpec, search_bound: int = 3) -> GorensteinResult:
    """Look for an integral point on which every support form equals 1.

    The linear system ``sigma_i(x) = 1`` is solved exactly.  When the solution
    set is an affine space of positive dimension, integer points are searched
    among ``x0 + sum t_k b_k`` with ``|t_k| <= search_bound`` and the result is
    ``"inconclusive"`` if none is found there.
    """
    if not spec.is_pointed():
        raise NotPointed("cone is not pointed")
    if not spec.facets_reduced:
        raise ValueError("run polyhedra.irredundant_facets on the cone first")
    rows = [f.coeffs for f in spec.inequalities]
    sol = linalg.solve_affine(rows, [1] * len(rows), spec.dim)
    if sol is None:
        return GorensteinResult("absent")
    x0, basis = sol

    def accept(x):
        if all(Fraction(v).denominator == 1 for v in x):
            xi = tuple(int(v) for v in x)
            if all(v >= 0 for v in xi) and spec.contains(xi):
                return GorensteinResult("found", ScoreSheet(spec.n, xi))
        return None

    if not basis:
        return accept(x0) or GorensteinResult("absent")
    # every point of the affine space already has all facet values 1
    rng = range(-search_bound, search_bound + 1)
    for ts in itertools.product(rng, repeat=len(basis)):
        x = [a + sum(t * b[i] for t, b in zip(ts, basis)) for i, a in enumerate(x0)]
        hit = accept(x)
        if hit:
            return hit
    return GorensteinResult("inconclusive")


def standard_map(spec: ConeSpec, S: ScoreSheet) -> tuple[int, ...]:
    if not spec.facets_reduced:
        raise ValueError("the standard map is defined on support forms; reduce the cone first")
    if S.n != spec.n:
        raise ValueError(f"dimension mismatch: cone n={spec.n}, sheet n={S.n}")
    return tuple(f(S) for f in spec.inequalities)


def is_interior(spec: ConeSpec, S: ScoreSheet) -> bool:
    return all(v >= 1 for v in standard_map(spec, S))
