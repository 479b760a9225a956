"""Counting sheets by total degree, quasipolynomials and Hilbert series."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, factorial, lcm
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .errors import CapExceeded
from .forms import cone_inequalities
from .sheets import MonoidFamily

CACHE_VERSION = 1
DEFAULT_MAX_CANDIDATES = 10**8


class FitError(ValueError):
    """Raised when a quasipolynomial cannot be fitted or fails validation."""


class SeriesTailError(ValueError):
    """Raised when a truncated series times the denominator does not terminate."""


# -- counting --------------------------------------------------------------

def _count_naive(family: MonoidFamily, n: int, N: int, cap: int | None, backend=None) -> list[int]:
    spec = cone_inequalities(family, n)
    return kernels.count_by_degree(spec.matrix(), spec.dim, N, cap=cap, backend=backend)


def _poly_shift(p: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(p)
    if k < len(p):
        out[k:] = p[:len(p) - k]
    return out


def _count_factorized(family: MonoidFamily, n: int, N: int) -> list[int]:
    """Sum over row-sum and first-column profiles.

    Membership in the ordered and runner-up families depends only on the
    row sums ``g_i`` and the reduced sums ``gbar_i = g_i - g_i1``.  A row
    with reduced sum ``gbar`` spread over its ``n - 2`` non-first columns
    can be filled in ``C(gbar + n - 3, n - 3)`` ways; row 1 has ``n - 1``
    free cells.  Generating functions in the total degree are accumulated
    from the last row upwards with two-dimensional prefix sums.
    """
    L = N + 1
    if family is MonoidFamily.ORDERED:
        # state: g_i only
        w = [comb(g + n - 2, n - 2) for g in range(L)]
        F = [_poly_shift(_unit(L), g) * w[g] for g in range(L)]  # row n
        for _ in range(n - 2, 0, -1):
            acc = np.zeros(L, dtype=object)
            G = []
            for g in range(L):
                acc = acc + F[g]
                G.append(_poly_shift(acc, g) * w[g])
            F = G
        total = np.zeros(L, dtype=object)
        acc = np.zeros(L, dtype=object)
        for g in range(L):
            acc = acc + F[g]
            total = total + _poly_shift(acc, g) * w[g]
        return [int(v) for v in total]
    if family is not MonoidFamily.RUNNER_UP:
        raise ValueError("the factorized engine handles the ordered and runner-up families only")
    wb = [comb(b + n - 3, n - 3) for b in range(L)]
    # F[g][b]: rows i..n with g_i = g, gbar_i = b
    F = [[_poly_shift(_unit(L), g) * wb[b] if b <= g else None for b in range(L)] for g in range(L)]
    for _ in range(n - 2):
        S = _prefix2(F, L)
        F = [[_poly_shift(S[g][b], g) * wb[b] if b <= g else None for b in range(L)] for g in range(L)]
    # row 2 onwards is in F; close with row 1 (g_1 >= g_2, no reduced condition on row 1)
    S = _prefix2(F, L)
    w1 = [comb(g + n - 2, n - 2) for g in range(L)]
    total = np.zeros(L, dtype=object)
    for g in range(L):
        total = total + _poly_shift(S[g][g], g) * w1[g]
    return [int(v) for v in total]


def _unit(L: int) -> np.ndarray:
    p = np.zeros(L, dtype=object)
    p[0] = 1
    return p


def _prefix2(F, L):
    """``S[g][b] = sum of F[g'][b']`` over ``b' <= g' <= g`` and ``b' <= b``."""
    zero = np.zeros(L, dtype=object)
    S = [[zero] * L for _ in range(L)]
    col = [zero] * L  # running sum over g' <= g for each fixed b'
    for g in range(L):
        run = zero
        for b in range(L):
            if b <= g and F[g][b] is not None:
                col[b] = col[b] + F[g][b]
            run = run + col[b]
            S[g][b] = run
    return S


ENGINES = ("naive", "factorized")


def count_table(family: "MonoidFamily | str", n: int, N: int, engine: str = "auto",
                max_candidates: int | None = DEFAULT_MAX_CANDIDATES, use_cache: bool = True,
                backend=None) -> "CountTable":
    """Counts for ``G = 0..N``.  ``engine='auto'`` prefers the factorized counter."""
    family = MonoidFamily.parse(family)
    if N < 0:
        raise ValueError("N must be nonnegative")
    if engine == "auto":
        engine = "factorized" if family in (MonoidFamily.ORDERED, MonoidFamily.RUNNER_UP) else "naive"
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if use_cache:
        hit = _cache_load(family, n, engine)
        if hit is not None and len(hit.counts) > N:
            return CountTable(family, n, hit.counts[:N + 1], engine)
    if family is MonoidFamily.ALL:
        d = n * (n - 1)
        counts = [comb(G + d - 1, d - 1) for G in range(N + 1)]
    elif engine == "naive":
        counts = _count_naive(family, n, N, max_candidates, backend)
    else:
        counts = _count_factorized(family, n, N)
    table = CountTable(family, n, counts, engine)
    if use_cache:
        _cache_store(table)
    return table


def count_points(family: "MonoidFamily | str", n: int, G: int, engine: str = "auto", **kw) -> int:
    """Number of sheets of ``family`` on ``n`` teams with exactly ``G`` goals."""
    if G < 0:
        raise ValueError("G must be nonnegative")
    return count_table(family, n, G, engine=engine, **kw).counts[G]


@dataclass
class CountTable:
    family: MonoidFamily
    n: int
    counts: list[int]
    engine: str = ""

    def __post_init__(self):
        if self.counts and self.counts[0] != 1:
            raise ValueError("a count table must start with H(0) = 1")

    @property
    def N(self) -> int:
        return len(self.counts) - 1

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["G", "count"])
        for G, c in enumerate(self.counts):
            w.writerow([G, c])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, family: "MonoidFamily | str", n: int, engine: str = "") -> "CountTable":
        rows = list(csv.reader(io.StringIO(text)))
        if rows and rows[0] and rows[0][0] == "G":
            rows = rows[1:]
        counts = []
        for k, (G, c) in enumerate(rows):
            if int(G) != k:
                raise ValueError("count table rows must be G = 0, 1, 2, ...")
            counts.append(int(c))
        return cls(MonoidFamily.parse(family), n, counts, engine)


def cache_dir() -> Path:
    root = os.environ.get("SCORESHEETS_CACHE")
    return Path(root) if root else Path.home() / ".cache" / "scoresheets"


def _cache_path(family: MonoidFamily, n: int, engine: str) -> Path:
    return cache_dir() / f"counts-{family.value}-n{n}-{engine}-v{CACHE_VERSION}.csv"


def _cache_load(family, n, engine):
    path = _cache_path(family, n, engine)
    try:
        return CountTable.from_csv(path.read_text(), family, n, engine)
    except (OSError, ValueError):
        return None


def _cache_store(table: CountTable) -> None:
    path = _cache_path(table.family, table.n, table.engine)
    try:
        old = _cache_load(table.family, table.n, table.engine)
        if old is not None and len(old.counts) >= len(table.counts):
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(table.to_csv())
        tmp.replace(path)
    except OSError:
        pass


# -- quasipolynomials ------------------------------------------------------

@dataclass(frozen=True)
class Quasipolynomial:
    """``Q(k) = sum_j coeffs[k mod period][j] * k**j``."""

    period: int
    degree: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be positive")
        co = tuple(tuple(Fraction(c) for c in row) for row in self.coeffs)
        if len(co) != self.period or any(len(row) != self.degree + 1 for row in co):
            raise ValueError("coefficient table must be period x (degree + 1)")
        object.__setattr__(self, "coeffs", co)

    def residue(self, k: int) -> int:
        return ((k % self.period) + self.period) % self.period

    def __call__(self, k: int) -> Fraction:
        row = self.coeffs[self.residue(k)]
        acc = Fraction(0)
        for c in reversed(row):
            acc = acc * k + c
        return acc

    def leading_coefficients(self) -> list[Fraction]:
        return [row[-1] for row in self.coeffs]

    def leading_coefficient(self) -> Fraction:
        lead = set(self.leading_coefficients())
        if len(lead) != 1:
            raise FitError("leading coefficients differ between residue classes")
        return lead.pop()

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "coeffs": [[f"{c.numerator}/{c.denominator}" for c in row] for row in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: "dict | str") -> "Quasipolynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["period"], obj["degree"], tuple(tuple(Fraction(c) for c in row) for row in obj["coeffs"]))


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (ascending powers) of the polynomial through the points."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for t in range(m):
            coeffs[t] += scale * basis[t]
    return coeffs


def fit_quasipolynomial(table: "CountTable | Sequence[int]", period: int, degree: int,
                        start: int = 0, min_checks: int = 1) -> Quasipolynomial:
    """Exact fit per residue class, validated on every unused table entry.

    Each residue class uses its first ``degree + 1`` values with
    ``G >= start``; every later value must be reproduced exactly and at
    least ``min_checks`` of them must exist.
    """
    counts = table.counts if isinstance(table, CountTable) else list(table)
    rows = []
    checks = 0
    for c in range(period):
        Gs = [G for G in range(start, len(counts)) if G % period == c]
        if len(Gs) < degree + 1:
            raise FitError(f"residue {c}: need {degree + 1} values, have {len(Gs)}")
        fit_on = Gs[:degree + 1]
        poly = _interpolate(fit_on, [counts[G] for G in fit_on])
        rows.append(tuple(poly))
        for G in Gs[degree + 1:]:
            val = sum(a * G**j for j, a in enumerate(poly))
            if val != counts[G]:
                raise FitError(f"validation failed at G={G}: fitted {val}, table {counts[G]}")
            checks += 1
    if checks < min_checks:
        raise FitError("no table entries left to validate the fit")
    Q = Quasipolynomial(period, degree, tuple(rows))
    Q.leading_coefficient()
    return Q


def candidate_periods(ray_degrees: Sequence[int]) -> list[int]:
    """Divisors of the lcm of the ray degrees, in increasing order."""
    e = reduce(lcm, ray_degrees, 1)
    return [p for p in range(1, e + 1) if e % p == 0]


def fit_with_period_search(table: "CountTable | Sequence[int]", degree: int, periods: Sequence[int]):
    """Try ``periods`` in order; return the first fit that validates."""
    last = None
    for p in periods:
        try:
            return fit_quasipolynomial(table, p, degree)
        except FitError as exc:
            last = exc
    raise FitError(f"no period in {list(periods)} validates: {last}")


def multiplicity_from_quasipolynomial(Q: Quasipolynomial) -> Fraction:
    """Common leading coefficient times ``degree!``."""
    return Q.leading_coefficient() * factorial(Q.degree)


def check_functional_equation(Q: Quasipolynomial, v: int, window: Sequence[int] = range(-40, 41)) -> bool:
    """``Q(-k) == -Q(k - v)`` for every ``k`` in ``window``."""
    return all(Q(-k) == -Q(k - v) for k in window)


# -- Hilbert series --------------------------------------------------------

@dataclass(frozen=True)
class HilbertSeriesRep:
    numerator: tuple[int, ...]
    exponents: tuple[int, ...]

    def series(self, N: int) -> list[int]:
        """Expand ``numerator / prod(1 - t^e)`` up to ``t^N``."""
        s = [0] * (N + 1)
        for i, h in enumerate(self.numerator[:N + 1]):
            s[i] = h
        for e in self.exponents:
            for k in range(e, N + 1):
                s[k] += s[k - e]
        return s


def series_numerator(table: "CountTable | Sequence[int]", exponents: Sequence[int],
                     margin: int | None = None) -> HilbertSeriesRep:
    """Numerator of the Hilbert series over ``prod(1 - t^e)``.

    The truncated count series is multiplied by the denominator; at least
    ``margin`` (default: the denominator degree) trailing coefficients of
    the product inside the table range must vanish.
    """
    counts = table.counts if isinstance(table, CountTable) else list(table)
    exps = tuple(int(e) for e in exponents)
    if any(e < 1 for e in exps):
        raise ValueError("exponents must be positive")
    margin = sum(exps) if margin is None else margin
    prod_ = list(counts)
    for e in exps:
        prod_ = [prod_[k] - (prod_[k - e] if k >= e else 0) for k in range(len(prod_))]
    u = max((k for k, v in enumerate(prod_) if v != 0), default=0)
    if len(prod_) - 1 - u < margin:
        raise SeriesTailError(
            f"product does not terminate within the table: last nonzero at t^{u}, table ends at t^{len(prod_) - 1}")
    return HilbertSeriesRep(tuple(prod_[:u + 1]), exps)


def is_palindromic(h: Sequence[int]) -> bool:
    h = list(h)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return h == h[::-1]


__all__ = [
    "CountTable", "Quasipolynomial", "HilbertSeriesRep", "FitError", "SeriesTailError", "CapExceeded",
    "count_points", "count_table", "fit_quasipolynomial", "fit_with_period_search", "candidate_periods",
    "series_numerator", "multiplicity_from_quasipolynomial", "check_functional_equation", "is_palindromic",
    "cache_dir",
]
