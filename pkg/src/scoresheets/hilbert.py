"""The explicit Hilbert basis of the runner-up consistent monoid.

Every element has exactly one goal for team 1.  Kind A: teams ``1..r``
each score one goal against a team other than team 1, everyone else
scores nothing.  Kind B: additionally teams ``r+1..q`` each score one goal
against team 1.  Teams are 0-based in code, so "team 1" is index 0 and
``r``/``q`` count teams.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .forms import cone_inequalities
from .sheets import (MonoidFamily, ScoreSheet, cell_index, is_member, reduced_row_sums,
                     row_sums)


@dataclass(frozen=True)
class HBElement:
    """A basis sheet together with the data it was built from.

    ``targets[i]`` is the column in which row ``i`` (``i < r``) scores.
    """

    sheet: ScoreSheet
    kind: str
    r: int
    q: int | None
    targets: tuple[int, ...]

    def describe(self) -> str:
        jmap = ",".join(f"{i + 1}->{j + 1}" for i, j in enumerate(self.targets))
        q = f" q={self.q}" if self.q is not None else ""
        return f"{self.kind} r={self.r}{q} [{jmap}]"


def _build(n: int, targets: Sequence[int], q: int | None) -> ScoreSheet:
    e = [0] * (n * (n - 1))
    for i, j in enumerate(targets):
        e[cell_index(n, i, j)] = 1
    if q is not None:
        for i in range(len(targets), q):
            e[cell_index(n, i, 0)] = 1
    return ScoreSheet(n, tuple(e))


def _target_choices(n: int, r: int):
    per_row = [[j for j in range(1, n) if j != i] for i in range(r)]
    return itertools.product(*per_row)


def hb_elements(n: int) -> list[HBElement]:
    """All elements of both kinds with their construction data."""
    if n < 3:
        raise ValueError("n must be at least 3")
    out = []
    for r in range(1, n + 1):
        for t in _target_choices(n, r):
            out.append(HBElement(_build(n, t, None), "A", r, None, t))
    for r in range(1, n):
        for q in range(r + 1, n + 1):
            for t in _target_choices(n, r):
                out.append(HBElement(_build(n, t, q), "B", r, q, t))
    return out


def _sheets(elements: Iterable[HBElement]) -> list[ScoreSheet]:
    sheets = [h.sheet for h in elements]
    if len(set(sheets)) != len(sheets):
        raise AssertionError("duplicate basis element")
    return sorted(sheets, key=lambda s: s.entries)


def construct_A(n: int) -> list[ScoreSheet]:
    return _sheets(h for h in hb_elements(n) if h.kind == "A")


def construct_B(n: int) -> list[ScoreSheet]:
    return _sheets(h for h in hb_elements(n) if h.kind == "B")


def hilbert_basis(n: int) -> list[ScoreSheet]:
    return sorted(set(construct_A(n)) | set(construct_B(n)), key=lambda s: s.entries)


def hb_count_formulas(n: int) -> tuple[int, int, int]:
    """``(#A, #B, #HB)`` from the closed formulas.

    Raises if the two closed forms of ``#HB`` disagree.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    a = (n - 1) * sum((n - 2) ** i for i in range(n))
    b = (n - 1) * sum((n - 2) ** i * (n - i - 1) for i in range(n))
    total = (n - 1) * sum((n - 2) ** i * (n - i) for i in range(n))
    double = (n - 1) * sum((n - 2) ** i for k in range(n) for i in range(k + 1))
    if total != double or total != a + b:
        raise AssertionError(f"closed forms disagree at n={n}")
    return a, b, total


# -- decomposition ---------------------------------------------------------

def _smallest_target(S: ScoreSheet, i: int) -> int:
    for j in range(1, S.n):
        if j != i and S[i, j] > 0:
            return j
    raise AssertionError(f"row {i + 1} has no goal outside column 1")


def _sub(S: ScoreSheet, H: ScoreSheet) -> ScoreSheet:
    return ScoreSheet(S.n, tuple(a - b for a, b in zip(S.entries, H.entries)))


def decompose(S: ScoreSheet) -> list[HBElement]:
    """Write a runner-up consistent sheet as a sum of basis elements.

    Kind B elements are peeled off first until column 1 is empty, then kind
    A elements.  Ties are broken deterministically: in the first phase
    ``q`` is the last team with goals against team 1 and ``r`` the last
    team before it with none; in the second phase ``r`` is the last team
    whose row sum exceeds the next one.  Each row's goal is taken from its
    smallest admissible column.  Parts are returned in subtraction order.
    """
    n = S.n
    if n < 3 or not is_member(S, MonoidFamily.RUNNER_UP):
        raise ValueError("sheet is not runner-up consistent")
    parts: list[HBElement] = []
    rest = S
    while True:
        g = row_sums(rest)
        gb = reduced_row_sums(rest)
        above = [i for i in range(n) if g[i] > gb[i]]
        if not above:
            break
        q = max(above)
        r = max(i for i in range(q) if g[i] == gb[i])
        # r, q here are 0-based indices; the element uses team counts r+1, q+1
        t = tuple(_smallest_target(rest, i) for i in range(r + 1))
        H = _build(n, t, q + 1)
        parts.append(HBElement(H, "B", r + 1, q + 1, t))
        rest = _sub(rest, H)
        assert is_member(rest, MonoidFamily.RUNNER_UP), "remainder left the monoid"
    while any(rest.entries):
        g = row_sums(rest)
        a = [g[i] - (g[i + 1] if i + 1 < n else 0) for i in range(n)]
        r = max(i for i in range(n) if a[i] != 0)
        t = tuple(_smallest_target(rest, i) for i in range(r + 1))
        H = _build(n, t, None)
        parts.append(HBElement(H, "A", r + 1, None, t))
        rest = _sub(rest, H)
        assert is_member(rest, MonoidFamily.RUNNER_UP), "remainder left the monoid"
    return parts


def resum(parts: Iterable[HBElement | ScoreSheet], n: int) -> ScoreSheet:
    total = [0] * (n * (n - 1))
    for p in parts:
        s = p.sheet if isinstance(p, HBElement) else p
        total = [a + b for a, b in zip(total, s.entries)]
    return ScoreSheet(n, tuple(total))


# -- minimality ------------------------------------------------------------

def verify_minimality(candidates: Iterable[ScoreSheet], family: "MonoidFamily | str", n: int) -> bool:
    """True iff no difference of two distinct candidates lies in the monoid."""
    family = MonoidFamily.parse(family)
    X = np.array(sorted({c.entries for c in candidates}), dtype=np.int64).reshape(-1, n * (n - 1))
    if len(X) < 2:
        return True
    M = cone_inequalities(family, n).matrix()
    MX = X @ M.T
    for k in range(len(X)):
        ok = (X >= X[k]).all(axis=1) & (MX >= MX[k]).all(axis=1)
        ok[k] = False
        if ok.any():
            return False
    return True


# -- sampling --------------------------------------------------------------

def random_ordered_sheet(n: int, max_entry: int, rng: random.Random) -> ScoreSheet:
    """Uniform entries in ``0..max_entry``, teams relabelled by decreasing row sum."""
    rows = [[None if i == j else rng.randint(0, max_entry) for j in range(n)] for i in range(n)]
    sums = [sum(v for v in row if v is not None) for row in rows]
    perm = sorted(range(n), key=lambda i: -sums[i])
    return ScoreSheet.from_rows([[rows[a][b] for b in perm] for a in perm])


def sample_members(family: "MonoidFamily | str", n: int, count: int, max_entry: int = 3,
                   seed: int = 0, max_tries: int | None = None) -> list[ScoreSheet]:
    """Rejection-sample members of ``family`` from bounded ordered sheets."""
    family = MonoidFamily.parse(family)
    rng = random.Random(seed)
    max_tries = max_tries or 1000 * count
    out = []
    for _ in range(max_tries):
        S = random_ordered_sheet(n, max_entry, rng)
        if is_member(S, family):
            out.append(S)
            if len(out) == count:
                return out
    raise RuntimeError(f"acceptance too low: {len(out)} of {count} after {max_tries} tries")
