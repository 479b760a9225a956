"""Score sheets and the membership predicates of the monoid chain.

A score sheet on ``n`` teams is stored as a flat tuple of the ``n(n-1)``
off-diagonal goal counts in row-major order with the diagonal skipped::

    (g_12, g_13, ..., g_1n, g_21, g_23, ..., g_n,n-1)

Every module (linear forms, cones, enumeration kernels) uses this same
coordinate order.  Team indices in the Python API are 0-based.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence


class MonoidFamily(enum.Enum):
    ALL = "all"
    ORDERED = "ordered"
    RUNNER_UP = "runner-up"
    CONSISTENT = "consistent"

    @classmethod
    def parse(cls, name: "str | MonoidFamily") -> "MonoidFamily":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {"s": "all", "m": "ordered", "o": "ordered", "r": "runner-up", "c": "consistent", "runnerup": "runner-up"}
        key = aliases.get(key, key)
        for fam in cls:
            if fam.value == key:
                return fam
        raise ValueError(f"unknown monoid family {name!r}")


def cell_index(n: int, i: int, j: int) -> int:
    """Flat coordinate of cell ``(i, j)``, ``i != j``."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"no off-diagonal cell ({i}, {j}) for n={n}")
    return i * (n - 1) + (j if j < i else j - 1)


def cells(n: int) -> list[tuple[int, int]]:
    """All off-diagonal cells in flattening order."""
    return [(i, j) for i in range(n) for j in range(n) if i != j]


@dataclass(frozen=True)
class ScoreSheet:
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a score sheet needs at least 2 teams")
        entries = tuple(int(v) for v in self.entries)
        if len(entries) != self.n * (self.n - 1):
            raise ValueError(f"expected {self.n * (self.n - 1)} entries, got {len(entries)}")
        if any(v < 0 for v in entries):
            raise ValueError("goal counts must be nonnegative")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def zero(cls, n: int) -> "ScoreSheet":
        return cls(n, (0,) * (n * (n - 1)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ScoreSheet":
        """Build from an ``n x n`` table; diagonal entries are ignored."""
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("table must be square")
        return cls(n, tuple(rows[i][j] for i, j in cells(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[cell_index(self.n, i, j)]

    def rows(self) -> list[list[int | None]]:
        n = self.n
        out = [[None] * n for _ in range(n)]
        for (i, j), v in zip(cells(n), self.entries):
            out[i][j] = v
        return out

    def __add__(self, other: "ScoreSheet") -> "ScoreSheet":
        return add(self, other)

    def __str__(self) -> str:
        return format_text(self)


def row_sums(S: ScoreSheet) -> tuple[int, ...]:
    k = S.n - 1
    e = S.entries
    return tuple(sum(e[i * k:(i + 1) * k]) for i in range(S.n))


def reduced_row_sums(S: ScoreSheet) -> tuple[int, ...]:
    """Row sums after removing team 0's column (team 0's own sum is kept)."""
    g = row_sums(S)
    return (g[0],) + tuple(g[i] - S[i, 0] for i in range(1, S.n))


def degree(S: ScoreSheet) -> int:
    return sum(S.entries)


def degree1(S: ScoreSheet) -> int:
    return row_sums(S)[0]


def principal_submatrix(S: ScoreSheet, P: Iterable[int]) -> ScoreSheet:
    P = sorted(set(P))
    if len(P) < 2:
        raise ValueError("a principal submatrix needs at least 2 teams")
    if P[0] < 0 or P[-1] >= S.n:
        raise IndexError("team index out of range")
    return ScoreSheet(len(P), tuple(S[a, b] for a in P for b in P if a != b))


def _is_nonincreasing(v: Sequence[int]) -> bool:
    return all(v[i] >= v[i + 1] for i in range(len(v) - 1))


def _subset_sums_ordered(S: ScoreSheet, P: Sequence[int]) -> bool:
    sums = [sum(S[a, b] for b in P if b != a) for a in P]
    return _is_nonincreasing(sums)


def first_violation(S: ScoreSheet, family: "MonoidFamily | str"):
    """The first team subset whose principal submatrix is not ordered.

    Returns ``None`` for members; otherwise a sorted tuple of team indices.
    Subsets are checked in the order of their bitmask.
    """
    family = MonoidFamily.parse(family)
    n = S.n
    if family is MonoidFamily.ALL:
        return None
    if family in (MonoidFamily.RUNNER_UP, MonoidFamily.CONSISTENT) and n < 3:
        raise ValueError(f"{family.value} sheets need n >= 3")
    if not _is_nonincreasing(row_sums(S)):
        return tuple(range(n))
    if family is MonoidFamily.ORDERED:
        return None
    if family is MonoidFamily.RUNNER_UP:
        rest = tuple(range(1, n))
        return None if _subset_sums_ordered(S, rest) else rest
    for mask in range(1, 1 << n):
        P = [i for i in range(n) if mask >> i & 1]
        if len(P) >= 2 and not _subset_sums_ordered(S, P):
            return tuple(P)
    return None


def violating_pair(S: ScoreSheet, P: Sequence[int]) -> tuple[int, int, int, int] | None:
    """First consecutive ``(a, b, sum_a, sum_b)`` in ``P`` whose sums increase."""
    sums = [sum(S[a, b] for b in P if b != a) for a in P]
    for k in range(len(P) - 1):
        if sums[k] < sums[k + 1]:
            return P[k], P[k + 1], sums[k], sums[k + 1]
    return None


def is_member(S: ScoreSheet, family: "MonoidFamily | str") -> bool:
    return first_violation(S, family) is None


def add(S: ScoreSheet, T: ScoreSheet) -> ScoreSheet:
    if S.n != T.n:
        raise ValueError(f"dimension mismatch: n={S.n} vs n={T.n}")
    return ScoreSheet(S.n, tuple(a + b for a, b in zip(S.entries, T.entries)))


def checked_sub(S: ScoreSheet, T: ScoreSheet, family: "MonoidFamily | str") -> ScoreSheet | None:
    """``S - T`` if it is a sheet of ``family``, else ``None``."""
    if S.n != T.n:
        raise ValueError(f"dimension mismatch: n={S.n} vs n={T.n}")
    diff = tuple(a - b for a, b in zip(S.entries, T.entries))
    if any(v < 0 for v in diff):
        return None
    D = ScoreSheet(S.n, diff)
    return D if is_member(D, family) else None


# -- text and JSON formats -------------------------------------------------

def format_text(S: ScoreSheet) -> str:
    lines = [str(S.n)]
    for row in S.rows():
        lines.append(" ".join("*" if v is None else str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> ScoreSheet:
    sheets = parse_text_many(text)
    if len(sheets) != 1:
        raise ValueError(f"expected one sheet, found {len(sheets)}")
    return sheets[0]


def parse_text_many(text: str) -> list[ScoreSheet]:
    """Parse one or more sheets; blocks may be separated by blank lines."""
    tokens_by_line = [ln.split() for ln in text.splitlines()]
    tokens_by_line = [t for t in tokens_by_line if t and not t[0].startswith("#")]
    out = []
    pos = 0
    while pos < len(tokens_by_line):
        head = tokens_by_line[pos]
        if len(head) != 1:
            raise ValueError(f"expected team count, got {' '.join(head)!r}")
        n = int(head[0])
        body = tokens_by_line[pos + 1:pos + 1 + n]
        if len(body) != n:
            raise ValueError("truncated sheet")
        rows = []
        for i, toks in enumerate(body):
            if len(toks) != n:
                raise ValueError(f"row {i + 1} has {len(toks)} fields, expected {n}")
            row = []
            for j, tok in enumerate(toks):
                if i == j:
                    if tok != "*":
                        raise ValueError(f"diagonal entry of row {i + 1} must be '*'")
                    row.append(None)
                else:
                    v = int(tok)
                    if v < 0:
                        raise ValueError("goal counts must be nonnegative")
                    row.append(v)
            rows.append(row)
        out.append(ScoreSheet.from_rows(rows))
        pos += n + 1
    return out


def to_json(S: ScoreSheet) -> dict:
    return {"n": S.n, "rows": S.rows()}


def from_json(obj: dict | str) -> ScoreSheet:
    if isinstance(obj, str):
        obj = json.loads(obj)
    sheet = ScoreSheet.from_rows(obj["rows"])
    if sheet.n != obj["n"]:
        raise ValueError("'n' does not match the table size")
    return sheet


def all_subsets(n: int, min_size: int = 2):
    """Team subsets of size >= min_size, ordered by bitmask."""
    for mask in range(1, 1 << n):
        P = tuple(i for i in range(n) if mask >> i & 1)
        if len(P) >= min_size:
            yield P


def sheets_of_degree(n: int, G: int):
    """Every sheet on ``n`` teams with exactly ``G`` goals (small cases only)."""
    d = n * (n - 1)

    def comps(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in comps(total - first, parts - 1):
                yield (first,) + rest

    for e in comps(G, d):
        yield ScoreSheet(n, e)


__all__ = [
    "MonoidFamily", "ScoreSheet", "cell_index", "cells", "row_sums", "reduced_row_sums",
    "degree", "degree1", "principal_submatrix", "is_member", "first_violation", "add",
    "checked_sub", "format_text", "parse_text", "parse_text_many", "to_json", "from_json",
    "all_subsets", "sheets_of_degree", "violating_pair",
]
