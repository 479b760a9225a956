"""Small exact linear algebra over the rationals (Python ints and Fractions)."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, (abs(int(x)) for x in v), 0)
    if g <= 1:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def integer_scale(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    den = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    return primitive([int(Fraction(x) * den) for x in v])


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank via fraction-free elimination."""
    M = [[int(x) for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        piv = M[rk]
        for i in range(rk + 1, len(M)):
            a = M[i][c]
            if a:
                row = [piv[c] * x - a * y for x, y in zip(M[i], piv)]
                M[i] = list(primitive(row))
        rk += 1
        if rk == len(M):
            break
    return rk


def nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of ``{x : rows @ x = 0}``."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(integer_scale(v))
    return basis


def solve_affine(rows: Sequence[Sequence[int]], rhs: Sequence[int], ncols: int):
    """Solve ``rows @ x = rhs`` over Q.

    Returns ``None`` if inconsistent, else ``(x0, kernel_basis)`` with ``x0``
    a rational particular solution.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x0 = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x0[p] = R[i][ncols]
    return x0, nullspace(rows, ncols)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


class Echelon:
    """Incremental fraction-free echelon form, for rank tests one vector at a time."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[int, list[int]]] = []

    def reduce(self, v: Sequence[int]) -> list[int]:
        v = [int(x) for x in v]
        for c, row in self.rows:
            a = v[c]
            if a:
                v = list(primitive([row[c] * x - a * y for x, y in zip(v, row)]))
        return v

    def add(self, v: Sequence[int]) -> bool:
        """Append ``v`` if it is independent of the rows so far; report whether it was."""
        w = self.reduce(v)
        for c, x in enumerate(w):
            if x:
                self.rows.append((c, w))
                return True
        return False

    def __len__(self) -> int:
        return len(self.rows)


def lattice_complement(normal: Sequence[int]):
    """Unimodular ``U`` (with inverse) such that ``normal @ U = e_1``.

    ``normal`` must be primitive.  Columns 2.. of ``U`` then form a basis of
    the lattice ``{x in Z^r : normal . x = 0}``, and ``(U^-1 x)[1:]`` are the
    coordinates of such an ``x`` in that basis.
    """
    r = len(normal)
    v = [int(x) for x in normal]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    Ui = [[int(i == j) for j in range(r)] for i in range(r)]
    while True:
        nz = [j for j in range(r) if v[j]]
        if not nz:
            raise ValueError("zero normal")
        p = min(nz, key=lambda j: abs(v[j]))
        if len(nz) == 1:
            break
        for j in nz:
            if j == p:
                continue
            q = v[j] // v[p]
            if q:
                v[j] -= q * v[p]
                for row in U:
                    row[j] -= q * row[p]
                Ui[p] = [a + q * b for a, b in zip(Ui[p], Ui[j])]
    if abs(v[p]) != 1:
        raise ValueError("normal is not primitive")
    if p != 0:
        for row in U:
            row[0], row[p] = row[p], row[0]
        Ui[0], Ui[p] = Ui[p], Ui[0]
        v[0], v[p] = v[p], v[0]
    if v[0] < 0:
        for row in U:
            row[0] = -row[0]
        Ui[0] = [-a for a in Ui[0]]
    return U, Ui
