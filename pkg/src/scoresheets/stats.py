"""Conditional probabilities between the monoid families and their limits."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import lcm

import sympy as sp

from .ehrhart import CountTable, Quasipolynomial, count_table
from .sheets import MonoidFamily

_CHAIN = [MonoidFamily.ALL, MonoidFamily.ORDERED, MonoidFamily.RUNNER_UP, MonoidFamily.CONSISTENT]


def _check_chain(num: MonoidFamily, den: MonoidFamily) -> None:
    if _CHAIN.index(num) < _CHAIN.index(den):
        raise ValueError(f"{num.value} is not contained in {den.value}")


def conditional_probability(num: "MonoidFamily | str", den: "MonoidFamily | str", n: int, G: int,
                            **count_kw) -> Fraction:
    """``count(num, n, G) / count(den, n, G)``, exactly."""
    num, den = MonoidFamily.parse(num), MonoidFamily.parse(den)
    _check_chain(num, den)
    top = count_table(num, n, G, **count_kw).counts[G]
    bottom = count_table(den, n, G, **count_kw).counts[G]
    if bottom == 0:
        raise ZeroDivisionError(f"no {den.value} sheets with {G} goals")
    return Fraction(top, bottom)


def round6(x: Fraction) -> str:
    """Six-decimal rendering with round-half-even."""
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal("0.000001"), rounding=ROUND_HALF_EVEN))


def asymptotic_ratio(mult_num: Fraction, mult_den: Fraction) -> tuple[Fraction, str]:
    if mult_den == 0:
        raise ZeroDivisionError("zero multiplicity in the denominator")
    if mult_num <= 0 or mult_den < 0:
        raise ValueError("multiplicities must be positive")
    r = Fraction(mult_num) / Fraction(mult_den)
    return r, round6(r)


_G = sp.Symbol("G")


def _poly_expr(coeffs) -> sp.Expr:
    return sum(sp.Rational(c.numerator, c.denominator) * _G**j for j, c in enumerate(coeffs))


@dataclass(frozen=True)
class QuasiRational:
    """Per-residue quotient of two quasipolynomials, reduced by cancellation.

    ``branches[c] = (numerator, denominator)`` as integer-coefficient sympy
    polynomials in ``G`` with coprime content.
    """

    numerator: Quasipolynomial
    denominator: Quasipolynomial
    period: int
    branches: tuple

    @property
    def degree(self) -> int:
        return self.numerator.degree - self.denominator.degree

    def __call__(self, G: int) -> Fraction:
        den = self.denominator(G)
        if den == 0:
            raise ZeroDivisionError(f"denominator vanishes at G={G}")
        return self.numerator(G) / den

    def branch_strings(self) -> list[str]:
        return [f"({sp.expand(p)})/({sp.expand(q)})" for p, q in self.branches]


def quasi_rational_form(Qnum: Quasipolynomial, Qden: Quasipolynomial) -> QuasiRational:
    period = lcm(Qnum.period, Qden.period)
    branches = []
    for c in range(period):
        expr = sp.cancel(_poly_expr(Qnum.coeffs[c % Qnum.period]) / _poly_expr(Qden.coeffs[c % Qden.period]))
        p, q = sp.fraction(sp.together(expr))
        p, q = sp.Poly(p, _G), sp.Poly(q, _G)
        # clear denominators and make the leading coefficient of q positive
        _, p = p.clear_denoms()
        _, q = q.clear_denoms()
        g = sp.gcd(p.content(), q.content())
        p, q = p.quo_ground(g), q.quo_ground(g)
        if q.LC() < 0:
            p, q = -p, -q
        branches.append((p.as_expr(), q.as_expr()))
    return QuasiRational(Qnum, Qden, period, tuple(branches))


def evaluate_branch(R: QuasiRational, G: int) -> Fraction:
    """Evaluate the reduced per-residue form (rather than the two quasipolynomials)."""
    p, q = R.branches[G % R.period]
    top = sp.Rational(p.subs(_G, G))
    bottom = sp.Rational(q.subs(_G, G))
    return Fraction(int(top.p), int(top.q)) / Fraction(int(bottom.p), int(bottom.q))


def probability_rows(n: int, N: int, limits: dict | None = None, **count_kw) -> list[dict]:
    """Rows ``G, P_runner_up, P_consistent`` (plus any limits) for ``G = 0..N``."""
    ordered = count_table(MonoidFamily.ORDERED, n, N, **count_kw).counts
    runner = count_table(MonoidFamily.RUNNER_UP, n, N, **count_kw).counts
    consistent = count_table(MonoidFamily.CONSISTENT, n, N, **count_kw).counts
    rows = []
    for G in range(N + 1):
        row = {
            "G": G,
            "P_runner_up": Fraction(runner[G], ordered[G]),
            "P_consistent": Fraction(consistent[G], ordered[G]),
        }
        for k, v in (limits or {}).items():
            row[k] = v
        rows.append(row)
    return rows


def probability_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    keys = list(rows[0])
    w.writerow(keys)
    for row in rows:
        w.writerow([f"{float(v):.6f}" if isinstance(v, Fraction) else v for v in (row[k] for k in keys)])
    return buf.getvalue()


__all__ = [
    "conditional_probability", "asymptotic_ratio", "round6", "QuasiRational", "quasi_rational_form",
    "evaluate_branch", "probability_rows", "probability_csv", "CountTable",
]
