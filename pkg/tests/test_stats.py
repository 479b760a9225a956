from fractions import Fraction

import pytest
import sympy as sp

from scoresheets import reference as ref
from scoresheets.ehrhart import count_table, fit_quasipolynomial, fit_with_period_search
from scoresheets.stats import (asymptotic_ratio, conditional_probability, evaluate_branch, probability_csv,
                               probability_rows, quasi_rational_form, round6)


@pytest.fixture(scope="module")
def fits():
    Qr = fit_quasipolynomial(count_table("runner-up", 3, 72), 6, 5)
    Qm = fit_with_period_search(count_table("ordered", 3, 90), 5, [1, 2, 3, 6])
    return Qr, Qm


def test_round_half_even():
    assert round6(Fraction(1, 2_000_000)) == "0.000000"
    assert round6(Fraction(3, 2_000_000)) == "0.000002"
    assert round6(Fraction(13, 18)) == "0.722222"


def test_limits_n3():
    r, s = asymptotic_ratio(Fraction(13, 108), Fraction(1, 6))
    assert r == Fraction(13, 18) and s == ref.LIMITS[3][0]
    r, s = asymptotic_ratio(Fraction(91, 1296), Fraction(1, 6))
    assert r == Fraction(91, 216) and s == ref.LIMITS[3][1]
    with pytest.raises(ZeroDivisionError):
        asymptotic_ratio(Fraction(1), Fraction(0))


def test_conditional_probability_chain():
    assert conditional_probability("runner-up", "ordered", 3, 3) == Fraction(8, 9)
    with pytest.raises(ValueError):
        conditional_probability("ordered", "consistent", 3, 3)


def test_reduced_ratio_matches_printed_branches(fits):
    Qr, Qm = fits
    R = quasi_rational_form(Qr, Qm)
    assert R.period == 6 and R.degree == 0
    G = sp.Symbol("G")
    for c, (num, den) in enumerate(ref.RATIO_RUNNER_UP_3):
        p, q = R.branches[c]
        want = sum(a * G**j for j, a in enumerate(num)) / sum(a * G**j for j, a in enumerate(den))
        assert sp.simplify(p / q - want) == 0


def test_reduced_ratio_matches_counts(fits):
    Qr, Qm = fits
    R = quasi_rational_form(Qr, Qm)
    for G in range(0, 73):
        assert evaluate_branch(R, G) == conditional_probability("runner-up", "ordered", 3, G) == R(G)


def test_probability_rows_and_csv():
    rows = probability_rows(3, 4, {"limit": Fraction(13, 18)})
    assert rows[3]["P_runner_up"] == Fraction(8, 9)
    text = probability_csv(rows)
    assert text.splitlines()[0] == "G,P_runner_up,P_consistent,limit"
    assert text.splitlines()[4].startswith("3,0.888889")
