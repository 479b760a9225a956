from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scoresheets import reference as ref
from scoresheets.ehrhart import (CountTable, FitError, HilbertSeriesRep, Quasipolynomial, SeriesTailError,
                                 candidate_periods, check_functional_equation, count_points, count_table,
                                 fit_quasipolynomial, fit_with_period_search, is_palindromic,
                                 multiplicity_from_quasipolynomial, series_numerator)
from scoresheets.sheets import is_member, sheets_of_degree


def _brute(family, n, G):
    return sum(1 for S in sheets_of_degree(n, G) if is_member(S, family))


@pytest.mark.parametrize("family", ["all", "ordered", "runner-up", "consistent"])
def test_counts_match_brute_force(family):
    table = count_table(family, 3, 5, engine="naive", use_cache=False)
    assert table.counts == [_brute(family, 3, G) for G in range(6)]


@pytest.mark.parametrize("family,n,N", [("ordered", 3, 30), ("runner-up", 3, 30), ("ordered", 4, 12),
                                        ("runner-up", 4, 12), ("ordered", 5, 5), ("runner-up", 5, 5)])
def test_engines_agree(family, n, N):
    a = count_table(family, n, N, engine="naive", use_cache=False).counts
    b = count_table(family, n, N, engine="factorized", use_cache=False).counts
    assert a == b


def test_spot_values():
    assert (count_points("runner-up", 3, 1), count_points("runner-up", 3, 2)) == (2, 7)
    assert (count_points("consistent", 3, 1), count_points("consistent", 3, 2)) == (2, 6)
    assert count_points("all", 3, 2) == 21


def test_factorized_rejects_consistent():
    with pytest.raises(ValueError):
        count_table("consistent", 3, 5, engine="factorized", use_cache=False)


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("SCORESHEETS_CACHE", str(tmp_path))
    a = count_table("consistent", 3, 20)
    assert list(tmp_path.iterdir())
    b = count_table("consistent", 3, 12)
    assert b.counts == a.counts[:13]
    assert CountTable.from_csv(a.to_csv(), "consistent", 3).counts == a.counts


def test_runner_up_quasipolynomial():
    Q = fit_quasipolynomial(count_table("runner-up", 3, 72), 6, 5)
    assert Q.coeffs == ref.Q_RUNNER_UP_3
    assert multiplicity_from_quasipolynomial(Q) == Fraction(13, 108)
    assert not check_functional_equation(Q, 9)


def test_consistent_quasipolynomial():
    Q = fit_quasipolynomial(count_table("consistent", 3, 110, engine="naive"), 12, 5)
    diffs = [(c, j) for c in range(12) for j in range(6) if Q.coeffs[c][j] != ref.Q_CONSISTENT_3[c][j]]
    # the one printed coefficient that disagrees; with it the value at 3 is not an integer
    assert diffs == [(3, 3)] and Q.coeffs[3][3] == Fraction(299, 2592)
    printed = Quasipolynomial(12, 5, ref.Q_CONSISTENT_3)
    assert printed(3).denominator != 1 and Q(3) == count_points("consistent", 3, 3)
    assert check_functional_equation(Q, 9)
    assert multiplicity_from_quasipolynomial(Q) == Fraction(91, 1296)


def test_ordered_period_search():
    Q = fit_with_period_search(count_table("ordered", 3, 90), 5, candidate_periods([1, 2, 3, 6]))
    assert Q.period == 6
    assert multiplicity_from_quasipolynomial(Q) == Fraction(1, 6)


def test_fit_needs_enough_values():
    with pytest.raises(FitError):
        fit_quasipolynomial(count_table("consistent", 3, 40, engine="naive"), 12, 5)


def test_wrong_period_fails_validation():
    with pytest.raises(FitError):
        fit_quasipolynomial(count_table("runner-up", 3, 72), 2, 5)


@given(st.integers(-200, 200))
def test_quasipolynomial_evaluates_by_residue(k):
    Q = Quasipolynomial(3, 1, ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1)), (Fraction(5), Fraction(0))))
    row = Q.coeffs[k % 3]
    assert Q(k) == row[0] + row[1] * k


def test_quasipolynomial_json_round_trip():
    Q = Quasipolynomial(6, 5, ref.Q_RUNNER_UP_3)
    assert Quasipolynomial.from_json(Q.to_json()) == Q
    with pytest.raises(FitError):
        Quasipolynomial(2, 1, ((1, 1), (1, 2))).leading_coefficient()


def test_series_numerators():
    hr = series_numerator(count_table("runner-up", 3, 72), ref.SERIES_RUNNER_UP_3_EXPONENTS)
    hc = series_numerator(count_table("consistent", 3, 110, engine="naive"), ref.SERIES_CONSISTENT_3_EXPONENTS)
    assert hr.numerator == ref.SERIES_RUNNER_UP_3
    assert hc.numerator == ref.SERIES_CONSISTENT_3
    assert is_palindromic(hc.numerator) and not is_palindromic(hr.numerator)
    assert hc.series(110) == count_table("consistent", 3, 110, engine="naive").counts


def test_series_tail_check():
    with pytest.raises(SeriesTailError):
        series_numerator(count_table("consistent", 3, 30, engine="naive"), ref.SERIES_CONSISTENT_3_EXPONENTS)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8), st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_series_numerator_inverts_expansion(h, exps):
    rep = HilbertSeriesRep(tuple(h), tuple(exps))
    back = series_numerator(rep.series(len(h) + 2 * sum(exps) + 2), exps)
    trimmed = list(h)
    while len(trimmed) > 1 and trimmed[-1] == 0:
        trimmed.pop()
    assert list(back.numerator) == trimmed or (not any(h) and not any(back.numerator))


def test_palindromic():
    assert is_palindromic([1, 2, 1, 0])
    assert not is_palindromic([1, 2, 3])
