import pytest
from hypothesis import given
from hypothesis import strategies as st

from scoresheets import reference as ref
from scoresheets.sheets import (MonoidFamily, ScoreSheet, add, cell_index, cells, first_violation, format_text,
                                from_json, is_member, parse_text, parse_text_many, row_sums, sheets_of_degree,
                                to_json, violating_pair)

from conftest import ordered_sheets, sheets


def test_cell_index_is_row_major_without_diagonal():
    assert [cell_index(3, i, j) for i, j in cells(3)] == list(range(6))
    assert cells(3) == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    with pytest.raises(IndexError):
        cell_index(3, 1, 1)


def test_text_format():
    S = parse_text("3\n* 1 2\n0 * 1\n0 0 *\n")
    assert S.entries == (1, 2, 0, 1, 0, 0)
    assert row_sums(S) == (3, 1, 0)
    assert parse_text(format_text(S)) == S


@pytest.mark.parametrize("text", ["3\n* 1\n0 * 1\n0 0 *\n", "3\n1 1 2\n0 * 1\n0 0 *\n", "3\n* -1 2\n0 * 1\n0 0 *\n",
                                  "x\n", "3\n* 1 2\n"])
def test_text_format_rejects(text):
    with pytest.raises(ValueError):
        parse_text(text)


def test_many_sheets_and_comments():
    text = "# two sheets\n2\n* 1\n0 *\n\n2\n* 0\n1 *\n"
    assert [s.entries for s in parse_text_many(text)] == [(1, 0), (0, 1)]


@given(sheets())
def test_text_and_json_round_trip(S):
    assert parse_text(format_text(S)) == S
    assert from_json(to_json(S)) == S


@given(sheets())
def test_families_are_nested(S):
    flags = [is_member(S, f) for f in ("all", "ordered", "runner-up", "consistent")]
    assert flags == sorted(flags, reverse=True)


@pytest.mark.parametrize("family", ["ordered", "runner-up", "consistent"])
@given(a=ordered_sheets(n=st.just(4)), b=ordered_sheets(n=st.just(4)))
def test_families_closed_under_addition(family, a, b):
    if is_member(a, family) and is_member(b, family):
        assert is_member(add(a, b), family)


def test_zero_sheet_in_every_family():
    Z = ScoreSheet(4, (0,) * 12)
    assert all(is_member(Z, f) for f in MonoidFamily)


def test_order_changed_example():
    S = ref.ORDER_CHANGED_5
    assert is_member(S, "ordered") and not is_member(S, "runner-up") and not is_member(S, "consistent")
    P = first_violation(S, "runner-up")
    assert P == (1, 2, 3, 4)
    # teams 2 and 3 (1-based) swap order once team 1 is gone
    assert violating_pair(S, P) == (1, 2, 3, 4)


def test_first_violation_of_unordered_sheet():
    S = parse_text("3\n* 0 0\n1 * 0\n0 0 *\n")
    assert first_violation(S, "ordered") == (0, 1, 2)


def test_sheets_of_degree_counts_all():
    from math import comb
    assert sum(1 for _ in sheets_of_degree(3, 4)) == comb(4 + 5, 5)


def test_family_aliases():
    assert MonoidFamily.parse("m") is MonoidFamily.ORDERED
    assert MonoidFamily.parse("runner_up") is MonoidFamily.RUNNER_UP
    with pytest.raises(ValueError):
        MonoidFamily.parse("nope")
