import pytest
from hypothesis import given, settings

from scoresheets import reference as ref
from scoresheets.hilbert import (construct_A, construct_B, decompose, hb_count_formulas, hb_elements, hilbert_basis,
                                 resum, sample_members, verify_minimality)
from scoresheets.sheets import add, degree1, is_member, reduced_row_sums, row_sums

from conftest import ordered_sheets


@pytest.mark.parametrize("n,counts", [(3, (6, 6, 12)), (4, (45, 33, 78)), (5, (484, 232, 716))])
def test_count_formulas(n, counts):
    assert hb_count_formulas(n) == counts


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_constructions_match_formulas(n):
    a, b, total = hb_count_formulas(n)
    A, B = construct_A(n), construct_B(n)
    assert (len(A), len(B)) == (a, b)
    assert len(set(A) | set(B)) == total and not set(A) & set(B)


@pytest.mark.parametrize("n", range(3, 13))
def test_double_sum_identity(n):
    a, b, total = hb_count_formulas(n)
    assert total == (n - 1) * sum((n - 2) ** i for k in range(n) for i in range(k + 1)) == a + b


def test_basis_n3_is_the_reference():
    assert set(hilbert_basis(3)) == set(ref.hb_runner_up_3())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_elements_are_zero_one_members_with_one_first_row_goal(n):
    for h in hb_elements(n):
        S = h.sheet
        assert set(S.entries) <= {0, 1} and degree1(S) == 1
        assert is_member(S, "runner-up")
        rows = S.rows()
        if h.kind == "A":
            assert all(not any(v for v in rows[i] if v) for i in range(h.r, n))
        else:
            assert all(rows[i][0] == 1 and sum(v for v in rows[i] if v) == 1 for i in range(h.r, h.q))


@pytest.mark.parametrize("n", [3, 4])
def test_minimality(n):
    assert verify_minimality(hilbert_basis(n), "runner-up", n)
    assert not verify_minimality(hilbert_basis(n) + [add(construct_A(n)[0], construct_A(n)[1])], "runner-up", n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_decompose_resums_on_samples(n):
    for S in sample_members("runner-up", n, 100, seed=n):
        parts = decompose(S)
        assert resum(parts, n) == S
        assert len(parts) == degree1(S)


@given(ordered_sheets(max_entry=3))
@settings(max_examples=200, deadline=None)
def test_decompose_property(S):
    if not is_member(S, "runner-up"):
        with pytest.raises(ValueError):
            decompose(S)
        return
    parts = decompose(S)
    assert resum(parts, S.n) == S
    assert all(p.sheet in set(hilbert_basis(S.n)) for p in parts)


def test_decompose_basis_element_is_itself():
    for h in hb_elements(4):
        parts = decompose(h.sheet)
        assert [p.sheet for p in parts] == [h.sheet]


def test_decompose_sum_of_two():
    A = construct_A(4)
    B = construct_B(4)
    S = add(A[3], B[5])
    parts = decompose(S)
    assert len(parts) == 2 and resum(parts, 4) == S


def test_decompose_rejects_non_member():
    with pytest.raises(ValueError):
        decompose(ref.ORDER_CHANGED_5)


def test_describe():
    h = next(e for e in hb_elements(3) if e.kind == "B" and e.q == 3)
    assert h.describe().startswith("B r=1 q=3")


def test_sampling_is_seeded():
    assert sample_members("runner-up", 4, 5, seed=11) == sample_members("runner-up", 4, 5, seed=11)
    for S in sample_members("consistent", 4, 20, seed=2):
        assert is_member(S, "consistent")
        assert list(row_sums(S)) == sorted(row_sums(S), reverse=True)
        assert list(reduced_row_sums(S)) == sorted(reduced_row_sums(S), reverse=True)
