from hypothesis import given
from hypothesis import strategies as st

from scoresheets import linalg

vectors = st.lists(st.integers(-6, 6), min_size=1, max_size=6).filter(any)


@given(vectors)
def test_lattice_complement_is_unimodular(v):
    normal = linalg.primitive(v)
    U, Ui = linalg.lattice_complement(normal)
    r = len(normal)
    # normal @ U = e_1 and U @ Ui = I
    assert [linalg.dot(normal, [U[i][j] for i in range(r)]) for j in range(r)] == [1] + [0] * (r - 1)
    for i in range(r):
        for j in range(r):
            assert sum(U[i][k] * Ui[k][j] for k in range(r)) == (i == j)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_is_orthogonal_and_complements_rank(rows):
    ns = linalg.nullspace(rows, 4)
    assert len(ns) + linalg.rank(rows) == 4
    assert all(linalg.dot(r, v) == 0 for r in rows for v in ns)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_rank_matches(rows):
    ech = linalg.Echelon(4)
    for r in rows:
        ech.add(r)
    assert len(ech) == linalg.rank(rows)


def test_primitive_and_solve():
    assert linalg.primitive([4, -6, 0]) == (2, -3, 0)
    x0, basis = linalg.solve_affine([[1, 1, 0], [0, 1, 1]], [1, 1], 3)
    assert len(basis) == 1
    assert sum(x0[:2]) == 1 and sum(x0[1:]) == 1
