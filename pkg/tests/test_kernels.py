import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scoresheets import kernels
from scoresheets.errors import CapExceeded
from scoresheets.forms import cone_inequalities

needs_compiled = pytest.mark.skipif("cython" not in kernels.available_backends(), reason="extension not built")

matrices = st.integers(2, 5).flatmap(
    lambda d: st.lists(st.lists(st.integers(-2, 2), min_size=d, max_size=d), min_size=0, max_size=4).map(
        lambda rows: np.array(rows, dtype=np.int64).reshape(len(rows), d)))


def _brute(A, d, maxdeg):
    import itertools
    hist = [0] * (maxdeg + 1)
    for x in itertools.product(range(maxdeg + 1), repeat=d):
        if sum(x) <= maxdeg and (A @ np.array(x) >= 0).all():
            hist[sum(x)] += 1
    return hist


@given(matrices, st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_python_counts_match_brute_force(A, maxdeg):
    d = A.shape[1]
    assert kernels.count_by_degree(A, d, maxdeg, backend="python") == _brute(A, d, maxdeg)


@needs_compiled
@given(matrices, st.integers(0, 6))
@settings(max_examples=80, deadline=None)
def test_backends_agree(A, maxdeg):
    d = A.shape[1]
    assert kernels.count_by_degree(A, d, maxdeg, backend="python") == \
        kernels.count_by_degree(A, d, maxdeg, backend="cython")
    p = kernels.enumerate_points(A, d, maxdeg, backend="python")
    c = kernels.enumerate_points(A, d, maxdeg, backend="cython")
    assert sorted(map(tuple, p)) == sorted(map(tuple, c))


@needs_compiled
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_adj_backends_agree(M):
    M = np.array(M, dtype=np.int64)
    dp, ap = kernels.det_adj(M, backend="python")
    dc, ac = kernels.det_adj(M, backend="cython")
    assert dp == dc == round(np.linalg.det(M))
    if dp == 0:
        assert ap is None and ac is None
        return
    assert np.array_equal(np.array(ap, dtype=object), np.array(ac, dtype=object))
    assert np.array_equal(M.astype(object).dot(np.array(ap, dtype=object)), dp * np.eye(4, dtype=np.int64))


@pytest.mark.parametrize("backend", kernels.available_backends())
def test_enumeration_cap(backend):
    spec = cone_inequalities("ordered", 4)
    with pytest.raises(CapExceeded):
        kernels.enumerate_points(spec.matrix(), spec.dim, 20, cap=1000, backend=backend)
    with pytest.raises(CapExceeded):
        kernels.count_by_degree(spec.matrix(), spec.dim, 20, cap=1000, backend=backend)


@needs_compiled
def test_pipelines_agree_across_backends():
    from scoresheets.polyhedra import extreme_rays, multiplicity
    spec = cone_inequalities("consistent", 4)
    assert extreme_rays(spec, backend="python").rays == extreme_rays(spec, backend="cython").rays
    c3 = cone_inequalities("consistent", 3)
    assert multiplicity(c3, backend="python") == multiplicity(c3, backend="cython")
