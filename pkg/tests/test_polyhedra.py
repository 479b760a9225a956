import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scoresheets import reference as ref
from scoresheets.errors import CapExceeded, NotFullDimensional, NotPointed
from scoresheets.forms import ConeSpec, LinearForm, cone_inequalities, degree1_form, delta_form
from scoresheets.hilbert import hilbert_basis
from scoresheets.polyhedra import (extreme_rays, hilbert_basis_bounded, interior_point, irredundant_facets,
                                   multiplicity, parallelepiped_points, polytope_lattice_points,
                                   width_one_and_vertex_check)
from scoresheets.triangulation import default_order, triangulate, triangulate_by_boundary, triangulation_stats


def _rays(family, n):
    return extreme_rays(cone_inequalities(family, n))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_runner_up_rays_are_the_basis(n):
    assert set(_rays("runner-up", n).rays) == {s.entries for s in hilbert_basis(n)}


@pytest.mark.parametrize("family,n,count", [("ordered", 3, 14), ("ordered", 4, 120), ("consistent", 3, 10),
                                            ("consistent", 4, 69), ("all", 3, 6)])
def test_ray_counts(family, n, count):
    assert len(_rays(family, n)) == count


def test_rays_lie_on_enough_facets():
    spec = cone_inequalities("consistent", 4)
    A = spec.matrix()
    for r in _rays("consistent", 4).rays:
        tight = A[(A @ np.array(r)) == 0]
        assert np.linalg.matrix_rank(tight) == spec.dim - 1


@given(st.randoms(use_true_random=False))
@settings(max_examples=10, deadline=None)
def test_rays_invariant_under_inequality_order(rnd):
    spec = cone_inequalities("consistent", 3)
    order = list(range(len(spec.inequalities)))
    rnd.shuffle(order)
    assert set(extreme_rays(spec, order=order).rays) == set(_rays("consistent", 3).rays)


def test_ray_cap():
    with pytest.raises(CapExceeded):
        extreme_rays(cone_inequalities("runner-up", 4), max_rays=10)


def test_not_pointed():
    spec = ConeSpec(None, 3, (delta_form(3, 0, 1),), degree1_form(3))
    with pytest.raises(NotPointed):
        extreme_rays(spec)


def test_interior_point_and_empty_interior():
    spec = cone_inequalities("consistent", 4)
    x = interior_point(spec)
    assert all(f(x) > 0 for f in spec.inequalities)
    f = delta_form(3, 0, 1)
    neg = LinearForm(3, tuple(-c for c in f.coeffs))
    flat = ConeSpec(None, 3, cone_inequalities("ordered", 3).inequalities + (neg,), degree1_form(3))
    with pytest.raises(NotFullDimensional):
        interior_point(flat)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_consistent_forms_are_irredundant(n):
    spec = cone_inequalities("consistent", n)
    assert irredundant_facets(spec).inequalities == spec.inequalities


def test_redundant_and_duplicate_forms_are_removed():
    spec = cone_inequalities("consistent", 3)
    extra = spec.with_forms(spec.inequalities + (delta_form(3, 0, 1), spec.inequalities[2]), False)
    red = irredundant_facets(extra)
    assert red.inequalities == spec.inequalities and red.facets_reduced


def test_runner_up_has_redundant_nonnegativity():
    spec = cone_inequalities("runner-up", 3)
    red = irredundant_facets(spec)
    assert len(red.inequalities) == 8 < len(spec.inequalities) == 9
    assert set(extreme_rays(red).rays) == set(extreme_rays(spec).rays)


# -- triangulations --------------------------------------------------------

@pytest.mark.parametrize("family,n,hist", [("runner-up", 3, {1: 10}), ("consistent", 3, {1: 6}),
                                           ("ordered", 3, {1: 15}), ("runner-up", 4, {1: 5830}),
                                           ("consistent", 4, {1: 8477, 2: 271, 4: 4})])
def test_placing_triangulation_volumes(family, n, hist):
    tri = triangulate(_rays(family, n))
    assert tri.volume_histogram() == hist


@pytest.mark.parametrize("family,n", [("consistent", 3), ("ordered", 3), ("runner-up", 3), ("consistent", 4)])
def test_two_constructions_agree(family, n):
    rays = _rays(family, n)
    a = triangulate(rays, method="faces")
    b = triangulate_by_boundary(rays)
    assert a.simplices == b.simplices and a.volumes == b.volumes
    st_ = triangulation_stats(rays)
    assert st_.volume_histogram() == a.volume_histogram()


@pytest.mark.parametrize("family", ["consistent", "ordered", "runner-up"])
def test_volume_independent_of_order(family):
    rays = _rays(family, 3)
    degs = [sum(r) for r in rays.rays]
    base = triangulate(rays)
    rnd = random.Random(7)
    for _ in range(3):
        order = list(range(len(rays)))
        rnd.shuffle(order)
        tri = triangulate(rays, order=order, method="faces")
        assert tri.weighted_volume(degs) == base.weighted_volume(degs)


def test_volume_independent_of_order_first_row_grading():
    # every runner-up ray has one goal in the first row, so plain volumes add up
    rays = _rays("runner-up", 4)
    rnd = random.Random(3)
    for _ in range(3):
        order = list(range(len(rays)))
        rnd.shuffle(order)
        assert triangulation_stats(rays, order=order).total_volume == 5830


def test_simplices_cover_each_point_once():
    # a generic interior point lies in exactly one full simplex
    rays = _rays("consistent", 3)
    tri = triangulate(rays)
    x = np.array(interior_point(cone_inequalities("consistent", 3)), dtype=float) + 1e-3 * np.arange(1, 7)
    hits = 0
    for s in tri.simplices:
        B = np.array([rays.rays[i] for i in s], dtype=float).T
        lam = np.linalg.solve(B, x)
        hits += (lam > 1e-12).all()
    assert hits == 1


def test_default_order_starts_independent():
    rays = _rays("consistent", 4)
    order = default_order(rays)
    assert np.linalg.matrix_rank(np.array([rays.rays[i] for i in order[:12]])) == 12


def test_triangulation_budget():
    with pytest.raises(CapExceeded):
        triangulation_stats(_rays("runner-up", 5), time_budget=0.01)


# -- multiplicities --------------------------------------------------------

@pytest.mark.parametrize("family,value", [("ordered", Fraction(1, 6)), ("runner-up", Fraction(13, 108)),
                                          ("consistent", Fraction(91, 1296))])
def test_multiplicities_n3(family, value):
    assert multiplicity(cone_inequalities(family, 3)) == value


def test_first_row_grading_volume_is_simplex_count():
    spec = cone_inequalities("runner-up", 4)
    assert multiplicity(spec, grading=degree1_form(4)) == 5830


def test_grading_must_be_positive_on_rays():
    with pytest.raises(ValueError):
        multiplicity(cone_inequalities("ordered", 3), grading=delta_form(3, 1, 0))


# -- Hilbert basis oracle --------------------------------------------------

def test_oracle_runner_up_3():
    # the basis reaches total degree 3 (one goal against team 1 from each of two rows)
    spec = cone_inequalities("runner-up", 3)
    res = hilbert_basis_bounded(spec, D=3)
    assert set(res.elements) == set(ref.hb_runner_up_3()) and res.complete
    assert len(hilbert_basis_bounded(spec, D=2).elements) == 6


def test_oracle_consistent_3():
    res = hilbert_basis_bounded(cone_inequalities("consistent", 3), D=6)
    assert set(res.elements) == set(ref.hb_consistent_3())
    assert res.complete
    auto = hilbert_basis_bounded(cone_inequalities("consistent", 3))
    assert auto.certified and auto.degree_cap == 6 and set(auto.elements) == set(res.elements)


def test_oracle_consistent_4_equals_rays():
    spec = cone_inequalities("consistent", 4)
    res = hilbert_basis_bounded(spec)
    assert res.certified and res.complete
    assert {e.entries for e in res.elements} == set(extreme_rays(spec).rays)


@pytest.mark.parametrize("family,n", [("ordered", 3), ("runner-up", 3), ("consistent", 3)])
def test_rays_are_in_the_basis(family, n):
    spec = cone_inequalities(family, n)
    res = hilbert_basis_bounded(spec)
    assert res.complete
    assert set(extreme_rays(spec).rays) <= {e.entries for e in res.elements}


def test_parallelepiped_points_are_in_the_cone():
    spec = cone_inequalities("consistent", 4)
    pts = parallelepiped_points(triangulate(extreme_rays(spec)))
    assert 0 < len(pts) <= 271 + 3 * 4
    assert all(spec.contains(p) for p in pts)


def test_oracle_caps():
    spec = cone_inequalities("consistent", 4)
    with pytest.raises(CapExceeded):
        hilbert_basis_bounded(spec, D=30, max_points=10_000)
    with pytest.raises(CapExceeded):
        hilbert_basis_bounded(spec, D=30, max_candidates=1000)


def test_oracle_rejects_other_gradings():
    with pytest.raises(ValueError):
        hilbert_basis_bounded(cone_inequalities("runner-up", 3), D=2, grading=degree1_form(3))


# -- runner-up polytope ----------------------------------------------------

@pytest.mark.parametrize("n,points", [(3, 12), (4, 78)])
def test_width_one_and_vertices(n, points):
    rep = width_one_and_vertex_check(n)
    assert rep.ok and rep.lattice_points == points and rep.all_vertices


def test_zero_sheet_not_in_polytope():
    assert all(sum(p.entries[:2]) == 1 for p in polytope_lattice_points(3))
