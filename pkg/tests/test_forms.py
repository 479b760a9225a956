import pytest
from hypothesis import given

from scoresheets.forms import (ConeSpec, cone_inequalities, consistent_form_count, delta_form, gorenstein_witness,
                               is_interior, standard_map, verify_gorenstein)
from scoresheets.polyhedra import irredundant_facets
from scoresheets.sheets import is_member

from conftest import sheets


@pytest.mark.parametrize("n,count", [(3, 8), (4, 23), (5, 59)])
def test_consistent_form_count(n, count):
    assert consistent_form_count(n) == count
    assert len(cone_inequalities("consistent", n).inequalities) == count


@pytest.mark.parametrize("family", ["all", "ordered", "runner-up", "consistent"])
@given(S=sheets())
def test_inequalities_match_membership(family, S):
    assert cone_inequalities(family, S.n).contains(S) == is_member(S, family)


@pytest.mark.parametrize("n", range(3, 9))
def test_gorenstein_witness_is_one_on_every_form(n):
    e = gorenstein_witness(n)
    assert {f(e) for f in cone_inequalities("consistent", n).inequalities} == {1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_consistent_cone_is_gorenstein(n):
    spec = irredundant_facets(cone_inequalities("consistent", n))
    res = verify_gorenstein(spec)
    assert res.status == "found" and res.witness == gorenstein_witness(n)
    assert set(standard_map(spec, res.witness)) == {1}
    assert is_interior(spec, res.witness)
    assert is_member(res.witness, "consistent")


@pytest.mark.parametrize("family,n", [("ordered", 3), ("ordered", 4), ("runner-up", 3), ("runner-up", 4)])
def test_other_cones_have_no_all_ones_point(family, n):
    assert verify_gorenstein(irredundant_facets(cone_inequalities(family, n))).status == "absent"


def test_gorenstein_needs_reduced_forms():
    with pytest.raises(ValueError):
        verify_gorenstein(cone_inequalities("consistent", 3))


def test_spec_round_trips():
    spec = cone_inequalities("runner-up", 4)
    assert ConeSpec.from_json(spec.to_json()) == spec
    back = ConeSpec.from_text(spec.to_text())
    assert [f.coeffs for f in back.inequalities] == [f.coeffs for f in spec.inequalities]
    assert back.grading.coeffs == spec.grading.coeffs


def test_forms_are_primitive_and_delta_is_a_unit_vector():
    f = delta_form(3, 0, 1)
    assert f.coeffs == (1, 0, 0, 0, 0, 0)
    for fam in ("ordered", "runner-up", "consistent"):
        assert all(g.is_primitive() for g in cone_inequalities(fam, 4).inequalities)
