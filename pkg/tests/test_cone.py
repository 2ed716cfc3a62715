import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import facet_normals, in_cone, lattice_points
from stringcone.cone import (GradedCone, InvalidCone, LatticePoint, contains, degree_adapted_basis,
                             lattice_points_up_to_degree, require_valid, validate)
from stringcone.corpus import random_cone


def test_orthant_is_valid():
    c = GradedCone(2, [(1, 0), (0, 1)], (1, 1), [(1, 0), (0, 1)])
    assert validate(c).valid


def test_line_is_not_pointed():
    c = GradedCone(2, [(1, 0), (-1, 0)], (1, 0), [(1, 0), (-1, 0)])
    rep = validate(c)
    assert not rep.valid
    assert any("pointed" in f for f in rep.failures)


def test_points_must_include_rays():
    c = GradedCone(2, [(1, 0), (1, 2)], (1, 0), [(1, 0)])
    rep = validate(c)
    assert any("do not include ray generator [1, 2]" in f for f in rep.failures)
    with pytest.raises(InvalidCone):
        require_valid(c)


@pytest.mark.parametrize("cone,fragment", [
    (GradedCone(2, [(1, 0), (2, 1)], (1, 0), [(1, 0), (2, 1)]), "degree 2"),
    (GradedCone(2, [(1, 0)], (1, 0), [(1, 0)]), "full-dimensional"),
    (GradedCone(2, [(1, 0), (1, 2), (1, 1)], (1, 0), [(1, 0), (1, 2), (1, 1)]), "not extremal"),
    (GradedCone(2, [(1, 0), (1, 1)], (1, 0), [(1, 0), (1, 1), (1, 2)]), "outside the cone"),
    (GradedCone(2, [(1, 0, 0)], (1, 0), [(1, 0, 0)]), "length"),
    (GradedCone(2, [(1, 0), (1, 1)], (1, 0), [(1, 0), (1, 1), (1, 1)]), "distinct"),
])
def test_invalid_cones_are_reported(cone, fragment):
    rep = validate(cone)
    assert not rep.valid
    assert any(fragment in f for f in rep.failures), rep.failures


def test_index_two_points_lattice_is_reported_not_rejected(i2):
    rep = validate(i2)
    assert rep.valid and rep.points_lattice_index == 2


def test_rank_zero_cone():
    c = GradedCone(0, (), (), ())
    assert validate(c).valid
    assert lattice_points_up_to_degree(c, 3) == [LatticePoint((), 0)]


@pytest.mark.parametrize("degree", [(1, 0), (2, -1), (3, 5, 7), (0, 0, 1, 0), (-1, 4)])
def test_degree_adapted_basis(degree):
    U, Uinv = degree_adapted_basis(degree)
    r = len(degree)
    assert [sum(degree[i] * U[i][j] for i in range(r)) for j in range(r)] == [1] + [0] * (r - 1)
    assert [[sum(U[i][k] * Uinv[k][j] for k in range(r)) for j in range(r)]
            for i in range(r)] == [[int(i == j) for j in range(r)] for i in range(r)]


def test_contains_examples(i2):
    orth = GradedCone(2, [(1, 0), (0, 1)], (1, 1), [(1, 0), (0, 1)])
    assert contains(orth, (2, 3))
    assert not contains(orth, (0, 1), strict=True)
    assert contains(i2, (1, 1), strict=True)
    assert not contains(i2, (1, 3))


def test_lattice_point_examples(i2):
    orth = GradedCone(2, [(1, 0), (0, 1)], (1, 1), [(1, 0), (0, 1)])
    assert {p.coords for p in lattice_points_up_to_degree(orth, 1)} == {(0, 0), (1, 0), (0, 1)}
    assert [p.coords for p in lattice_points_up_to_degree(orth, 2, interior_only=True)] == [(1, 1)]
    assert len(lattice_points_up_to_degree(i2, 2)) == 9


def test_square_slices_match_dilated_square(square):
    pts = lattice_points_up_to_degree(square, 4)
    for d in range(5):
        assert sum(p.degree == d for p in pts) == (d + 1) ** 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_enumeration_matches_facet_oracle(seed):
    cone = random_cone(seed, max_rank=3)
    D = 3
    for interior in (False, True):
        got = [p.coords for p in lattice_points_up_to_degree(cone, D, interior)]
        want = lattice_points(cone.rays, cone.degree, D, interior)
        assert sorted(got) == sorted(want)
        assert all(p.degree == cone.deg(p.coords) for p in
                   lattice_points_up_to_degree(cone, D, interior))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(st.integers(-6, 6), min_size=4, max_size=4))
def test_membership_matches_facets(seed, p):
    cone = random_cone(seed, max_rank=4)
    p = tuple(p[:cone.rank])
    normals = facet_normals(cone.rays)
    assert contains(cone, p) == in_cone(normals, p)
    assert contains(cone, p, strict=True) == in_cone(normals, p, strict=True)
    if contains(cone, p, strict=True):
        assert contains(cone, p)
