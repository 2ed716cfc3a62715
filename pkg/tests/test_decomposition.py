from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stringcone.cone import lattice_points_up_to_degree
from stringcone.corpus import orthant, random_cone
from stringcone.decomposition import (MINUS, PLUS, GenericityFailure, PointNotInDomain,
                                      build_decomposition, choose_xi, decompose_point,
                                      direction_from_xi, verify_partition, verify_psi_minimality)
from stringcone.triangulation import build_triangulation, triangulate


def decomposition(cone, heights=None, xi=None, seed=0):
    tri = triangulate(cone, heights, seed=seed)
    d = direction_from_xi(tri, xi) if xi is not None else choose_xi(tri, seed)
    return build_decomposition(tri, d)


def test_betas(i2):
    assert direction_from_xi(triangulate(orthant(2)), (1, 2)).betas[(0, 1)] == (1, 2)
    d = direction_from_xi(triangulate(i2), (1, 1))
    assert d.betas[(0, 1)] == (Fraction(1, 2), Fraction(1, 2))


def test_wall_direction_rejected(square):
    tri = build_triangulation(square, (0, 0, 0, 1))
    with pytest.raises(GenericityFailure):
        direction_from_xi(tri, (2, 1, 1))  # on the wall through e_1, e_4
    with pytest.raises(GenericityFailure):
        direction_from_xi(tri, (1, 2, 0))  # outside
    assert choose_xi(tri, seed=3).attempts >= 1


def test_orthant_boxes():
    dec = decomposition(orthant(2), xi=(1, 2))
    assert [b.coords for b in dec.box_union(PLUS)] == [(0, 0)]
    assert [(b.coords, b.degree) for b in dec.box_union(MINUS)] == [((1, 1), 2)]


def test_index_two_boxes(i2):
    dec = decomposition(i2, xi=(1, 1))
    assert [b.coords for b in dec.box_union(PLUS)] == [(0, 0), (1, 1)]
    assert [b.coords for b in dec.box_union(MINUS)] == [(1, 1), (2, 2)]


def test_point_decompositions(i2):
    dec = decomposition(orthant(2), xi=(1, 2))
    r = decompose_point(dec, (2, 3))
    assert r.base.coords == (0, 0) and r.multiplicities == (2, 3)
    dec = decomposition(i2, xi=(1, 1))
    r = decompose_point(dec, (1, 1))
    assert r.base.coords == (1, 1) and r.multiplicities == (0, 0)
    r = decompose_point(dec, (2, 2))
    assert r.base.coords == (0, 0) and r.multiplicities == (1, 1)
    r = decompose_point(dec, (2, 2), MINUS)
    assert r.base.coords == (2, 2) and r.multiplicities == (0, 0)
    with pytest.raises(PointNotInDomain):
        decompose_point(dec, (1, 0), MINUS)


@pytest.mark.parametrize("cone_name,D,count", [("orth", 4, 15), ("i2", 4, 25), ("sq", 3, 30)])
def test_partition_examples(cone_name, D, count, i2, square):
    cone = {"orth": orthant(2), "i2": i2, "sq": square}[cone_name]
    dec = decomposition(cone)
    rep = verify_partition(dec, D, PLUS)
    assert rep.ok and rep.details["points"] == count
    assert verify_partition(dec, D, MINUS).ok


def test_psi_minimality_examples(i2, square):
    assert verify_psi_minimality(decomposition(orthant(2)), (1, 1)).ok
    assert verify_psi_minimality(decomposition(i2, xi=(1, 1)), (2, 2)).ok
    dec = decomposition(square, heights=(0, 0, 0, 1), xi=(3, 1, 2))
    # b=0 with either diagonal, and b=e_2 (a box point for this xi) plus e_3
    rep = verify_psi_minimality(dec, (2, 1, 1))
    assert rep.ok and rep.details["representations"] == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_boxes_match_parallelepiped_oracle(seed):
    cone = random_cone(seed)
    dec = decomposition(cone, seed=seed)
    xi = dec.direction.xi
    for sign in (PLUS, MINUS):
        for bs in dec.boxes[sign]:
            gens = [cone.points[i] for i in bs.simplex.indices]
            assert [p.coords for p in bs.points] == oracles.box_points(gens, xi, sign)
            assert len(bs.points) == bs.simplex.lattice_index


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_box_degrees_reflect(seed):
    cone = random_cone(seed)
    dec = decomposition(cone, seed=seed)
    plus = Counter(b.degree for b in dec.box_union(PLUS))
    minus = Counter(cone.rank - b.degree for b in dec.box_union(MINUS))
    assert plus == minus


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_decomposition_idempotent_on_boxes(seed):
    cone = random_cone(seed)
    dec = decomposition(cone, seed=seed)
    for sign in (PLUS, MINUS):
        for bs in dec.boxes[sign]:
            for b in bs.points:
                r = dec.decompose(b.coords, sign)
                assert r.simplex is bs.simplex and r.base == b
                assert all(m == 0 for m in r.multiplicities)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_box_degrees_independent_of_choices(seed):
    cone = random_cone(seed)
    ref = None
    for k in range(3):
        dec = decomposition(cone, seed=seed + 17 * k)
        degs = sorted(b.degree for b in dec.box_union(PLUS))
        ref = ref or degs
        assert degs == ref


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_psi_minimality_on_small_cones(seed):
    cone = random_cone(seed, max_rank=3, max_points=5)
    dec = decomposition(cone, seed=seed)
    for sign in (PLUS, MINUS):
        for p in lattice_points_up_to_degree(cone, 3, sign == MINUS, dec.triangulation):
            rep = verify_psi_minimality(dec, p.coords, sign)
            assert rep.ok, rep.failures
