from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from stringcone.corpus import orthant, random_cone
from stringcone.decomposition import build_decomposition, choose_xi
from stringcone.series import (GradedPolynomial, check_duality, hilbert_numerator_truncated,
                               multiply_by_one_minus_t_power, s_polynomial, slice_counts,
                               t_polynomial)
from stringcone.triangulation import triangulate


def st_pair(cone, seed=0):
    tri = triangulate(cone, seed=seed)
    dec = build_decomposition(tri, choose_xi(tri, seed))
    return s_polynomial(dec), t_polynomial(dec)


def test_polynomial_basics():
    p = GradedPolynomial((1, 2, 0, 0))
    assert p.to_list() == [1, 2] and p.degree == 1
    assert (p * p).to_list() == [1, 4, 4]
    assert (p + GradedPolynomial((0, 0, 3))).to_list() == [1, 2, 3]
    assert p.reflect(3).to_list() == [0, 0, 2, 1]
    assert GradedPolynomial().degree == -1


def test_named_cones(i2, square):
    for r in (2, 3, 4):
        S, T = st_pair(orthant(r))
        assert S.to_list() == [1] and T.to_list() == [0] * r + [1]
    S, T = st_pair(i2)
    assert S.to_list() == [1, 1] and T.to_list() == [0, 1, 1]
    S, T = st_pair(square)
    assert S.to_list() == [1, 1] and T.to_list() == [0, 0, 1, 1]


def test_hilbert_examples(i2, square):
    assert hilbert_numerator_truncated(orthant(2), 5).to_list() == [1]
    assert hilbert_numerator_truncated(i2, 5).to_list() == [1, 1]
    assert hilbert_numerator_truncated(square, 5, interior_only=True).to_list() == [0, 0, 1, 1]
    assert slice_counts(square, 3, True) == [0, 0, 1, 4]


def test_duality_examples():
    P = GradedPolynomial
    assert check_duality(P((1,)), P((0, 0, 1)), 2)
    assert check_duality(P((1, 1)), P((0, 1, 1)), 2)
    assert not check_duality(P((1, 1)), P((0, 0, 1)), 2)


def test_one_minus_t_power():
    assert multiply_by_one_minus_t_power([1, 2, 3, 4, 5], 2) == [1, 0, 0, 0, 0]
    assert multiply_by_one_minus_t_power([1, 1, 1], 0) == [1, 1, 1]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_series_match_point_counts(seed):
    cone = random_cone(seed)
    S, T = st_pair(cone, seed)
    D = 2 * cone.rank + 2
    for poly, interior in ((S, False), (T, True)):
        pts = oracles.lattice_points(cone.rays, cone.degree, D, interior)
        counts = [sum(cone.deg(p) == d for p in pts) for d in range(D + 1)]
        assert poly.to_list() == GradedPolynomial(tuple(oracles.numerator(counts, cone.rank))).to_list()
    assert check_duality(S, T, cone.rank)
    assert S[0] == 1
    assert sum(S.coefficients) == triangulate(cone, seed=seed).normalized_volume
    assert all(c >= 0 for c in S.coefficients + T.coefficients)
    assert S.degree <= cone.rank and T.degree <= cone.rank


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_s_intrinsic(seed):
    cone = random_cone(seed)
    ref = st_pair(cone, seed)
    for k in range(1, 3):
        assert st_pair(cone, seed + 101 * k) == ref
