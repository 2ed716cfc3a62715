from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringcone.corpus import orthant, random_cone
from stringcone.decomposition import build_decomposition, choose_xi
from stringcone.pairing import PresentationNotCertified, build_pairing, check_nondegeneracy, phi
from stringcone.quotient import build_presentation, make_forms
from stringcone.series import s_polynomial
from stringcone.triangulation import triangulate


def presentations(cone, seed=0, coefficients=None):
    tri = triangulate(cone, seed=seed)
    dec = build_decomposition(tri, choose_xi(tri, seed))
    forms = make_forms(cone, seed, coefficients)
    return dec, build_presentation(dec, forms), build_presentation(dec, forms, interior=True)


def test_orthant_pairing():
    for r in (2, 3, 4):
        _, pR, pO = presentations(orthant(r))
        data = build_pairing(pR, pO)
        assert data.top.coords == (1,) * r
        assert data.matrices[0].row_list() == [[1]]
        assert all(data.matrices[l].rows == 0 for l in range(1, r + 1))
        assert check_nondegeneracy(data).ok


def test_index_two_pairing(i2):
    _, pR, pO = presentations(i2)
    data = build_pairing(pR, pO)
    assert data.top.coords == (2, 2)
    assert data.matrices[0].row_list() == [[1]]
    (entry,), = data.matrices[1].row_list()
    assert entry != 0
    assert phi(pO, (2, 2)) == 1


def test_square_pairing(square):
    _, pR, pO = presentations(square)
    data = build_pairing(pR, pO)
    assert [data.matrices[l].rows for l in range(4)] == [1, 1, 0, 0]
    assert check_nondegeneracy(data).ok


def test_uncertified_quotients_are_refused(square):
    _, pR, pO = presentations(square, coefficients=(1, 0, 2, 3))
    with pytest.raises(PresentationNotCertified):
        build_pairing(pR, pO)
    with pytest.raises(ValueError):
        _, pR, pO = presentations(square)
        build_pairing(pO, pR)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pairing_square_and_full_rank(seed):
    cone = random_cone(seed, max_rank=3)
    dec, pR, pO = presentations(cone, seed)
    data = build_pairing(pR, pO)
    S = s_polynomial(dec)
    for l in range(cone.rank + 1):
        assert data.matrices[l].rows == data.matrices[l].cols == S[l]
    assert check_nondegeneracy(data).ok


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_phi_vanishes_below_top_degree(seed):
    cone = random_cone(seed, max_rank=3)
    _, pR, pO = presentations(cone, seed)
    for sl in pO.slices[:cone.rank]:
        for m in sl.monomials:
            assert phi(pO, m.coords) == 0


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_pairing_respects_module_structure(seed):
    # phi(x^b * (x_i x^b')) == phi((x^b x_i) * x^b'): moving a generator
    # across the product does not change the value
    cone = random_cone(seed, max_rank=3)
    _, pR, pO = presentations(cone, seed)
    r = cone.rank
    for l in range(r):
        for b in pR.box_basis.get(l, ()):
            for c in pO.box_basis.get(r - l - 1, ()):
                for e in cone.points:
                    left = tuple(x + y for x, y in zip(b.coords, e))
                    total = tuple(x + y for x, y in zip(left, c.coords))
                    lhs = sum((a * phi(pO, tuple(x + y for x, y in zip(bb.coords, c.coords)))
                               for a, bb in zip(pR.normal_form(left), pR.box_basis.get(l + 1, ()))),
                              Fraction(0))
                    assert lhs == phi(pO, total)
