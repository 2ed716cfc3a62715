"""The Poincare pairing between the quotients of ``R`` and ``R^open``.

``phi`` reads off the coefficient of the unique degree-``r`` box monomial of
the interior quotient, normalised to 1 on that monomial.  Pairing box
monomials of complementary degrees gives one square matrix per degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import LatticePoint
from .exactmath import RatMatrix, rank
from .quotient import QuotientPresentation
from .report import Report


class PresentationNotCertified(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PairingData:
    rank: int
    top: LatticePoint
    row_bases: dict[int, tuple[LatticePoint, ...]]
    col_bases: dict[int, tuple[LatticePoint, ...]]
    matrices: dict[int, RatMatrix]

    def to_dict(self) -> dict:
        return {"top": list(self.top.coords),
                "matrices": {str(l): m.to_strings() for l, m in self.matrices.items()},
                "ranks": {str(l): rank(m) for l, m in self.matrices.items()}}


def phi(interior: QuotientPresentation, coords: Sequence[int]) -> Fraction:
    """Value of the socle functional on the class of ``x^coords``; zero off degree ``r``."""
    r = interior.rank
    if interior.cone.deg(coords) != r:
        return Fraction(0)
    alpha = interior.normal_form(coords)
    return alpha[0]


def build_pairing(exterior: QuotientPresentation, interior: QuotientPresentation) -> PairingData:
    if not (exterior.certified and interior.certified):
        raise PresentationNotCertified("both quotients must match their box bases")
    if exterior.interior or not interior.interior:
        raise ValueError("expected the R presentation first and the R^open one second")
    r = exterior.rank
    tops = interior.box_basis.get(r, ())
    if len(tops) != 1:
        raise PresentationNotCertified(f"degree-{r} part of the interior quotient has "
                                       f"dimension {len(tops)}, expected 1")
    rows_b, cols_b, mats = {}, {}, {}
    for l in range(r + 1):
        rows = exterior.box_basis.get(l, ())
        cols = interior.box_basis.get(r - l, ())
        entries = [[phi(interior, tuple(x + y for x, y in zip(b.coords, c.coords)))
                    for c in cols] for b in rows]
        rows_b[l], cols_b[l] = rows, cols
        mats[l] = RatMatrix(entries, cols=len(cols))
    return PairingData(r, tops[0], rows_b, cols_b, mats)


def check_nondegeneracy(data: PairingData) -> Report:
    """Every pairing matrix must be square and of full rank."""
    failures = []
    ranks = {}
    for l, m in data.matrices.items():
        ranks[l] = rank(m)
        if m.rows != m.cols:
            failures.append(f"degree {l}: matrix is {m.rows}x{m.cols}, not square")
        elif ranks[l] != m.rows:
            failures.append(f"degree {l}: rank {ranks[l]} < {m.rows}")
    return Report(not failures, failures,
                  {"shapes": {str(l): [m.rows, m.cols] for l, m in data.matrices.items()},
                   "ranks": {str(l): k for l, k in ranks.items()}})
