"""S- and T-polynomials of a graded cone and their Hilbert-series oracle."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .cone import GradedCone, lattice_points_up_to_degree
from .decomposition import MINUS, PLUS, BoxDecomposition


@dataclass(frozen=True)
class GradedPolynomial:
    """Dense univariate polynomial in ``t``; trailing zeros are trimmed."""

    coefficients: tuple = ()

    def __post_init__(self):
        c = list(self.coefficients)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    def __getitem__(self, k: int):
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self):
        return len(self.coefficients)

    def to_list(self) -> list:
        return list(self.coefficients)

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        n = max(len(self), len(other))
        return GradedPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __mul__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        out = [0] * max(0, len(self) + len(other) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return GradedPolynomial(tuple(out))

    def truncate(self, max_degree: int) -> "GradedPolynomial":
        return GradedPolynomial(self.coefficients[:max_degree + 1])

    def reflect(self, r: int) -> "GradedPolynomial":
        """``t^r * p(1/t)``; requires ``degree <= r``."""
        if self.degree > r:
            raise ValueError(f"degree {self.degree} exceeds {r}")
        return GradedPolynomial(tuple(self[r - k] for k in range(r + 1)))

    def __repr__(self):
        terms = [f"{c}" if k == 0 else f"{c}*t^{k}" for k, c in enumerate(self.coefficients) if c]
        return " + ".join(terms) if terms else "0"


def _box_polynomial(decomp: BoxDecomposition, sign: int) -> GradedPolynomial:
    counts = Counter(p.degree for p in decomp.box_union(sign))
    top = max(counts, default=-1)
    return GradedPolynomial(tuple(counts.get(k, 0) for k in range(top + 1)))


def s_polynomial(decomp: BoxDecomposition) -> GradedPolynomial:
    """``S(t) = sum over box points b of B_{I,xi} of t^deg(b)``."""
    return _box_polynomial(decomp, PLUS)


def t_polynomial(decomp: BoxDecomposition) -> GradedPolynomial:
    """``T(t) = sum over box points b of B_{I,-xi} of t^deg(b)``."""
    return _box_polynomial(decomp, MINUS)


def slice_counts(cone: GradedCone, max_degree: int, interior_only: bool = False,
                 triangulation=None) -> list[int]:
    pts = lattice_points_up_to_degree(cone, max_degree, interior_only, triangulation)
    counts = Counter(p.degree for p in pts)
    return [counts.get(d, 0) for d in range(max_degree + 1)]


def hilbert_numerator_truncated(cone: GradedCone, max_degree: int, interior_only: bool = False,
                                triangulation=None) -> GradedPolynomial:
    """``(1-t)^r * sum_n t^deg(n)`` modulo ``t^(max_degree+1)``, by counting points."""
    counts = slice_counts(cone, max_degree, interior_only, triangulation)
    return GradedPolynomial(tuple(multiply_by_one_minus_t_power(counts, cone.rank)))


def multiply_by_one_minus_t_power(series: Sequence, k: int) -> list:
    """Coefficients of ``(1-t)^k * series``, truncated to the length of ``series``."""
    factor = [(-1) ** j * comb(k, j) for j in range(k + 1)]
    return [sum(factor[j] * series[l - j] for j in range(min(k, l) + 1))
            for l in range(len(series))]


def check_duality(S: GradedPolynomial, T: GradedPolynomial, r: int) -> bool:
    """``S(t) == t^r T(1/t)`` coefficientwise."""
    if S.degree > r or T.degree > r:
        return False
    return all(S[k] == T[r - k] for k in range(r + 1))
