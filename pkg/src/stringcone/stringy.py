"""String-theoretic E-polynomials assembled from strata and their local cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cone import GradedCone
from .decomposition import build_decomposition, choose_xi
from .series import GradedPolynomial, s_polynomial
from .triangulation import triangulate


@dataclass(frozen=True)
class BivariatePolynomial:
    """Integer polynomial ``sum a_{p,q} u^p v^q``; zero coefficients are dropped."""

    coefficients: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (p, q), a in self.coefficients.items():
            if p < 0 or q < 0:
                raise ValueError(f"negative exponent ({p}, {q})")
            if a:
                clean[(int(p), int(q))] = int(a)
        object.__setattr__(self, "coefficients", dict(sorted(clean.items())))

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence[int]]) -> "BivariatePolynomial":
        acc: dict[tuple[int, int], int] = {}
        for t in triples:
            p, q, a = t
            for x in (p, q, a):
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"expected integer triple, got {list(t)}")
            acc[(p, q)] = acc.get((p, q), 0) + a
        return cls(acc)

    def to_triples(self) -> list[list[int]]:
        return [[p, q, a] for (p, q), a in self.coefficients.items()]

    def __getitem__(self, pq: tuple[int, int]) -> int:
        return self.coefficients.get(pq, 0)

    def __eq__(self, other):
        return isinstance(other, BivariatePolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(self.coefficients.items()))

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        acc = dict(self.coefficients)
        for k, a in other.coefficients.items():
            acc[k] = acc.get(k, 0) + a
        return BivariatePolynomial(acc)

    def times_diagonal(self, poly: GradedPolynomial) -> "BivariatePolynomial":
        """Multiply by ``poly(uv)``."""
        acc: dict[tuple[int, int], int] = {}
        for (p, q), a in self.coefficients.items():
            for j, s in enumerate(poly.coefficients):
                if s:
                    acc[(p + j, q + j)] = acc.get((p + j, q + j), 0) + a * s
        return BivariatePolynomial(acc)

    @property
    def total_degree(self) -> int:
        return max((p + q for p, q in self.coefficients), default=-1)


@dataclass(frozen=True)
class StratumRecord:
    e_polynomial: BivariatePolynomial
    # None marks a smooth stratum, same as a rank-0 cone
    local_cone: GradedCone | None = None


def cone_s_polynomial(cone: GradedCone | None, seed: int = 0) -> GradedPolynomial:
    if cone is None or cone.rank == 0:
        return GradedPolynomial((1,))
    tri = triangulate(cone, seed=seed)
    return s_polynomial(build_decomposition(tri, choose_xi(tri, seed)))


def string_e_polynomial(strata: Iterable[StratumRecord], seed: int = 0) -> BivariatePolynomial:
    """``E_st = sum_i E(X_i; u, v) * S_{K_i}(uv)``."""
    total = BivariatePolynomial()
    for st in strata:
        total = total + st.e_polynomial.times_diagonal(cone_s_polynomial(st.local_cone, seed))
    return total


def string_hodge_numbers(e: BivariatePolynomial) -> dict[tuple[int, int], int]:
    return {(p, q): (-1) ** (p + q) * a for (p, q), a in e.coefficients.items()}
