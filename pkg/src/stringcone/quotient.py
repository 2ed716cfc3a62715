"""Graded quotients of the semigroup ring by generic linear forms.

``R = C[K]`` and ``R^open = C[K^open]`` are modelled degree by degree: the
degree-``l`` slice has the lattice points of degree ``l`` as its monomial
basis.  The forms ``Z_j = sum_i <m_j, e_i> c_i x_i`` use the standard dual
basis ``m_j`` and nonzero rational stand-ins ``c_i`` for the generic unit
coefficients.

Quotients by the prefixes ``Z_1..Z_k`` are built iteratively, each level a
quotient of the previous one.  Every quotient basis consists of classes of
monomials ("standard monomials"), and normal forms are memoised per level.
The first level is solved by back substitution: with ``e*`` the
lexicographically largest point in the support of ``Z_1``, the generators
``Z_1 x^m`` have pairwise distinct leading monomials ``x^(m + e*)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cone import GradedCone, LatticePoint, lattice_points_up_to_degree
from .decomposition import MINUS, PLUS, BoxDecomposition
from gmpy2 import mpq

from .exactmath import RatMatrix, as_rational, format_rational, rank, rref_inplace
from .report import Report
from .series import multiply_by_one_minus_t_power


_ZERO, _ONE = mpq(0), mpq(1)


def _mpq(x) -> mpq:
    x = as_rational(x)
    return mpq(x.numerator, x.denominator)


def _fraction(x: mpq) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


class NonGenericCoefficients(ValueError):
    """The chosen coefficients do not give the generic quotient; reseed."""


@dataclass(frozen=True, eq=False)
class GradedSlice:
    degree: int
    monomials: tuple[LatticePoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {m.coords: i for i, m in enumerate(self.monomials)})

    def __len__(self):
        return len(self.monomials)

    def position(self, coords: Sequence[int]) -> int | None:
        return self._pos.get(tuple(coords))


def graded_slices(cone: GradedCone, max_degree: int, interior_only: bool = False,
                  triangulation=None) -> list[GradedSlice]:
    pts = lattice_points_up_to_degree(cone, max_degree, interior_only, triangulation)
    by_deg: list[list[LatticePoint]] = [[] for _ in range(max_degree + 1)]
    for p in pts:
        by_deg[p.degree].append(p)
    return [GradedSlice(d, tuple(sorted(ms))) for d, ms in enumerate(by_deg)]


@dataclass(frozen=True)
class LinearFormZ:
    index: int
    dual_vector: tuple[int, ...]
    coefficients: tuple[Fraction, ...]

    def term_coefficients(self, cone: GradedCone) -> tuple[Fraction, ...]:
        """Coefficient of ``x_i`` in this form: ``<m_j, e_i> * c_i``."""
        return tuple(sum(m * x for m, x in zip(self.dual_vector, e)) * c
                     for e, c in zip(cone.points, self.coefficients))


def forms_from_coefficients(cone: GradedCone, coefficients: Sequence) -> list[LinearFormZ]:
    c = tuple(as_rational(x) for x in coefficients)
    if len(c) != cone.num_points:
        raise ValueError(f"expected {cone.num_points} coefficients, got {len(c)}")
    r = cone.rank
    return [LinearFormZ(j, tuple(int(i == j) for i in range(r)), c) for j in range(r)]


def random_coefficients(cone: GradedCone, seed: int = 0, bound: int = 12) -> tuple[Fraction, ...]:
    """Distinct nonzero integers drawn from ``[-bound, bound]``."""
    rng = random.Random(seed)
    pool = [x for x in range(-bound, bound + 1) if x]
    return tuple(Fraction(x) for x in rng.sample(pool, cone.num_points))


def make_forms(cone: GradedCone, seed: int = 0, coefficients: Sequence | None = None,
               ) -> list[LinearFormZ]:
    if coefficients is None:
        coefficients = random_coefficients(cone, seed)
    return forms_from_coefficients(cone, coefficients)


def specialized_coefficients(q, heights: Sequence) -> tuple[Fraction, ...]:
    """``c_i = q ** (psi(e_i) - min psi)``; needs integral heights.

    All ``e_i`` have degree 1, so the shift is the linear function ``min psi * deg``.
    It rescales ``x^n`` by ``q^(-min psi * deg n)``, a graded automorphism of
    ``R``, and leaves every quotient dimension unchanged while keeping powers
    nonnegative.
    """
    q = as_rational(q)
    if q == 0:
        raise ValueError("q must be nonzero")
    hs = [as_rational(h) for h in heights]
    if any(h.denominator != 1 for h in hs):
        raise ValueError("q-specialisation needs integer heights")
    low = min(hs, default=Fraction(0))
    return tuple(q ** int(h - low) for h in hs)


def multiplication_matrix(cone: GradedCone, source: GradedSlice, target: GradedSlice,
                          form: LinearFormZ) -> RatMatrix:
    """Matrix of multiplication by ``form`` from ``source`` to ``target``.

    Rows are indexed by target monomials and columns by source monomials.
    """
    if target.degree != source.degree + 1:
        raise ValueError("target slice must be one degree above the source")
    coef = form.term_coefficients(cone)
    m = [[Fraction(0)] * len(source) for _ in range(len(target))]
    for col, mono in enumerate(source.monomials):
        for e, a in zip(cone.points, coef):
            if a == 0:
                continue
            row = target.position(tuple(x + y for x, y in zip(mono.coords, e)))
            if row is None:
                raise ValueError(f"{mono.coords} + {e} leaves the module")
            m[row][col] += a
    return RatMatrix(m, cols=len(source))


def quotient_dimensions(cone: GradedCone, slices: Sequence[GradedSlice],
                        forms: Sequence[LinearFormZ]) -> list[list[int]]:
    """``dims[k][l] = dim (M / (Z_1..Z_k) M)_l`` by direct rank computation.

    The degree-``l`` part of ``(Z_1..Z_k) M`` is spanned by the images of the
    degree ``l-1`` monomials under ``Z_1..Z_k``; its dimension is the rank of
    the horizontally stacked multiplication matrices.
    """
    dims = [[len(s) for s in slices]]
    for k in range(1, len(forms) + 1):
        row = [len(slices[0])]
        for l in range(1, len(slices)):
            blocks = [multiplication_matrix(cone, slices[l - 1], slices[l], z).entries
                      for z in forms[:k]]
            stacked = [sum((list(b[i]) for b in blocks), []) for i in range(len(slices[l]))]
            row.append(len(slices[l]) - (rank(stacked) if stacked and stacked[0] else 0))
        dims.append(row)
    return dims


class _Level:
    """One quotient level at one degree: standard monomials plus a projection."""

    __slots__ = ("std", "rows", "pivots", "keep", "nf")

    def __init__(self, std, rows=(), pivots=(), keep=None):
        self.std = std          # monomial coords whose classes form the basis
        self.rows = rows        # reduced echelon rows in the previous level's coordinates
        self.pivots = pivots
        self.keep = keep        # previous-level coordinates that survive; None = all
        self.nf: dict = {}


def _project(level: _Level, v: list, prev_dim: int) -> list:
    v = list(v)
    for row, p in zip(level.rows, level.pivots):
        f = v[p]
        if f:
            for j, x in enumerate(row):
                if x:
                    v[j] -= f * x
    keep = level.keep if level.keep is not None else range(prev_dim)
    return [v[j] for j in keep]


@dataclass(eq=False)
class QuotientPresentation:
    """Degree-truncated model of ``M / (Z_1..Z_k) M`` for ``M = R`` or ``R^open``."""

    cone: GradedCone
    forms: tuple[LinearFormZ, ...]
    slices: tuple[GradedSlice, ...]
    interior: bool
    box_basis: dict[int, tuple[LatticePoint, ...]] = field(default_factory=dict)

    def __post_init__(self):
        self.max_degree = len(self.slices) - 1
        self._coef = [[_mpq(a) for a in z.term_coefficients(self.cone)] for z in self.forms]
        self._levels: list[list[_Level]] = []   # [degree][k]
        for l in range(self.max_degree + 1):
            self._levels.append(self._build_degree(l))
        self.dims = [[len(self._levels[l][k].std) for l in range(self.max_degree + 1)]
                     for k in range(len(self.forms) + 1)]
        self._box_inverse: dict[int, list[list]] = {}
        self.certified = self._certify()

    @property
    def flavor(self) -> str:
        return "R_open" if self.interior else "R"

    @property
    def rank(self) -> int:
        return self.cone.rank

    def _shift(self, coords, i):
        return tuple(x + y for x, y in zip(coords, self.cone.points[i]))

    def _build_degree(self, l: int) -> list[_Level]:
        sl = self.slices[l]
        base = _Level([m.coords for m in sl.monomials])
        levels = [base]
        if not self.forms:
            return levels
        if l == 0:
            return levels + [_Level(list(base.std)) for _ in self.forms]
        levels.append(self._first_level(l))
        for k in range(2, len(self.forms) + 1):
            prev = levels[k - 1]
            prev_lower = self._levels[l - 1][k - 1]
            coef = self._coef[k - 1]
            images = []
            for m in prev_lower.std:
                v = [_ZERO] * len(prev.std)
                for i, a in enumerate(coef):
                    if a:
                        w = self._nf(l, k - 1, self._shift(m, i), levels)
                        for j, x in enumerate(w):
                            if x:
                                v[j] += a * x
                images.append(v)
            images = [v for v in images if any(v)]
            if images:
                rows, pivots = rref_inplace(images, len(prev.std))
            else:
                rows, pivots = [], []
            piv = set(pivots)
            std = [c for j, c in enumerate(prev.std) if j not in piv]
            levels.append(_Level(std, rows, pivots,
                                 [j for j in range(len(prev.std)) if j not in piv]))
        return levels

    def _first_level(self, l: int) -> _Level:
        coef = self._coef[0]
        support = [i for i, a in enumerate(coef) if a]
        sl = self.slices[l]
        lower = self.slices[l - 1]
        if not support:
            return _Level([m.coords for m in sl.monomials])
        lead = max(support, key=lambda i: self.cone.points[i])
        e_star = self.cone.points[lead]
        a_star = coef[lead]
        std, leading = [], set()
        for m in sl.monomials:
            src = tuple(x - y for x, y in zip(m.coords, e_star))
            if lower.position(src) is not None:
                leading.add(m.coords)
            else:
                std.append(m.coords)
        lev = _Level(std)
        pos = {c: j for j, c in enumerate(std)}
        nf: dict = {}
        for m in sl.monomials:  # ascending lex order; reductions only reach smaller monomials
            c = m.coords
            if c not in leading:
                nf[c] = {pos[c]: _ONE}
                continue
            src = tuple(x - y for x, y in zip(c, e_star))
            acc: dict = {}
            for i in support:
                if i == lead:
                    continue
                f = -coef[i] / a_star
                for j, x in nf[self._shift(src, i)].items():
                    acc[j] = acc.get(j, 0) + f * x
            nf[c] = {j: x for j, x in acc.items() if x}
        lev.nf = {c: [v.get(j, _ZERO) for j in range(len(std))] for c, v in nf.items()}
        return lev

    def _nf(self, l: int, k: int, coords, levels=None) -> list:
        """Coordinates of the class of ``x^coords`` in the level-``k`` basis at degree ``l``."""
        levels = levels if levels is not None else self._levels[l]
        lev = levels[k]
        got = lev.nf.get(coords)
        if got is not None:
            return got
        if k == 0:
            sl = self.slices[l]
            pos = sl.position(coords)
            if pos is None:
                raise ValueError(f"{list(coords)} is not a monomial of degree {l}")
            v = [_ZERO] * len(sl)
            v[pos] = _ONE
        elif l == 0:
            v = self._nf(l, k - 1, coords, levels)
        else:
            prev = self._nf(l, k - 1, coords, levels)
            v = _project(lev, prev, len(prev))
        lev.nf[coords] = v
        return v

    def class_of(self, coords: Sequence[int], k: int | None = None) -> list[Fraction]:
        """Class of a monomial in the quotient by ``Z_1..Z_k`` (default: all forms)."""
        coords = tuple(coords)
        d = self.cone.deg(coords)
        if not 0 <= d <= self.max_degree:
            raise ValueError(f"degree {d} is outside the truncation 0..{self.max_degree}")
        return [_fraction(x) for x in self._nf(d, len(self.forms) if k is None else k, coords)]

    def _certify(self) -> bool:
        top = len(self.forms)
        for l in range(self.max_degree + 1):
            basis = self.box_basis.get(l, ())
            if self.dims[top][l] != len(basis):
                return False
            if not basis:
                continue
            cols = [self._nf(l, top, b.coords) for b in basis]
            mat = [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]
            aug = [row + [_ONE if i == j else _ZERO for j in range(len(basis))]
                   for i, row in enumerate(mat)]
            red, piv = rref_inplace(aug, 2 * len(basis))
            if piv[:len(basis)] != list(range(len(basis))) or len(piv) != len(basis):
                return False
            self._box_inverse[l] = [row[len(basis):] for row in red]
        return True

    def normal_form(self, coords: Sequence[int]) -> tuple[Fraction, ...]:
        """Coefficients ``alpha_b`` with ``x^n = sum alpha_b x^b`` in the full quotient.

        Aligned with ``box_basis[deg n]``; empty above the top box degree.
        """
        if not self.certified:
            raise NonGenericCoefficients("quotient dimensions do not match the box basis")
        coords = tuple(coords)
        d = self.cone.deg(coords)
        v = self._nf(d, len(self.forms), coords) if 0 <= d <= self.max_degree else None
        if v is None:
            raise ValueError(f"degree {d} is outside the truncation 0..{self.max_degree}")
        if not self.box_basis.get(d):
            return ()
        inv = self._box_inverse[d]
        return tuple(_fraction(sum((a * x for a, x in zip(row, v)), _ZERO)) for row in inv)

    def to_dict(self) -> dict:
        return {"flavor": self.flavor, "max_degree": self.max_degree,
                "coefficients": [format_rational(c) for c in self.forms[0].coefficients]
                if self.forms else [],
                "dims": self.dims, "certified": self.certified}


def build_presentation(decomp: BoxDecomposition, forms: Sequence[LinearFormZ],
                       max_degree: int | None = None, interior: bool = False,
                       ) -> QuotientPresentation:
    cone = decomp.cone
    D = 2 * cone.rank + 2 if max_degree is None else max_degree
    slices = graded_slices(cone, D, interior, decomp.triangulation)
    sign = MINUS if interior else PLUS
    basis: dict[int, list] = {}
    for b in decomp.box_union(sign):
        basis.setdefault(b.degree, []).append(b)
    return QuotientPresentation(cone, tuple(forms), tuple(slices), interior,
                                {d: tuple(v) for d, v in basis.items()})


def regularity_check(dims: Sequence[Sequence[int]], r: int, max_degree: int | None = None,
                     ) -> Report:
    """Certify ``f_k = (1-t)^k f_0`` through ``max_degree`` for every prefix ``k``."""
    f0 = list(dims[0])
    D = len(f0) - 1 if max_degree is None else max_degree
    failures = []
    first = None
    for k in range(1, r + 1):
        expected = multiply_by_one_minus_t_power(f0, k)
        for l in range(D + 1):
            if dims[k][l] != expected[l]:
                failures.append(f"prefix {k}, degree {l}: dimension {dims[k][l]}, "
                                f"regular sequence needs {expected[l]}")
                if first is None:
                    first = {"prefix": k, "degree": l}
    return Report(not failures, failures, {"first_failure": first, "max_degree": D})


def normal_form(presentation: QuotientPresentation, coords: Sequence[int]) -> tuple[Fraction, ...]:
    return presentation.normal_form(coords)
