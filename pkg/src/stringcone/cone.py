"""Graded rational polyhedral cones and their lattice points."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple, Sequence

from .exactmath import int_adjugate, minors_gcd, nonnegative_combination, rank


class InvalidCone(ValueError):
    """Raised when an operation needs a cone that passed :func:`validate`."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.failures) or "invalid cone")
        self.report = report


class LatticePoint(NamedTuple):
    coords: tuple[int, ...]
    degree: int


@dataclass(frozen=True)
class GradedCone:
    """A pointed full-dimensional cone with a grading and chosen degree-1 points.

    ``rays`` are the primitive generators of the one-dimensional faces and
    ``points`` the configuration ``e_1..e_d``; every ray must be one of the
    points.  ``rank == 0`` describes the trivial cone ``{0}``.
    """

    rank: int
    rays: tuple[tuple[int, ...], ...]
    degree: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in v) for v in self.rays))
        object.__setattr__(self, "points", tuple(tuple(int(x) for x in v) for v in self.points))
        object.__setattr__(self, "degree", tuple(int(x) for x in self.degree))

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]], degree: Sequence[int],
                    rays: Sequence[Sequence[int]] | None = None) -> "GradedCone":
        """Build a cone from its configuration, detecting the rays if not given."""
        pts = [tuple(int(x) for x in p) for p in points]
        if rays is None:
            rays = [p for j, p in enumerate(pts)
                    if nonnegative_combination(pts[:j] + pts[j + 1:], p) is None]
        return cls(len(degree), tuple(rays), tuple(degree), tuple(pts))

    @property
    def num_points(self) -> int:
        return len(self.points)

    def deg(self, v: Sequence) -> int:
        return sum(a * b for a, b in zip(self.degree, v))

    def lattice_point(self, coords: Sequence[int]) -> LatticePoint:
        c = tuple(int(x) for x in coords)
        return LatticePoint(c, self.deg(c))


@dataclass
class ValidationReport:
    valid: bool
    failures: list[str] = field(default_factory=list)
    points_lattice_index: int | None = None

    def to_dict(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures),
                "points_lattice_index": self.points_lattice_index}


def validate(cone: GradedCone) -> ValidationReport:
    """Check the standing assumptions on a graded cone.

    Every failed condition is listed; nothing is raised.
    """
    r = cone.rank
    fails: list[str] = []
    vectors = [("degree", cone.degree)] + [("ray", v) for v in cone.rays] + \
        [("point", v) for v in cone.points]
    bad_shape = [f"{kind} {list(v)} does not have length {r}" for kind, v in vectors
                 if len(v) != r]
    if bad_shape:
        return ValidationReport(False, bad_shape)
    if r == 0:
        if cone.rays or cone.points:
            fails.append("rank-0 cone cannot have rays or points")
        return ValidationReport(not fails, fails, 1)

    for v in cone.rays:
        if cone.deg(v) != 1:
            fails.append(f"ray generator {list(v)} has degree {cone.deg(v)}, expected 1")
    for v in cone.points:
        if cone.deg(v) != 1:
            fails.append(f"point {list(v)} has degree {cone.deg(v)}, expected 1")
    if len(set(cone.points)) != len(cone.points):
        fails.append("points are not distinct")
    pts = set(cone.points)
    for v in cone.rays:
        if v not in pts:
            fails.append(f"points do not include ray generator {list(v)}")
    if not cone.rays:
        fails.append("no ray generators given")
    else:
        # pointed iff 0 is not a convex combination of the rays
        lifted = [tuple(v) + (1,) for v in cone.rays]
        if nonnegative_combination(lifted, (0,) * r + (1,)) is not None:
            fails.append("cone is not pointed")
        for j, v in enumerate(cone.rays):
            others = cone.rays[:j] + cone.rays[j + 1:]
            if others and nonnegative_combination(others, v) is not None:
                fails.append(f"ray generator {list(v)} is not extremal")
        for v in cone.points:
            if v not in cone.rays and nonnegative_combination(cone.rays, v) is None:
                fails.append(f"point {list(v)} lies outside the cone spanned by the rays")
    index = None
    if not cone.points or rank(cone.points) < r:
        fails.append("points do not span the ambient space (cone not full-dimensional)")
    else:
        index = minors_gcd(cone.points, r)
    return ValidationReport(not fails, fails, index)


def require_valid(cone: GradedCone) -> None:
    report = validate(cone)
    if not report.valid:
        raise InvalidCone(report)


def degree_adapted_basis(degree: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Unimodular ``U`` with ``degree @ U == (1, 0, ..., 0)`` and its inverse.

    Column operations on the degree covector, mirrored on ``U``.
    """
    r = len(degree)
    a = list(degree)
    U = [[int(i == j) for j in range(r)] for i in range(r)]

    def col_sub(j, i, q):
        a[j] -= q * a[i]
        for row in U:
            row[j] -= q * row[i]

    while sum(1 for x in a if x) > 1:
        i = min((k for k in range(r) if a[k]), key=lambda k: abs(a[k]))
        for j in range(r):
            if j != i and a[j]:
                col_sub(j, i, a[j] // a[i])
    nz = [k for k in range(r) if a[k]]
    if len(nz) != 1 or abs(a[nz[0]]) != 1:
        raise ValueError(f"degree covector {list(degree)} is not primitive")
    i = nz[0]
    for row in U:
        row[0], row[i] = row[i], row[0]
    a[0], a[i] = a[i], a[0]
    if a[0] == -1:
        for row in U:
            row[0] = -row[0]
    adj, det = int_adjugate(U)
    Uinv = [[x * det for x in row] for row in adj]  # det is +-1
    return U, Uinv


def contains(cone: GradedCone, p: Sequence, strict: bool = False, triangulation=None) -> bool:
    """Membership in ``K`` (or its interior when ``strict``) via simplex location."""
    from .triangulation import default_triangulation

    tri = triangulation if triangulation is not None else default_triangulation(cone)
    return tri.contains(p, strict=strict)


def lattice_points_up_to_degree(cone: GradedCone, max_degree: int, interior_only: bool = False,
                                triangulation=None) -> list[LatticePoint]:
    """All lattice points of degree ``<= max_degree`` in ``K`` (or ``K^open``).

    Sorted by degree, then lexicographically.  Each degree slice is scanned over
    the integer bounding box of its dilated configuration, in coordinates where
    the degree is the first coordinate.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if cone.rank == 0:
        return [LatticePoint((), 0)]
    from .triangulation import default_triangulation

    tri = triangulation if triangulation is not None else default_triangulation(cone)
    U, Uinv = degree_adapted_basis(cone.degree)
    r = cone.rank
    ys = [[sum(Uinv[k][j] * e[j] for j in range(r)) for k in range(r)] for e in cone.points]
    lo = [min(y[k] for y in ys) for k in range(1, r)]
    hi = [max(y[k] for y in ys) for k in range(1, r)]
    out: list[LatticePoint] = []
    for d in range(max_degree + 1):
        slice_pts = []
        ranges = [range(d * a, d * b + 1) for a, b in zip(lo, hi)]
        for z in product(*ranges):
            y = (d,) + z
            n = tuple(sum(U[k][j] * y[j] for j in range(r)) for k in range(r))
            if tri.contains(n, strict=interior_only):
                slice_pts.append(LatticePoint(n, d))
        slice_pts.sort()
        out.extend(slice_pts)
    return out
