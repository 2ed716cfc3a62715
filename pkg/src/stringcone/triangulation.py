"""Regular triangulations of the degree-1 configuration from lifting heights.

The strictly convex piecewise-linear function ``psi`` is stored through its
linear pieces: one rational covector per maximal simplex.  Convexity is meant
in the toric sense, ``psi(x + y) >= psi(x) + psi(y)``, so ``psi`` is the
minimum of its pieces and the cells come from the upper hull of the lift.  Point location
accepts :class:`~stringcone.exactmath.EpsNumber` vectors so that ``n + eps*xi``
is handled symbolically.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .cone import GradedCone, require_valid
from .exactmath import (EpsNumber, as_rational, int_adjugate, nullspace, rank,
                        solve_linear)


class TriangulationError(ValueError):
    pass


class NotStrictlyConvex(TriangulationError):
    """The heights do not induce a triangulation using every point."""


class DegenerateConfiguration(TriangulationError):
    pass


class PointOutsideCone(ValueError):
    pass


class NotInAnySimplex(PointOutsideCone):
    pass


class AmbiguousLocation(ValueError):
    """A perturbed point sits on a wall: the perturbation slope is not generic."""


@dataclass(frozen=True, eq=False)
class Simplex:
    indices: tuple[int, ...]
    functional: tuple[Fraction, ...]
    lattice_index: int
    # coordinates in the simplex basis are inverse_num @ p / denominator
    inverse_num: tuple[tuple[int, ...], ...] = field(repr=False)
    denominator: int = field(repr=False)

    def coordinates(self, p: Sequence) -> tuple:
        """Coefficients of ``p`` in the basis ``e_i, i in indices``.

        Works for rationals and for :class:`EpsNumber` entries alike.
        """
        den = self.denominator
        out = []
        for row in self.inverse_num:
            acc = sum((a * x for a, x in zip(row, p) if a), Fraction(0))
            out.append(acc / den)
        return tuple(out)

    def int_coordinates(self, p: Sequence[int]) -> list[int]:
        """``denominator`` times the simplex coordinates of an integer vector."""
        return [sum(a * x for a, x in zip(row, p)) for row in self.inverse_num]

    def evaluate(self, p: Sequence):
        return sum((a * x for a, x in zip(self.functional, p)), Fraction(0))


@dataclass(frozen=True, eq=False)
class Triangulation:
    cone: GradedCone
    heights: tuple[Fraction, ...]
    simplices: tuple[Simplex, ...]
    attempts: int = 1

    def __post_init__(self):
        # integer direction strictly inside K, used for interior tests
        xi0 = tuple(sum(e[k] for e in self.cone.points) for k in range(self.cone.rank))
        object.__setattr__(self, "_interior_direction", xi0)
        object.__setattr__(self, "_inner_slopes",
                           tuple(tuple(s.int_coordinates(xi0)) for s in self.simplices))

    @property
    def normalized_volume(self) -> int:
        return sum(s.lattice_index for s in self.simplices)

    def simplex(self, indices: Sequence[int]) -> Simplex:
        key = tuple(sorted(indices))
        for s in self.simplices:
            if s.indices == key:
                return s
        raise KeyError(f"no simplex with indices {key}")

    def contains(self, p: Sequence, strict: bool = False) -> bool:
        """Membership in ``K``; with ``strict``, in the interior.

        The interior test locates ``p - eps*xi0`` with ``xi0 = sum e_i``: a
        point of ``K`` is interior exactly when this perturbation stays in
        ``K``.
        """
        if self.cone.rank == 0:
            return len(p) == 0
        if all(isinstance(x, int) for x in p):
            for s, slope in zip(self.simplices, self._inner_slopes):
                a = s.int_coordinates(p)
                if strict:
                    if all(ai > 0 or (ai == 0 and si <= 0) for ai, si in zip(a, slope)):
                        return True
                elif all(ai >= 0 for ai in a):
                    return True
            return False
        q = [as_rational(x) for x in p]
        if strict:
            pe = [EpsNumber(x, -k) for x, k in zip(q, self._interior_direction)]
        else:
            pe = [EpsNumber(x) for x in q]
        return bool(self._candidates(pe))

    def _candidates(self, p: Sequence[EpsNumber]) -> list[tuple[Simplex, tuple]]:
        found = []
        for s in self.simplices:
            coords = s.coordinates(p)
            if all(c >= 0 for c in coords):
                found.append((s, coords))
        return found

    def to_dict(self) -> dict:
        from .exactmath import format_rational
        return {
            "heights": [format_rational(h) for h in self.heights],
            "simplices": [{"indices": list(s.indices),
                           "functional": [format_rational(x) for x in s.functional],
                           "lattice_index": s.lattice_index} for s in self.simplices],
            "normalized_volume": self.normalized_volume,
            "attempts": self.attempts,
        }


def _make_simplex(cone: GradedCone, idx: tuple[int, ...], functional) -> Simplex:
    # columns are the generators: B @ coords = p
    B = [[cone.points[i][k] for i in idx] for k in range(cone.rank)]
    adj, det = int_adjugate(B)
    sgn = 1 if det > 0 else -1
    inv = tuple(tuple(sgn * x for x in row) for row in adj)
    return Simplex(idx, tuple(functional), abs(det), inv, abs(det))


def build_triangulation(cone: GradedCone, heights: Sequence) -> Triangulation:
    """Regular triangulation induced by lifting ``e_i`` to ``heights[i]``.

    A subset ``I`` of ``rank`` independent points is a cell iff the covector
    interpolating the heights on ``I`` lies strictly above the heights at all
    other points.  Ties are not repaired: they raise :class:`NotStrictlyConvex`.
    """
    require_valid(cone)
    r, d = cone.rank, cone.num_points
    h = tuple(as_rational(x) for x in heights)
    if len(h) != d:
        raise ValueError(f"expected {d} heights, got {len(h)}")
    if r == 0:
        return Triangulation(cone, h, (Simplex((), (), 1, (), 1),))
    if rank(cone.points) < r:
        raise DegenerateConfiguration("points do not span")
    cells = []
    for idx in combinations(range(d), r):
        rows = [cone.points[i] for i in idx]
        sol = solve_linear(rows, [h[i] for i in idx])
        if sol is None or not sol.unique:
            continue
        lam = sol.x
        above, tie = True, None
        for j in range(d):
            if j in idx:
                continue
            v = sum(a * x for a, x in zip(lam, cone.points[j]))
            if v < h[j]:
                above = False
                break
            if v == h[j]:
                tie = j
        if not above:
            continue
        if tie is not None:
            raise NotStrictlyConvex(
                f"lower cell through points {list(idx)} also contains point {tie}; "
                "the lifted subdivision is not a triangulation")
        cells.append(_make_simplex(cone, idx, lam))
    used = {i for s in cells for i in s.indices}
    missing = sorted(set(range(d)) - used)
    if missing:
        raise NotStrictlyConvex(f"points {missing} are not vertices of the triangulation")
    tri = Triangulation(cone, h, tuple(cells))
    _check_covering(tri)
    return tri


def _check_covering(tri: Triangulation) -> None:
    """Each interior wall is shared by exactly two cells on opposite sides."""
    cone = tri.cone
    r = cone.rank
    if r <= 1:
        if len(tri.simplices) != 1:
            raise TriangulationError("rank <= 1 cone must have a single cell")
        return
    walls: dict[tuple[int, ...], list[tuple[Simplex, int]]] = {}
    for s in tri.simplices:
        for v in s.indices:
            walls.setdefault(tuple(i for i in s.indices if i != v), []).append((s, v))
    for wall, cells in walls.items():
        normal = nullspace([cone.points[i] for i in wall])[0]
        side = [sum(a * x for a, x in zip(normal, e)) for e in cone.points]
        if all(x >= 0 for x in side) or all(x <= 0 for x in side):
            if len(cells) != 1:
                raise TriangulationError(f"boundary wall {wall} lies in {len(cells)} cells")
            continue
        if len(cells) != 2 or side[cells[0][1]] * side[cells[1][1]] >= 0:
            raise TriangulationError(f"interior wall {wall} is not shared by two opposite cells")
    probe = tri._interior_direction
    probe = [3 * x + 1 + k for k, x in enumerate(probe)]
    hits = 0
    for s in tri.simplices:
        coords = s.coordinates(probe)
        if all(c > 0 for c in coords):
            hits += 1
    if hits > 1:
        raise TriangulationError("cells overlap")


def convex_heights(cone: GradedCone, rng: random.Random, scale: int = 64) -> tuple[int, ...]:
    """Integer heights ``-scale*|e_i|^2 + noise`` with noise drawn from ``[0, scale/8)``.

    The quadratic term puts every lifted point on the upper hull; the noise
    breaks ties between co-spherical points.
    """
    noise = max(1, scale // 8)
    return tuple(rng.randrange(noise) - scale * sum(x * x for x in e) for e in cone.points)


def triangulate(cone: GradedCone, heights: Sequence | None = None, seed: int = 0,
                max_attempts: int = 64) -> Triangulation:
    """Build a triangulation, drawing seeded integer heights when none are given.

    Explicit heights are used once and any failure propagates.  Random heights
    are redrawn up to ``max_attempts`` times.
    """
    if heights is not None:
        return build_triangulation(cone, heights)
    rng = random.Random(seed)
    last = None
    for attempt in range(1, max_attempts + 1):
        scale = 64 << (attempt // 16)
        try:
            tri = build_triangulation(cone, convex_heights(cone, rng, scale))
        except NotStrictlyConvex as exc:
            last = exc
            continue
        object.__setattr__(tri, "attempts", attempt)
        return tri
    raise NotStrictlyConvex(f"no strictly convex heights after {max_attempts} attempts "
                            f"(seed {seed}): {last}")


@lru_cache(maxsize=128)
def default_triangulation(cone: GradedCone) -> Triangulation:
    return triangulate(cone, seed=0)


def psi_value(tri: Triangulation, p: Sequence):
    """The convex extension ``psi(p) = min_I <lambda_I, p>``.

    ``p`` may carry an infinitesimal part; the min is taken in ``EpsNumber``
    order.
    """
    pe = [EpsNumber.lift(x) for x in p]
    if not tri._candidates(pe):
        raise PointOutsideCone(f"{p!r} is not in the cone")
    return min(s.evaluate(pe) for s in tri.simplices)


def locate_simplex(tri: Triangulation, p: Sequence) -> tuple[Simplex, tuple[EpsNumber, ...]]:
    """Find a simplex cone containing ``p`` together with its coordinates.

    If ``p`` has a nonzero infinitesimal part the answer must be unique with
    all coordinates strictly positive; otherwise :class:`AmbiguousLocation`.
    """
    pe = [EpsNumber.lift(x) for x in p]
    found = tri._candidates(pe)
    if not found:
        raise NotInAnySimplex(f"{p!r} lies in no simplex cone")
    if all(x.slope == 0 for x in pe):
        return found[0]
    strict = [(s, c) for s, c in found if all(x > 0 for x in c)]
    if len(strict) != 1:
        raise AmbiguousLocation(
            f"perturbed point lies on a wall ({len(strict)} open cells, {len(found)} closed)")
    return strict[0]
