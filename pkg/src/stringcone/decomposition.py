"""Box points of simplex cones and the disjoint decomposition of cone lattice points.

For a generic direction ``xi`` in the interior, every lattice point ``n`` of
``K`` is uniquely ``b + sum l_i e_i`` with ``b`` a box point of the simplex
containing ``n + eps*xi``; interior points decompose the same way using
``n - eps*xi``.  Signs are encoded as ``+1`` (``xi``) and ``-1`` (``-xi``).
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from .cone import GradedCone, LatticePoint, lattice_points_up_to_degree
from .exactmath import EpsNumber, as_rational, format_rational
from .report import Report
from .triangulation import Simplex, Triangulation, psi_value

PLUS, MINUS = 1, -1


class GenericityFailure(ValueError):
    pass


class PointNotInDomain(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GenericDirection:
    xi: tuple[Fraction, ...]
    # simplex indices -> coordinates of xi in that simplex, aligned with the indices
    betas: dict[tuple[int, ...], tuple[Fraction, ...]]
    seed: int | None = None
    attempts: int = 1

    def beta(self, simplex: Simplex, i: int) -> Fraction:
        return self.betas[simplex.indices][simplex.indices.index(i)]

    def to_dict(self) -> dict:
        return {"xi": [format_rational(x) for x in self.xi],
                "betas": {",".join(map(str, k)): [format_rational(b) for b in v]
                          for k, v in self.betas.items()},
                "seed": self.seed, "attempts": self.attempts}


def _betas(tri: Triangulation, xi: Sequence[Fraction]) -> dict:
    return {s.indices: s.coordinates(xi) for s in tri.simplices}


def direction_from_xi(tri: Triangulation, xi: Sequence) -> GenericDirection:
    """Wrap a user-supplied direction, checking interiority and genericity."""
    x = tuple(as_rational(v) for v in xi)
    if len(x) != tri.cone.rank:
        raise ValueError(f"xi has length {len(x)}, expected {tri.cone.rank}")
    if not tri.contains(x, strict=True):
        raise GenericityFailure(f"xi {[format_rational(v) for v in x]} is not interior to the cone")
    betas = _betas(tri, x)
    for idx, bs in betas.items():
        if any(b == 0 for b in bs):
            raise GenericityFailure(f"xi lies on a wall of simplex {list(idx)}")
    return GenericDirection(x, betas)


def choose_xi(tri: Triangulation, seed: int = 0, max_attempts: int = 100) -> GenericDirection:
    """Draw ``xi = sum c_i e_i`` with random positive rationals ``c_i``.

    Redraws until every simplex coordinate of ``xi`` is nonzero.
    """
    cone = tri.cone
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        c = [Fraction(rng.randint(1, 1000), 1000) for _ in cone.points]
        xi = tuple(sum((ci * e[k] for ci, e in zip(c, cone.points)), Fraction(0))
                   for k in range(cone.rank))
        betas = _betas(tri, xi)
        if all(b != 0 for bs in betas.values() for b in bs):
            return GenericDirection(xi, betas, seed, attempt)
    raise GenericityFailure(f"no generic xi after {max_attempts} draws (seed {seed})")


@dataclass(frozen=True, eq=False)
class BoxSet:
    simplex: Simplex
    sign: int
    points: tuple[LatticePoint, ...]
    gammas: tuple[tuple[Fraction, ...], ...]


class PointDecomposition(NamedTuple):
    simplex: Simplex
    base: LatticePoint
    multiplicities: tuple[int, ...]  # aligned with simplex.indices


def _in_window(a: int, den: int, slope_sign: int) -> bool:
    # gamma = a/den; half-open side chosen by the sign of the effective slope
    if slope_sign > 0:
        return 0 <= a < den
    return 0 < a <= den


def box_points(tri: Triangulation, direction: GenericDirection, simplex: Simplex,
               sign: int) -> BoxSet:
    """Lattice points of the half-open parallelepiped of ``simplex``.

    Coordinate ``gamma_i`` ranges over ``[0, 1)`` when ``sign*beta_i > 0`` and
    over ``(0, 1]`` otherwise.  Candidates come from the integer bounding box of
    the closed parallelepiped.
    """
    cone = tri.cone
    gens = [cone.points[i] for i in simplex.indices]
    signs = [sign * (1 if b > 0 else -1) for b in direction.betas[simplex.indices]]
    den = simplex.denominator
    lo = [sum(min(0, g[k]) for g in gens) for k in range(cone.rank)]
    hi = [sum(max(0, g[k]) for g in gens) for k in range(cone.rank)]
    found = []
    for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        a = simplex.int_coordinates(p)
        if all(_in_window(ai, den, s) for ai, s in zip(a, signs)):
            found.append((cone.lattice_point(p), tuple(Fraction(ai, den) for ai in a)))
    found.sort()
    return BoxSet(simplex, sign, tuple(p for p, _ in found), tuple(g for _, g in found))


@dataclass(eq=False)
class BoxDecomposition:
    """Box sets of every simplex for both signs, plus a point locator."""

    triangulation: Triangulation
    direction: GenericDirection
    boxes: dict[int, tuple[BoxSet, ...]] = field(default_factory=dict)

    def __post_init__(self):
        tri, d = self.triangulation, self.direction
        if not self.boxes:
            self.boxes = {s: tuple(box_points(tri, d, simplex, s) for simplex in tri.simplices)
                          for s in (PLUS, MINUS)}
        self._beta_signs = {s.indices: tuple(1 if b > 0 else -1 for b in d.betas[s.indices])
                            for s in tri.simplices}
        self._box_lookup = {sg: {p.coords: bs for bs in sets for p in bs.points}
                            for sg, sets in self.boxes.items()}

    @property
    def cone(self) -> GradedCone:
        return self.triangulation.cone

    def box_union(self, sign: int) -> list[LatticePoint]:
        return sorted(p for bs in self.boxes[sign] for p in bs.points)

    def box_set_of(self, b: Sequence[int], sign: int) -> BoxSet | None:
        return self._box_lookup[sign].get(tuple(b))

    def locate(self, n: Sequence[int], sign: int) -> tuple[Simplex, list[int]]:
        """Simplex containing ``n + sign*eps*xi`` and ``den``-scaled coordinates of ``n``."""
        n = tuple(n)
        hits = []
        for s in self.triangulation.simplices:
            a = s.int_coordinates(n)
            bs = self._beta_signs[s.indices]
            if all(ai > 0 or (ai == 0 and sign * b > 0) for ai, b in zip(a, bs)):
                hits.append((s, a))
        if not hits:
            where = "K" if sign == PLUS else "the interior of K"
            raise PointNotInDomain(f"{list(n)} is not in {where}")
        if len(hits) > 1:
            raise GenericityFailure(f"{list(n)} located in {len(hits)} simplices")
        return hits[0]

    def decompose(self, n: Sequence[int], sign: int) -> PointDecomposition:
        cone = self.cone
        if cone.rank == 0:
            return PointDecomposition(self.triangulation.simplices[0], cone.lattice_point(()), ())
        s, a = self.locate(n, sign)
        den = s.denominator
        mult = []
        for ai, b in zip(a, self._beta_signs[s.indices]):
            if sign * b > 0:
                mult.append(ai // den)
            else:
                mult.append((ai - 1) // den)
        base = tuple(x - sum(l * cone.points[i][k] for l, i in zip(mult, s.indices))
                     for k, x in enumerate(n))
        return PointDecomposition(s, cone.lattice_point(base), tuple(mult))


def build_decomposition(tri: Triangulation, direction: GenericDirection) -> BoxDecomposition:
    return BoxDecomposition(tri, direction)


def decompose_point(decomp: BoxDecomposition, n: Sequence[int], sign: int = PLUS,
                    ) -> PointDecomposition:
    """Write ``n = b + sum l_i e_i`` with ``b`` a box point of the located simplex."""
    return decomp.decompose(n, sign)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def verify_partition(decomp: BoxDecomposition, max_degree: int, sign: int = PLUS) -> Report:
    """Brute-force check that the translated simplex semigroups tile the domain.

    Every domain point of degree ``<= max_degree`` must decompose, and the
    forward enumeration of all ``b + sum l_i e_i`` of bounded degree must hit
    each domain point exactly once and nothing else.
    """
    cone = decomp.cone
    tri = decomp.triangulation
    domain = lattice_points_up_to_degree(cone, max_degree, interior_only=(sign == MINUS),
                                         triangulation=tri)
    failures = []
    for p in domain:
        try:
            dec = decomp.decompose(p.coords, sign)
        except (PointNotInDomain, GenericityFailure) as exc:
            failures.append(str(exc))
            continue
        recon = tuple(b + sum(l * cone.points[i][k] for l, i in zip(dec.multiplicities,
                                                                     dec.simplex.indices))
                      for k, b in enumerate(dec.base.coords))
        owner = decomp.box_set_of(dec.base.coords, sign)
        if recon != p.coords or owner is None or owner.simplex is not dec.simplex \
                or any(l < 0 for l in dec.multiplicities):
            failures.append(f"bad decomposition of {list(p.coords)}")
    hits: Counter = Counter()
    for bs in decomp.boxes[sign]:
        gens = [cone.points[i] for i in bs.simplex.indices]
        for b in bs.points:
            budget = max_degree - b.degree
            for total in range(budget + 1):
                for mult in compositions(total, len(gens)):
                    n = tuple(b.coords[k] + sum(l * g[k] for l, g in zip(mult, gens))
                              for k in range(cone.rank))
                    hits[n] += 1
    domain_set = {p.coords for p in domain}
    for n, count in hits.items():
        if n not in domain_set:
            failures.append(f"generated point {list(n)} is outside the domain")
        elif count != 1:
            failures.append(f"point {list(n)} covered {count} times")
    for n in domain_set - set(hits):
        failures.append(f"point {list(n)} not covered")
    return Report(not failures, failures,
                  {"sign": sign, "max_degree": max_degree, "points": len(domain),
                   "generated": sum(hits.values())})


def verify_psi_minimality(decomp: BoxDecomposition, n: Sequence[int], sign: int = PLUS) -> Report:
    """Exhaustively compare ``psi`` over all representations ``n = b + sum k_i e_i``.

    ``b`` ranges over the union of box sets of the given sign.  The canonical
    decomposition must attain equality and every other representation must be
    strictly smaller, in exact ``EpsNumber`` order.
    """
    cone = decomp.cone
    tri = decomp.triangulation
    xi = decomp.direction.xi
    n = tuple(n)
    dn = cone.deg(n)
    canon = decomp.decompose(n, sign)
    canon_k = [0] * cone.num_points
    for l, i in zip(canon.multiplicities, canon.simplex.indices):
        canon_k[i] = l
    canon_key = (canon.base.coords, tuple(canon_k))

    def shifted(v):
        return [EpsNumber(x, sign * s) for x, s in zip(v, xi)]

    lhs = psi_value(tri, shifted(n))
    failures = []
    reps = equalities = 0
    for b in decomp.box_union(sign):
        if b.degree > dn:
            continue
        rest = tuple(x - y for x, y in zip(n, b.coords))
        psi_b = psi_value(tri, shifted(b.coords))
        for k in compositions(dn - b.degree, cone.num_points):
            if any(sum(ki * e[c] for ki, e in zip(k, cone.points)) != rest[c]
                   for c in range(cone.rank)):
                continue
            reps += 1
            rhs = psi_b + sum((ki * h for ki, h in zip(k, tri.heights)), Fraction(0))
            is_canon = (b.coords, k) == canon_key
            if lhs < rhs:
                failures.append(f"inequality fails for b={list(b.coords)}, k={list(k)}")
            elif lhs == rhs:
                equalities += 1
                if not is_canon:
                    failures.append(f"equality at non-canonical b={list(b.coords)}, k={list(k)}")
            elif is_canon:
                failures.append("canonical decomposition is not an equality")
    if equalities != 1:
        failures.append(f"{equalities} representations attain equality, expected 1")
    return Report(not failures, failures,
                  {"point": list(n), "sign": sign, "representations": reps,
                   "equalities": equalities})
