"""Named test cones and a seeded generator of small random graded cones."""
from __future__ import annotations

import random
from itertools import product

from .cone import GradedCone, validate
from .exactmath import int_adjugate, rank
from .triangulation import NotStrictlyConvex, triangulate


def orthant(r: int) -> GradedCone:
    basis = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    return GradedCone(r, basis, (1,) * r, basis)


def index_two_cone() -> GradedCone:
    """Rays ``(1,0)`` and ``(1,2)``: the cone over a segment of lattice length 2."""
    return GradedCone(2, [(1, 0), (1, 2)], (1, 0), [(1, 0), (1, 2)])


def square_cone() -> GradedCone:
    """Cone over the unit square; the configuration is its four corners."""
    pts = [(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)]
    return GradedCone(3, pts, (1, 0, 0), pts)


def _random_unimodular(r: int, rng: random.Random, steps: int = 4) -> list[list[int]]:
    A = [[int(i == j) for j in range(r)] for i in range(r)]
    for _ in range(steps):
        i, j = rng.sample(range(r), 2)
        q = rng.choice((-1, 1))
        for row in A:
            row[i] += q * row[j]
    return A


def random_cone(seed: int, max_rank: int = 4, max_points: int = 8, max_volume: int = 4,
                transform: bool = True) -> GradedCone:
    """A valid graded cone with ``2 <= rank <= max_rank`` and at most ``max_points`` points.

    Points are ``(1, z)`` with ``z`` in a small box, so every one of them is a
    vertex of the regular triangulation from convex heights.  With
    ``transform`` the lattice is re-coordinatised by a random unimodular map,
    which moves the degree covector away from ``(1, 0, ..., 0)``.
    """
    rng = random.Random(seed)
    while True:
        r = rng.randint(2, max_rank)
        box = list(product(range(-1, 2), repeat=r - 1))
        d = rng.randint(r, min(max_points, r + 3, len(box)))
        zs = rng.sample(box, d)
        pts = [(1,) + z for z in zs]
        if rank(pts) < r:
            continue
        cone = GradedCone.from_points(pts, (1,) + (0,) * (r - 1))
        if not validate(cone).valid:
            continue
        try:
            vol = triangulate(cone, seed=seed).normalized_volume
        except NotStrictlyConvex:
            continue
        if vol > max_volume:
            continue
        if transform:
            A = _random_unimodular(r, rng)
            adj, det = int_adjugate(A)
            Ainv = [[x * det for x in row] for row in adj]
            new_pts = [tuple(sum(A[k][j] * p[j] for j in range(r)) for k in range(r)) for p in pts]
            deg = tuple(sum(cone.degree[k] * Ainv[k][j] for k in range(r)) for j in range(r))
            rays = [tuple(sum(A[k][j] * p[j] for j in range(r)) for k in range(r))
                    for p in cone.rays]
            cone = GradedCone(r, tuple(rays), deg, tuple(new_pts))
        return cone


def random_corpus(count: int = 20, seed: int = 0, **kwargs) -> list[GradedCone]:
    return [random_cone(seed * 1000 + k, **kwargs) for k in range(count)]
