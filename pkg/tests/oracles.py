"""Brute-force reference computations, written independently of the package.

Everything here goes through sympy or plain enumeration; nothing imports
the package's linear algebra or triangulation code.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy


def minor_rank(rows) -> int:
    """Largest size of a nonzero square minor."""
    if not rows or not rows[0]:
        return 0
    m, n = len(rows), len(rows[0])
    M = sympy.Matrix(rows)
    for k in range(min(m, n), 0, -1):
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                if M.extract(list(ri), list(ci)).det() != 0:
                    return k
    return 0


def facet_normals(rays) -> list[tuple]:
    """Inward facet normals of ``cone(rays)`` by trying every hyperplane through rays."""
    r = len(rays[0])
    if r == 1:
        return [(1,)] if rays[0][0] > 0 else [(-1,)]
    out = set()
    for sub in combinations(rays, r - 1):
        M = sympy.Matrix(sub)
        if M.rank() != r - 1:
            continue
        v = M.nullspace()[0]
        den = sympy.ilcm(*[x.q for x in v])
        v = [int(x * den) for x in v]
        g = sympy.igcd(*v)
        v = [x // g for x in v]
        vals = [sum(a * b for a, b in zip(v, e)) for e in rays]
        if all(x >= 0 for x in vals):
            out.add(tuple(v))
        elif all(x <= 0 for x in vals):
            out.add(tuple(-x for x in v))
    return sorted(out)


def in_cone(normals, p, strict=False) -> bool:
    vals = [sum(a * b for a, b in zip(n, p)) for n in normals]
    return all(v > 0 for v in vals) if strict else all(v >= 0 for v in vals)


def lattice_points(rays, degree, max_degree, interior=False) -> list[tuple]:
    """Points of degree ``<= max_degree`` by scanning ``max_degree * conv(0, rays)``."""
    r = len(degree)
    normals = facet_normals(rays)
    lo = [max_degree * min(0, min(e[k] for e in rays)) for k in range(r)]
    hi = [max_degree * max(0, max(e[k] for e in rays)) for k in range(r)]
    out = []
    for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        d = sum(a * b for a, b in zip(degree, p))
        if 0 <= d <= max_degree and in_cone(normals, p, interior):
            out.append(p)
    return sorted(out, key=lambda p: (sum(a * b for a, b in zip(degree, p)), p))


def numerator(counts, r) -> list[int]:
    """Coefficients of ``(1-t)^r * sum counts[d] t^d`` below ``len(counts)``."""
    t = sympy.Symbol("t")
    poly = sympy.expand((1 - t) ** r * sum(c * t ** d for d, c in enumerate(counts)))
    return [int(poly.coeff(t, d)) for d in range(len(counts))]


def _inverse(gens) -> list[list[Fraction]]:
    inv = sympy.Matrix(gens).T.inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(inv.rows)]


def simplex_coordinates(gens, p) -> list[Fraction]:
    return [sum(a * x for a, x in zip(row, p)) for row in _inverse(gens)]


def box_points(gens, xi, sign) -> list[tuple]:
    """Points ``sum gamma_i g_i`` with each ``gamma_i`` in its half-open unit window."""
    inv = _inverse(gens)
    beta = [sum(a * x for a, x in zip(row, xi)) for row in inv]
    r = len(gens)
    lo = [sum(min(0, g[k]) for g in gens) for k in range(r)]
    hi = [sum(max(0, g[k]) for g in gens) for k in range(r)]
    out = []
    for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        gam = [sum(a * x for a, x in zip(row, p)) for row in inv]
        ok = True
        for g, b in zip(gam, beta):
            if sign * b > 0:
                ok &= 0 <= g < 1
            else:
                ok &= 0 < g <= 1
        if ok:
            out.append(p)
    return sorted(out)


def quotient_dims(points, degree, coefficients, monomials_by_degree) -> list[list[int]]:
    """Graded dimensions of ``M/(Z_1..Z_k)M`` via sympy ranks of stacked matrices."""
    r = len(degree)
    D = len(monomials_by_degree) - 1
    dims = [[len(s) for s in monomials_by_degree]]
    for k in range(1, r + 1):
        row = [len(monomials_by_degree[0])]
        for l in range(1, D + 1):
            target = {m: i for i, m in enumerate(monomials_by_degree[l])}
            cols = []
            for j in range(k):
                for m in monomials_by_degree[l - 1]:
                    col = [0] * len(target)
                    for e, c in zip(points, coefficients):
                        col[target[tuple(a + b for a, b in zip(m, e))]] += e[j] * c
                    cols.append(col)
            rk = sympy.Matrix(cols).rank() if cols and target else 0
            row.append(len(target) - rk)
        dims.append(row)
    return dims
