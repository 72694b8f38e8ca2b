"""Exact rational linear algebra and tiny-dimension polytope utilities.

Everything here works over fractions.Fraction.  Polytopes show up as
products of simplex slices cut by value constraints; dimensions stay small
(at most a handful), so vertex enumeration by tight-constraint
combinations and pulling triangulations are perfectly adequate.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

Vector = tuple[Fraction, ...]
# (coefficients, rhs): coeffs . x  (= or <=)  rhs
LinearForm = tuple[Vector, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), ZERO)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_affine(
    eqs: Sequence[LinearForm], nvars: int
) -> Optional[tuple[Vector, list[Vector]]]:
    """Solve A x = b; returns a particular solution and a null-space basis,
    or None when inconsistent."""
    if not eqs:
        x0 = tuple(ZERO for _ in range(nvars))
        basis = []
        for j in range(nvars):
            v = [ZERO] * nvars
            v[j] = ONE
            basis.append(tuple(v))
        return x0, basis
    rows = [list(c) + [rhs] for c, rhs in eqs]
    red, pivots = rref(rows)
    for row in red:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    free = [j for j in range(nvars) if j not in pivots]
    x0 = [ZERO] * nvars
    for i, p in enumerate(pivots):
        x0[p] = red[i][-1]
    basis: list[Vector] = []
    for fcol in free:
        v = [ZERO] * nvars
        v[fcol] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][fcol]
        basis.append(tuple(v))
    return tuple(x0), basis


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> Optional[Vector]:
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if len(pivots) != n or any(p >= n for p in pivots):
        return None
    sol = [ZERO] * n
    for i, p in enumerate(pivots):
        sol[p] = red[i][-1]
    return tuple(sol)


def polytope_vertices(
    nvars: int, eqs: Sequence[LinearForm], ineqs: Sequence[LinearForm]
) -> list[Vector]:
    """All vertices of {x : eqs hold, a.x <= b for each ineq}, exactly.

    Parametrizes the equality subspace and enumerates tight inequality
    combinations in the reduced coordinates.
    """
    solved = solve_affine(eqs, nvars)
    if solved is None:
        return []
    x0, basis = solved
    d = len(basis)

    def lift(s: Sequence[Fraction]) -> Vector:
        return tuple(
            x0[j] + sum((s[k] * basis[k][j] for k in range(d)), ZERO)
            for j in range(nvars)
        )

    # transform inequalities to reduced coordinates
    red_ineqs: list[LinearForm] = []
    for a, b in ineqs:
        coeffs = tuple(dot(a, basis[k]) for k in range(d))
        red_ineqs.append((coeffs, b - dot(a, x0)))

    def feasible(s: Sequence[Fraction]) -> bool:
        return all(dot(a, s) <= b for a, b in red_ineqs)

    if d == 0:
        return [tuple(x0)] if feasible(()) else []

    verts: set[Vector] = set()
    for combo in combinations(range(len(red_ineqs)), d):
        rows = [list(red_ineqs[i][0]) for i in combo]
        rhs = [red_ineqs[i][1] for i in combo]
        s = _solve_square(rows, rhs)
        if s is not None and feasible(s):
            verts.add(lift(s))
    return sorted(verts)


def affine_dim(points: Sequence[Vector]) -> int:
    if not points:
        return -1
    p0 = points[0]
    rows = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    if not rows:
        return 0
    _, pivots = rref(rows)
    return len(pivots)


def pulling_triangulation(
    verts: dict, ineqs: Sequence[LinearForm]
) -> list[tuple]:
    """Triangulate a polytope given as {key: coords} plus its H-description.

    Returns simplices as sorted key tuples.  The triangulation is the
    pulling triangulation w.r.t. the key order, so it agrees on shared
    faces across neighboring polytopes triangulated with the same order.
    """
    keys = sorted(verts)
    pts = [verts[k] for k in keys]
    d = affine_dim(pts)
    if len(keys) == d + 1:
        return [tuple(keys)]
    v0 = keys[0]
    out: list[tuple] = []
    seen_facets: set[frozenset] = set()
    for a, b in ineqs:
        tight = [k for k in keys if dot(a, verts[k]) == b]
        if v0 in tight or not tight:
            continue
        fs = frozenset(tight)
        if fs in seen_facets:
            continue
        if affine_dim([verts[k] for k in tight]) != d - 1:
            continue
        seen_facets.add(fs)
        sub = {k: verts[k] for k in tight}
        for simplex in pulling_triangulation(sub, ineqs):
            out.append(tuple(sorted(simplex + (v0,))))
    if not out:
        # d == 0, or the polytope is a simplex the facet scan missed
        return [tuple(keys)] if d + 1 >= len(keys) else [tuple(keys[: d + 1])]
    return out
