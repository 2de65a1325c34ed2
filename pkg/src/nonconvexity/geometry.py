"""Exact rational geometric predicates.

Points are tuples of ``fractions.Fraction``; every predicate here is decided
in exact arithmetic — there is no floating point and no epsilon anywhere.
Dimensions up to 6 are supported.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import CapacityError, InvalidInputError

Point = tuple[Fraction, ...]

EXHAUSTIVE_CAPACITY = 12


def frac(value) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InvalidInputError("floating-point coordinates are not accepted")
    return Fraction(value)


def pt(*coords) -> Point:
    return tuple(frac(c) for c in coords)


def vsub(p: Point, q: Point) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def vadd(p: Point, q: Point) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def vscale(s: Fraction, p: Point) -> Point:
    return tuple(s * a for a in p)


def vdot(p: Point, q: Point) -> Fraction:
    return sum(a * b for a, b in zip(p, q))


def check_dimension(points: Iterable[Point]) -> int:
    dims = {len(p) for p in points}
    if len(dims) != 1:
        raise InvalidInputError(f"mixed point dimensions {sorted(dims)}")
    return dims.pop()


def _int_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by a positive integer to clear denominators.

    Row scaling by positive factors preserves the sign of the determinant.
    """
    out = []
    for row in rows:
        mult = 1
        for x in row:
            mult = mult // gcd(mult, x.denominator) * x.denominator
        out.append([int(x * mult) for x in row])
    return out


def det_sign(rows: Sequence[Sequence[Fraction]]) -> int:
    """Sign of the determinant of a square rational matrix."""
    n = len(rows)
    m = [row[:] for row in _int_rows(rows)]
    sign = 1
    # Bareiss fraction-free elimination over the integers.
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    last = m[n - 1][n - 1]
    if last == 0:
        return 0
    return sign if last > 0 else -sign


def orientation(points: Sequence[Point]) -> int:
    """Orientation of d+1 points in R^d: the sign of det(p2-p1, .., p_{d+1}-p1).

    Zero exactly when the tuple lies in a common hyperplane.
    """
    d = check_dimension(points)
    if len(points) != d + 1:
        raise InvalidInputError(f"orientation in R^{d} needs {d + 1} points, got {len(points)}")
    base = points[0]
    return det_sign([vsub(p, base) for p in points[1:]])


def segment_contains(p: Point, q: Point, h: Point) -> bool:
    """True iff h lies on the closed segment pq."""
    check_dimension((p, q, h))
    direction = vsub(q, p)
    offset = vsub(h, p)
    pivot = next((k for k, c in enumerate(direction) if c != 0), None)
    if pivot is None:
        return h == p
    for k in range(len(direction)):
        if offset[k] * direction[pivot] != offset[pivot] * direction[k]:
            return False
    t = offset[pivot] / direction[pivot]
    return 0 <= t <= 1


def _phase1_feasible(a: list[list[Fraction]], b: list[Fraction]) -> bool:
    """Exact feasibility of {A x = b, x >= 0} by phase-1 simplex, Bland's rule."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    tab = []
    for i in range(rows):
        if b[i] < 0:
            row = [-v for v in a[i]] + [Fraction(0)] * rows + [-b[i]]
        else:
            row = list(a[i]) + [Fraction(0)] * rows + [b[i]]
        row[cols + i] = Fraction(1)
        tab.append(row)
    total = cols + rows
    # objective: minimize sum of artificials; stored as reduced costs
    obj = [Fraction(0)] * (total + 1)
    for i in range(rows):
        for j in range(total + 1):
            obj[j] += tab[i][j]
    for i in range(rows):
        obj[cols + i] = Fraction(0)
    basis = [cols + i for i in range(rows)]
    while True:
        enter = next((j for j in range(total) if obj[j] > 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(rows):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            break
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(rows):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [v - f * w for v, w in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[leave])]
        basis[leave] = enter
    residual = sum(tab[i][total] for i in range(rows) if basis[i] >= cols)
    return residual == 0


def point_in_hull(x: Point, generators: Sequence[Point]) -> bool:
    """Exact test whether x is a convex combination of the generators."""
    if not generators:
        raise InvalidInputError("point_in_hull needs at least one generator")
    d = check_dimension(list(generators) + [x])
    if d == 2:
        return _point_in_hull_2d(x, generators)
    a = [[g[k] for g in generators] for k in range(d)]
    a.append([Fraction(1)] * len(generators))
    b = [x[k] for k in range(d)] + [Fraction(1)]
    return _phase1_feasible(a, b)


def convex_hull_2d(points: Sequence[Point]) -> list[Point]:
    """Vertices of the convex hull in counterclockwise order (monotone chain).

    Collinear interior points are dropped; degenerate hulls (point, segment)
    come back with 1 or 2 vertices.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all collinear
        return [pts[0], pts[-1]]
    return hull


def _point_in_hull_2d(x: Point, generators: Sequence[Point]) -> bool:
    hull = convex_hull_2d(generators)
    if len(hull) == 1:
        return x == hull[0]
    if len(hull) == 2:
        return segment_contains(hull[0], hull[1], x)
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if det_sign([vsub(b, a), vsub(x, a)]) < 0:
            return False
    return True


def barycentric_coords(x: Point, simplex: Sequence[Point]) -> tuple[Fraction, ...] | None:
    """Affine coordinates of x w.r.t. affinely independent simplex points.

    Returns None when x is outside the affine hull.  Raises if the given
    points are affinely dependent.
    """
    d = check_dimension(list(simplex) + [x])
    m = len(simplex) - 1
    base = simplex[0]
    cols = [vsub(p, base) for p in simplex[1:]]
    rhs = vsub(x, base)
    # Gaussian elimination on the d x m system [cols] t = rhs.
    a = [[cols[j][i] for j in range(m)] + [rhs[i]] for i in range(d)]
    pivots = []
    row = 0
    for col in range(m):
        sel = next((r for r in range(row, d) if a[r][col] != 0), None)
        if sel is None:
            raise InvalidInputError("simplex points are affinely dependent")
        a[row], a[sel] = a[sel], a[row]
        piv = a[row][col]
        a[row] = [v / piv for v in a[row]]
        for r in range(d):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
    for r in range(row, d):
        if a[r][m] != 0:
            return None
    t = [Fraction(0)] * m
    for r, c in pivots:
        t[c] = a[r][m]
    coords = [Fraction(1) - sum(t)] + t
    return tuple(coords)


def max_collinear(points: Sequence[Point]) -> int:
    """Size of the largest collinear subset of a planar point set."""
    pts = list(dict.fromkeys(points))
    if not pts:
        raise InvalidInputError("max_collinear needs at least one point")
    check_dimension(pts)
    if len(pts) <= 2:
        return len(pts)
    best = 2
    for i, anchor in enumerate(pts):
        slopes: dict[tuple[int, int], int] = {}
        for q in pts[i + 1:]:
            dx, dy = q[0] - anchor[0], q[1] - anchor[1]
            mult = dx.denominator * dy.denominator
            ix, iy = int(dx * mult), int(dy * mult)
            g = gcd(ix, iy)
            ix, iy = ix // g, iy // g
            if ix < 0 or (ix == 0 and iy < 0):
                ix, iy = -ix, -iy
            slopes[(ix, iy)] = slopes.get((ix, iy), 0) + 1
        if slopes:
            best = max(best, 1 + max(slopes.values()))
    return best


def in_convex_position(points: Sequence[Point]) -> bool:
    """True iff every point is an extreme point of the hull.

    Collinear triples therefore never count as being in convex position.
    """
    pts = list(dict.fromkeys(points))
    if len(pts) != len(points):
        return False
    if len(pts) <= 2:
        return True
    return all(not point_in_hull(p, pts[:i] + pts[i + 1:]) for i, p in enumerate(pts))


def max_convex_position(points: Sequence[Point]) -> int:
    """Size of the largest subset in (strict) convex position.

    Dynamic program over convex chains anchored at the polygon's
    lowest-leftmost vertex; exact O(n^4).
    """
    pts = list(dict.fromkeys(points))
    if not pts:
        raise InvalidInputError("max_convex_position needs at least one point")
    check_dimension(pts)
    n = len(pts)
    if n <= 2:
        return n
    best = 2

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    for anchor in pts:
        cand = [p for p in pts if (p[1], p[0]) > (anchor[1], anchor[0])]
        if len(cand) < 2:
            continue

        # sort by angle around the anchor, ties (collinear with anchor) by distance
        def cmp(a, b):
            c = cross(anchor, a, b)
            if c > 0:
                return -1
            if c < 0:
                return 1
            da = vdot(vsub(a, anchor), vsub(a, anchor))
            db = vdot(vsub(b, anchor), vsub(b, anchor))
            return -1 if da < db else (1 if da > db else 0)

        cand.sort(key=functools.cmp_to_key(cmp))
        m = len(cand)
        # dp[i][j]: longest convex chain anchor -> .. -> cand[i] -> cand[j]
        dp = [[0] * m for _ in range(m)]
        for j in range(m):
            for i in range(j):
                if cross(anchor, cand[i], cand[j]) > 0:
                    dp[i][j] = 3
        for j in range(m):
            for k in range(j + 1, m):
                if cross(anchor, cand[j], cand[k]) <= 0:
                    continue
                bound = 0
                for i in range(j):
                    if dp[i][j] and cross(cand[i], cand[j], cand[k]) > 0:
                        bound = max(bound, dp[i][j])
                if bound:
                    dp[j][k] = max(dp[j][k], bound + 1)
        for i in range(m):
            for j in range(i + 1, m):
                if dp[i][j] and cross(cand[i], cand[j], anchor) > 0:
                    best = max(best, dp[i][j])
    return best


def _same_side_ok(ordered: Sequence[Point], d: int) -> bool:
    n = len(ordered)
    for combo in combinations(range(n), d):
        sign = 0
        for later in range(combo[-1] + 1, n):
            if later in combo:
                continue
            s = orientation([ordered[i] for i in combo] + [ordered[later]])
            if s == 0:
                return False
            if sign == 0:
                sign = s
            elif s != sign:
                return False
    return True


def is_same_side_position(ordered: Sequence[Point]) -> bool:
    """True iff the ordered tuple is in general position and every spanning
    hyperplane of an index-increasing d-tuple has all later points strictly
    on one side."""
    d = check_dimension(ordered)
    if len(ordered) < d + 1:
        raise InvalidInputError(f"need at least {d + 1} points in R^{d}")
    return _same_side_ok(ordered, d)


def max_same_side_subset(points: Sequence[Point], capacity: int = EXHAUSTIVE_CAPACITY) -> int:
    """Largest subset admitting a same-side ordering; exhaustive with pruning."""
    pts = list(dict.fromkeys(points))
    d = check_dimension(pts)
    if len(pts) > capacity:
        raise CapacityError(f"{len(pts)} points exceed the exhaustive capacity {capacity}")
    n = len(pts)
    best = min(n, d)  # tuples shorter than d+1 are vacuously same-side

    # Incremental search: `signs` pins, for each placed d-tuple, the side all
    # later points must take.  Same-side orderings are subsequence-closed, so
    # plain size pruning is sound.
    def extend(order: list[int], remaining: list[int], signs: dict) -> None:
        nonlocal best
        best = max(best, len(order))
        if len(order) + len(remaining) <= best:
            return
        for idx, cand in enumerate(remaining):
            new_signs = dict(signs)
            ok = True
            if len(order) >= d:
                for combo in combinations(range(len(order)), d):
                    key = tuple(order[i] for i in combo)
                    s = orientation([pts[i] for i in key] + [pts[cand]])
                    if s == 0:
                        ok = False
                        break
                    pinned = new_signs.get(key)
                    if pinned is None:
                        new_signs[key] = s
                    elif pinned != s:
                        ok = False
                        break
            if ok:
                extend(order + [cand], remaining[:idx] + remaining[idx + 1:], new_signs)

    extend([], list(range(n)), {})
    return best
