"""Punctured convex bodies: a convex ambient minus finitely many one-point
holes, visibility tests over them, invisibility graphs on finite witness
sets, and the punctured-disc construction with its documented witness family.

Witness-restricted values of the clique, chromatic and convex-cover numbers
are certified lower bounds for the same measures of the continuum set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import InvalidInputError
from .geometry import (Point, check_dimension, convex_hull_2d, det_sign, frac,
                       point_in_hull, pt, segment_contains, vscale, vsub)
from .solvers import (COVER_CAPACITY, CoverCertificate, Graph, chromatic_number,
                      max_clique, min_cover)


@dataclass(frozen=True)
class Disc:
    """Closed planar disc given by its center and squared radius."""

    center: Point
    radius2: Fraction

    def __post_init__(self):
        if len(self.center) != 2:
            raise InvalidInputError("disc ambient lives in the plane")
        if self.radius2 <= 0:
            raise InvalidInputError("disc needs radius2 > 0")

    @property
    def dimension(self) -> int:
        return 2

    def contains(self, p: Point) -> bool:
        d = vsub(p, self.center)
        return d[0] * d[0] + d[1] * d[1] <= self.radius2


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many vertices (a vertex-presented polytope)."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidInputError("polytope needs vertices")
        check_dimension(self.vertices)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def contains(self, p: Point) -> bool:
        return point_in_hull(p, self.vertices)


ConvexAmbient = Union[Disc, Polytope]


@dataclass(frozen=True)
class PuncturedSet:
    """A convex ambient body minus a finite list of one-point holes."""

    ambient: ConvexAmbient
    holes: tuple[Point, ...]

    def __post_init__(self):
        if len(set(self.holes)) != len(self.holes):
            raise InvalidInputError("holes must be pairwise distinct")
        for h in self.holes:
            if len(h) != self.ambient.dimension:
                raise InvalidInputError("hole dimension mismatch")
            if not self.ambient.contains(h):
                raise InvalidInputError(f"hole {h} lies outside the ambient body")

    @property
    def dimension(self) -> int:
        return self.ambient.dimension

    def contains(self, p: Point) -> bool:
        if len(p) != self.dimension:
            raise InvalidInputError("point dimension mismatch")
        return self.ambient.contains(p) and p not in set(self.holes)


@dataclass(frozen=True)
class WitnessSet:
    """Finite discretization of a punctured set; points pairwise distinct."""

    points: tuple[Point, ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise InvalidInputError("witnesses must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.points)


def visible(x: PuncturedSet, p: Point, q: Point) -> bool:
    """Do p and q see each other within X?  Ambient convexity keeps the
    segment inside the body, so only the holes can block it."""
    if not x.contains(p) or not x.contains(q):
        raise InvalidInputError("visibility is defined for points of X only")
    return all(not segment_contains(p, q, h) for h in x.holes)


def _scaled_ints(points: Sequence[Point]) -> list[tuple[int, ...]]:
    mult = 1
    for p in points:
        for c in p:
            mult = mult // math.gcd(mult, c.denominator) * c.denominator
    return [tuple(int(c * mult) for c in p) for p in points]


def invisibility_graph(x: PuncturedSet, w: WitnessSet) -> Graph:
    """Graph on witness indices; edge iff the pair does not see each other.

    All pairwise tests run on a common integer grid (denominators cleared
    once), which keeps the construction exact and fast.
    """
    for p in w.points:
        if not x.contains(p):
            raise InvalidInputError(f"witness {p} lies outside X")
    n = len(w.points)
    d = x.dimension
    scaled = _scaled_ints(list(w.points) + list(x.holes))
    pts, holes = scaled[:n], scaled[n:]
    edges = []
    for i in range(n):
        pi = pts[i]
        for j in range(i + 1, n):
            pj = pts[j]
            direction = tuple(pj[k] - pi[k] for k in range(d))
            pivot = next(k for k in range(d) if direction[k])
            dp = direction[pivot]
            for h in holes:
                off_p = h[pivot] - pi[pivot]
                if dp > 0:
                    if off_p < 0 or off_p > dp:
                        continue
                elif off_p > 0 or off_p < dp:
                    continue
                offset = tuple(h[k] - pi[k] for k in range(d))
                if all(offset[k] * dp == off_p * direction[k] for k in range(d)):
                    edges.append((i, j))
                    break
    return Graph.from_edges(n, edges)


def hull_hole_free(x: PuncturedSet, points: Sequence[Point]) -> bool:
    """True iff no hole of X lies in the convex hull of the given points."""
    if not points:
        raise InvalidInputError("hull_hole_free needs a nonempty subset")
    if x.dimension == 2:
        hull = convex_hull_2d(points)
        if len(hull) == 1:
            return all(h != hull[0] for h in x.holes)
        if len(hull) == 2:
            return all(not segment_contains(hull[0], hull[1], h) for h in x.holes)
        edges = list(zip(hull, hull[1:] + hull[:1]))
        for h in x.holes:
            if all(det_sign([vsub(b, a), vsub(h, a)]) >= 0 for a, b in edges):
                return False
        return True
    return all(not point_in_hull(h, points) for h in x.holes)


class PlanarHoleOracle:
    """Fast exact feasibility for planar hull-hole-free queries.

    A hole h avoids conv(S) iff the directions of S around h leave a
    circular gap greater than pi.  Directions are ranked once per hole with
    exact comparisons; afterwards every query is integer-only.
    """

    def __init__(self, x: PuncturedSet, points: Sequence[Point]):
        if x.dimension != 2:
            raise InvalidInputError("planar oracle needs a 2-D instance")
        self.n = len(points)
        self.dir_id: list[list[int]] = []    # per hole: witness -> direction rank
        self.gap_big: list[list[list[bool]]] = []  # per hole: rank x rank
        for h in x.holes:
            vecs = [vsub(p, h) for p in points]
            for v in vecs:
                if v == (0, 0):
                    raise InvalidInputError("witness coincides with a hole")

            def half(v):
                return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

            def angle_less(a, b):
                ha, hb = half(a), half(b)
                if ha != hb:
                    return ha < hb
                return a[0] * b[1] - a[1] * b[0] > 0

            distinct: list[Point] = []
            for v in vecs:
                if not any(v[0] * u[1] == v[1] * u[0] and
                           (v[0] * u[0] > 0 or v[1] * u[1] > 0) for u in distinct):
                    distinct.append(v)
            # insertion sort with the exact comparator (tiny lists)
            ordered: list[Point] = []
            for v in distinct:
                k = 0
                while k < len(ordered) and angle_less(ordered[k], v):
                    k += 1
                ordered.insert(k, v)
            rank_of = {}
            for r, v in enumerate(ordered):
                rank_of[v] = r
            ids = []
            for v in vecs:
                match = next(u for u in ordered
                             if v[0] * u[1] == v[1] * u[0] and
                             (v[0] * u[0] > 0 or v[1] * u[1] > 0))
                ids.append(rank_of[match])
            m = len(ordered)
            big = [[ordered[a][0] * ordered[b][1] - ordered[a][1] * ordered[b][0] < 0
                    for b in range(m)] for a in range(m)]
            self.dir_id.append(ids)
            self.gap_big.append(big)

    def feasible(self, indices: frozenset) -> bool:
        for ids, big in zip(self.dir_id, self.gap_big):
            ranks = sorted({ids[i] for i in indices})
            k = len(ranks)
            if k == 1:
                continue
            if not any(big[ranks[i]][ranks[(i + 1) % k]] for i in range(k)):
                return False
        return True

    # incremental protocol: at most one circular gap can exceed pi, so the
    # per-hole state is just that gap's bounding direction ranks
    EMPTY = (-1, -1)

    def initial(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.EMPTY for _ in self.dir_id)

    def extend(self, state, w: int):
        out = []
        for hole, (a, b) in enumerate(state):
            r = self.dir_id[hole][w]
            big = self.gap_big[hole]
            if a == -1:
                out.append((r, r))
                continue
            if a == b:  # single direction so far
                if r == a:
                    out.append((a, b))
                elif big[a][r]:
                    out.append((a, r))
                elif big[r][a]:
                    out.append((r, a))
                else:
                    return None
                continue
            inside = (a < r < b) if a < b else (r > a or r < b)
            if not inside:
                out.append((a, b))
            elif big[a][r]:
                out.append((a, r))
            elif big[r][b]:
                out.append((r, b))
            else:
                return None
        return tuple(out)


def omega_witness(x: PuncturedSet, w: WitnessSet, capacity: int = 64
                  ) -> tuple[int, tuple[int, ...]]:
    """Clique number of the witness invisibility graph, with a witness clique."""
    return max_clique(invisibility_graph(x, w), capacity=capacity)


def chi_witness(x: PuncturedSet, w: WitnessSet, capacity: int = 32
                ) -> tuple[int, tuple[int, ...]]:
    """Chromatic number of the witness invisibility graph, with a coloring."""
    return chromatic_number(invisibility_graph(x, w), capacity=capacity)


def gamma_witness(x: PuncturedSet, w: WitnessSet, capacity: int = COVER_CAPACITY
                  ) -> tuple[int, CoverCertificate]:
    """Minimum number of hull-hole-free parts covering the witness set."""
    pts = w.points
    extender = None
    if x.dimension == 2:
        oracle = PlanarHoleOracle(x, pts)
        feasible = oracle.feasible
        extender = oracle
    else:
        def feasible(indices: frozenset) -> bool:
            return hull_hole_free(x, [pts[i] for i in indices])

    cert = min_cover(len(pts), feasible, capacity=capacity, extender=extender)
    return cert.size(), cert


# ---------------------------------------------------------------------------
# punctured disc construction


def _circle_point(t: Fraction, radius: Fraction = Fraction(1)) -> Point:
    """Rational point on the circle via the tangent-half-angle map."""
    den = 1 + t * t
    return (radius * (1 - t * t) / den, radius * 2 * t / den)


def _rationalize(value: float, denominator: int = 10 ** 5) -> Fraction:
    return Fraction(round(value * denominator), denominator)


@dataclass(frozen=True)
class DiscFamily:
    """Bookkeeping for the punctured-disc witness family."""

    hole_params: tuple[Fraction, ...]
    flank_params: tuple[Fraction, ...]
    arc_params: tuple[Fraction, ...]
    radial_indices: tuple[int, ...]       # witness index of the radial point per hole
    boundary_indices: tuple[int, ...]     # witness indices living on the unit circle
    center_index: int
    clique_indices: tuple[int, ...]       # empty for even hole counts


def build_disc_D(lam: int, ring_param: Fraction | None = None,
                 witness_offset: Fraction | None = None, refine: int = 0
                 ) -> tuple[PuncturedSet, WitnessSet, DiscFamily]:
    """Unit disc with `lam` one-point holes near its boundary, plus the
    documented witness family.

    Holes sit on the circle of radius `ring_param` at rational points of the
    tangent-half-angle parametrization, angularly close to a regular
    lam-gon rotated by a quarter gap (the rotation keeps every direction away
    from the parametrization's singular point).  The family has, per hole,
    two boundary points flanking the hole direction and one radial point
    between hole and boundary; one boundary point per arc between consecutive
    holes; the disc center; and, for odd lam, one exactly-aligned triple that
    realizes the three-clique (even lam gets one for free from the center and
    an antipodal radial pair).  `refine` rounds of doubling insert a boundary
    point between each pair of angularly consecutive boundary witnesses.
    """
    if lam < 3:
        raise InvalidInputError("the punctured disc needs at least 3 holes")
    if ring_param is None:
        ring_param = _rationalize((1 + math.cos(math.pi / lam)) / 2, 10 ** 4)
    ring_param = frac(ring_param)
    if not 0 < ring_param < 1:
        raise InvalidInputError("ring_param must lie strictly between 0 and 1")
    if witness_offset is None:
        witness_offset = Fraction(1, 100)
    witness_offset = frac(witness_offset)
    if witness_offset <= 0:
        raise InvalidInputError("witness_offset must be positive")

    # quarter-gap rotation: 2*pi*(k + 1/4)/lam is never pi, and neither are
    # the arc midpoints 2*pi*(k + 3/4)/lam, so tan(angle/2) always exists
    if lam % 2 == 0:
        # second half exactly antipodal (t -> -1/t), so the center and an
        # antipodal radial pair realize the three-clique exactly
        half = [_rationalize(math.tan(math.pi * (k + Fraction(1, 4)) / lam))
                for k in range(lam // 2)]
        hole_params = tuple(half + [-1 / t for t in half])
    else:
        hole_params = tuple(_rationalize(math.tan(math.pi * (k + Fraction(1, 4)) / lam))
                            for k in range(lam))
    arc_params = tuple(_rationalize(math.tan(math.pi * (k + Fraction(3, 4)) / lam))
                       for k in range(lam))
    holes = [_circle_point(t, ring_param) for t in hole_params]
    if len(set(holes)) != lam:
        raise InvalidInputError("hole parameters collide; refine the rationalization")

    witnesses: list[Point] = []
    index_of: dict[Point, int] = {}

    def add(p: Point) -> int:
        if p in index_of:
            return index_of[p]
        index_of[p] = len(witnesses)
        witnesses.append(p)
        return index_of[p]

    flank_params: list[Fraction] = []
    radial_indices = []
    scale = (1 + ring_param) / (2 * ring_param)
    for k in range(lam):
        t = hole_params[k]
        for s in (t - witness_offset, t + witness_offset):
            flank_params.append(s)
            add(_circle_point(s))
        radial_indices.append(add(vscale(scale, holes[k])))
    for t in arc_params:
        add(_circle_point(t))

    boundary_params = sorted(set(flank_params) | set(arc_params))
    for _ in range(refine):
        extra = [(a + b) / 2 for a, b in zip(boundary_params, boundary_params[1:])]
        for s in extra:
            add(_circle_point(s))
        wrap = pt(-1, 0)  # the one boundary point the parametrization misses
        add(wrap)
        boundary_params = sorted(set(boundary_params) | set(extra))

    center_index = add(pt(0, 0))

    clique_indices: tuple[int, ...] = ()
    if lam % 2 == 1:
        a, b, c = holes[0], holes[lam // 3], holes[(2 * lam) // 3]
        al = be = ga = Fraction(1, 100)
        x = vscale(1 / (1 + al * be * ga),
                   tuple((1 + al) * a[k] + al * ga * (1 + be) * b[k]
                         - al * (1 + ga) * c[k] for k in range(2)))
        y = tuple((1 + be) * b[k] - be * x[k] for k in range(2))
        z = tuple((1 + ga) * c[k] - ga * y[k] for k in range(2))
        clique_indices = tuple(add(p) for p in (x, y, z))

    boundary_indices = tuple(i for i, p in enumerate(witnesses)
                             if p[0] * p[0] + p[1] * p[1] == 1)
    x_set = PuncturedSet(Disc(pt(0, 0), Fraction(1)), tuple(holes))
    for p in witnesses:
        if not x_set.contains(p):
            raise InvalidInputError(f"constructed witness {p} fell outside X")
    family = DiscFamily(hole_params, tuple(flank_params), arc_params,
                        tuple(radial_indices), boundary_indices, center_index,
                        clique_indices)
    return x_set, WitnessSet(tuple(witnesses)), family
