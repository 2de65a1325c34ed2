"""Combinatorial gadget generators: shift graphs, seeded random tournaments
with the every-large-set-has-a-directed-triangle property, random 3-colorings
of K_n edges, and the exact probability bookkeeping behind both searches.

Randomness contract: all gadgets are drawn from ``random.Random(seed)``
(Mersenne Twister), consuming bits pair by pair in lexicographic order, so
identical (n, seed) give identical gadgets on every platform.  Searches
derive trial seeds as seed_base + trial and return the lowest winning seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import CapacityError, InvalidInputError, SearchFailureError
from .solvers import (Graph, max_rainbow_free_subset,
                      max_transitive_subtournament)

SHIFT_GRAPH_CAPACITY = 4096


@dataclass(frozen=True)
class Tournament:
    """Orientation of K_n; bit j of out_masks[i] is set iff edge i->j."""

    n: int
    out_masks: tuple[int, ...]

    def __post_init__(self):
        for i in range(self.n):
            for j in range(i + 1, self.n):
                fwd = self.out_masks[i] >> j & 1
                bwd = self.out_masks[j] >> i & 1
                if fwd == bwd:
                    raise InvalidInputError(f"pair ({i},{j}) must be oriented exactly once")
        for i in range(self.n):
            if self.out_masks[i] >> i & 1:
                raise InvalidInputError(f"loop at {i}")

    @classmethod
    def from_orientations(cls, n: int, beats: dict[tuple[int, int], bool]) -> "Tournament":
        """beats[(i,j)] with i<j is True when the edge points i->j."""
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if beats[(i, j)]:
                    masks[i] |= 1 << j
                else:
                    masks[j] |= 1 << i
        return cls(n, tuple(masks))

    def head(self, i: int, j: int) -> int:
        """Head of the edge between i and j."""
        return j if self.out_masks[i] >> j & 1 else i

    def directed_triangles(self) -> list[tuple[int, int, int]]:
        out = self.out_masks
        tris = []
        for a, b, c in combinations(range(self.n), 3):
            ab, bc, ca = out[a] >> b & 1, out[b] >> c & 1, out[c] >> a & 1
            if ab == bc == ca:
                tris.append((a, b, c))
        return tris

    def upper_triangular(self) -> list[list[int]]:
        return [[self.out_masks[i] >> j & 1 for j in range(i + 1, self.n)]
                for i in range(self.n)]

    @classmethod
    def from_upper_triangular(cls, rows: list[list[int]]) -> "Tournament":
        n = len(rows)
        beats = {}
        for i in range(n):
            if len(rows[i]) != n - i - 1:
                raise InvalidInputError("ragged upper-triangular tournament data")
            for off, bit in enumerate(rows[i]):
                beats[(i, i + 1 + off)] = bool(bit)
        return cls.from_orientations(n, beats)


@dataclass(frozen=True)
class EdgeColoring3:
    """Total 3-coloring of the edges of K_n; colors are 1, 2, 3."""

    n: int
    colors: tuple[int, ...]  # pair (i,j), i<j, at index of lexicographic rank

    def __post_init__(self):
        if len(self.colors) != self.n * (self.n - 1) // 2:
            raise InvalidInputError("coloring must assign every pair")
        if any(c not in (1, 2, 3) for c in self.colors):
            raise InvalidInputError("colors must lie in {1,2,3}")

    def _rank(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if i == j:
            raise InvalidInputError("no loops in K_n")
        return i * (2 * self.n - i - 1) // 2 + (j - i - 1)

    def color(self, i: int, j: int) -> int:
        return self.colors[self._rank(i, j)]

    def upper_triangular(self) -> list[list[int]]:
        return [[self.color(i, j) for j in range(i + 1, self.n)] for i in range(self.n)]

    @classmethod
    def from_upper_triangular(cls, rows: list[list[int]]) -> "EdgeColoring3":
        n = len(rows)
        flat = []
        for i, row in enumerate(rows):
            if len(row) != n - i - 1:
                raise InvalidInputError("ragged upper-triangular coloring data")
            flat.extend(int(c) for c in row)
        return cls(n, tuple(flat))


def shift_graph(n: int, k: int, capacity: int = SHIFT_GRAPH_CAPACITY) -> Graph:
    """Graph on the k-subsets of [n]; {i1<..<ik} ~ {i2<..<i(k+1)}.

    Vertices are ordered lexicographically over the sorted subsets.
    S(n, n) degenerates to a single isolated vertex.
    """
    if not 1 <= k <= n:
        raise InvalidInputError(f"shift graph needs 1 <= k <= n, got k={k}, n={n}")
    if math.comb(n, k) > capacity:
        raise CapacityError(f"C({n},{k}) exceeds shift graph capacity {capacity}")
    verts = list(combinations(range(1, n + 1), k))
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for v in verts:
        tail = v[1:]
        for nxt in range(v[-1] + 1, n + 1):
            edges.append((index[v], index[tail + (nxt,)]))
    return Graph.from_edges(len(verts), edges)


def shift_graph_vertices(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, n + 1), k))


def sample_tournament(n: int, seed: int) -> Tournament:
    """Uniform random orientation of K_n, reproducible per (n, seed)."""
    if n < 1:
        raise InvalidInputError("tournament needs n >= 1")
    rng = random.Random(seed)
    beats = {}
    for i in range(n):
        for j in range(i + 1, n):
            beats[(i, j)] = bool(rng.getrandbits(1))
    return Tournament.from_orientations(n, beats)


def transitivity_threshold(n: int) -> int:
    """ceil(2*log2(n) + 2), the set size that must contain a directed triangle."""
    return math.ceil(2 * math.log2(n) + 2)


def find_triangle_tournament(n: int, max_tries: int = 1000, seed_base: int = 0
                             ) -> Tournament:
    """Seeded resampling until every k-subset contains a directed triangle,
    k = ceil(2 log2 n + 2); certified by the exact transitive-subset solver."""
    if n < 7:
        raise InvalidInputError("the directed-triangle lemma needs n >= 7")
    k = transitivity_threshold(n)
    best = None
    for trial in range(max_tries):
        t = sample_tournament(n, seed_base + trial)
        size, _ = max_transitive_subtournament(t)
        if size < k:
            return t
        if best is None or size < best:
            best = size
    raise SearchFailureError(
        f"no tournament with max transitive subtournament < {k} in {max_tries} tries",
        best=best)


def acyclic_fraction_bound(k: int) -> Fraction:
    """Exact probability k!/2^(k(k-1)/2) that a random K_k orientation is acyclic."""
    if k < 1:
        raise InvalidInputError("k >= 1 required")
    return Fraction(math.factorial(k), 2 ** (k * (k - 1) // 2))


def directed_triangle_union_bound(n: int, k: int) -> Fraction:
    """Exact C(n,k) * k!/2^(k(k-1)/2); below 1 it certifies the random search."""
    if k > n:
        raise InvalidInputError("k <= n required")
    return math.comb(n, k) * acyclic_fraction_bound(k)


def sample_coloring3(n: int, seed: int) -> EdgeColoring3:
    """Uniform random edge 3-coloring of K_n, reproducible per (n, seed)."""
    if n < 3:
        raise InvalidInputError("edge coloring needs n >= 3")
    rng = random.Random(seed)
    flat = []
    for i in range(n):
        for j in range(i + 1, n):
            flat.append(1 + rng.randrange(3))
    return EdgeColoring3(n, tuple(flat))


def find_rainbow_coloring(n: int, target: int, max_tries: int = 1000,
                          seed_base: int = 0) -> EdgeColoring3:
    """Seeded resampling until the largest rainbow-triangle-free vertex subset
    has size at most `target` (exact solver as certifier).

    The asymptotic threshold floor(12 log2 n) holds only past an unspecified
    constant, so the achievable target is an explicit argument here.
    """
    if n < 3:
        raise InvalidInputError("rainbow search needs n >= 3")
    best = None
    for trial in range(max_tries):
        c = sample_coloring3(n, seed_base + trial)
        size, _ = max_rainbow_free_subset(c)
        if size <= target:
            return c
        if best is None or size < best:
            best = size
    raise SearchFailureError(
        f"no coloring with max rainbow-free subset <= {target} in {max_tries} tries",
        best=best)
