"""Exact combinatorial solvers: clique, chromatic number, set cover,
transitive subtournaments and rainbow-free subsets.

Everything here is exact and deterministic: ties are broken toward the
lexicographically least certificate, and instances beyond the configured
capacity raise ``CapacityError`` instead of degrading.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, InvalidInputError

CLIQUE_CAPACITY = 64
CHROMATIC_CAPACITY = 32
COVER_CAPACITY = 24
TOURNAMENT_CAPACITY = 40
RAINBOW_CAPACITY = 24


@dataclass(frozen=True)
class Graph:
    """Simple loop-free graph; adjacency stored as one bitmask per vertex."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidInputError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u},{v}) out of range")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, tuple(masks))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.has_edge(u, v)]

    def edge_count(self) -> int:
        return sum(self.adj[v].bit_count() for v in range(self.n)) // 2


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _greedy_color_bound(mask: int, adj: Sequence[int]) -> int:
    """Number of greedy color classes covering the vertices of `mask`;
    an upper bound for the clique number inside `mask`."""
    classes = 0
    rest = mask
    while rest:
        classes += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            rest &= ~(1 << v)
    return classes


def _max_clique_size(g: Graph) -> int:
    order = sorted(range(g.n), key=lambda v: -g.adj[v].bit_count())
    best = 0

    def expand(cand: int, size: int):
        nonlocal best
        if size > best:
            best = size
        if cand == 0:
            return
        if size + cand.bit_count() <= best:
            return
        if size + _greedy_color_bound(cand, g.adj) <= best:
            return
        for v in order:
            bit = 1 << v
            if not cand & bit:
                continue
            if size + cand.bit_count() <= best:
                return
            cand &= ~bit
            expand(cand & g.adj[v], size + 1)

    expand((1 << g.n) - 1, 0)
    return best


def _clique_decision(g: Graph, cand: int, size: int, target: int) -> bool:
    """Does a clique of `target` extra vertices exist inside cand?"""
    if size == target:
        return True
    need = target - size
    if cand.bit_count() < need:
        return False
    if _greedy_color_bound(cand, g.adj) < need:
        return False
    rest = cand
    for v in _bits(cand):
        if rest.bit_count() < need:
            return False
        rest &= ~(1 << v)
        if _clique_decision(g, rest & g.adj[v], size + 1, target):
            return True
        # v excluded: continue with rest
        cand = rest
    return False


def max_clique(g: Graph, capacity: int = CLIQUE_CAPACITY) -> tuple[int, tuple[int, ...]]:
    """Exact maximum clique with the lexicographically least witness."""
    if g.n < 1:
        raise InvalidInputError("graph must have at least one vertex")
    if g.n > capacity:
        raise CapacityError(f"{g.n} vertices exceed clique capacity {capacity}")
    size = _max_clique_size(g)
    chosen: list[int] = []
    cand = (1 << g.n) - 1
    while len(chosen) < size:
        for v in _bits(cand):
            rest = cand & g.adj[v]
            if 1 + len(chosen) + rest.bit_count() >= size and \
                    _clique_decision(g, rest, len(chosen) + 1, size):
                chosen.append(v)
                cand = rest
                break
        else:
            raise AssertionError("clique extraction lost the optimum")
    return size, tuple(chosen)


def _k_core(adj: Sequence[int], mask: int, k: int) -> int:
    """Iteratively strip vertices of degree < k; sound for k-colorability."""
    changed = True
    while changed:
        changed = False
        for v in _bits(mask):
            if (adj[v] & mask).bit_count() < k:
                mask &= ~(1 << v)
                changed = True
    return mask


def _components(adj: Sequence[int], mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v] & rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def _color_component(adj: Sequence[int], comp: int, k: int,
                     preassigned: dict[int, int] | None = None) -> dict[int, int] | None:
    """DSATUR-ordered backtracking with domain propagation on one component.

    Returns a proper coloring of the component (colors 0..k-1) extending
    `preassigned`, or None when none exists.
    """
    verts = list(_bits(comp))
    full = (1 << k) - 1
    domain = {v: full for v in verts}
    color = {}
    trail: list[tuple[int, int]] = []

    def set_color(v: int, c: int) -> bool:
        color[v] = c
        queue = [(v, c)]
        while queue:
            u, cu = queue.pop()
            for w in _bits(adj[u] & comp):
                if w in color:
                    if color[w] == cu:
                        return False
                    continue
                old = domain[w]
                new = old & ~(1 << cu)
                if new == old:
                    continue
                trail.append((w, old))
                domain[w] = new
                if new == 0:
                    return False
                if new & (new - 1) == 0:
                    cw = new.bit_length() - 1
                    color[w] = cw
                    trail.append((w, -1))
                    queue.append((w, cw))
        return True

    def undo(mark: int):
        while len(trail) > mark:
            w, old = trail.pop()
            if old == -1:
                del color[w]
            else:
                domain[w] = old

    def solve() -> bool:
        pending = [v for v in verts if v not in color]
        if not pending:
            return True
        # colors already committed anywhere (branching or propagation) are
        # distinguishable; of the rest only the first needs to be tried
        used = 0
        for c in color.values():
            used |= 1 << c
        v = min(pending, key=lambda u: (domain[u].bit_count(),
                                        -(adj[u] & comp).bit_count(), u))
        allowed = domain[v] & used
        unused = domain[v] & ~used
        if unused:
            allowed |= unused & -unused
        for c in _bits(allowed):
            mark = len(trail)
            trail.append((v, -1))
            if set_color(v, c) and solve():
                return True
            undo(mark)
        return False

    for v, c in (preassigned or {}).items():
        if not comp >> v & 1:
            continue
        if v in color:
            if color[v] != c:
                return None
            continue
        trail.append((v, -1))
        if not set_color(v, c):
            return None
    return dict(color) if solve() else None


def _solve_k_coloring(adj: Sequence[int], n: int, k: int,
                      preassigned: dict[int, int] | None = None) -> dict[int, int] | None:
    """Full proper k-coloring (colors 0..k-1) extending `preassigned`, or None."""
    preassigned = preassigned or {}
    for v, c in preassigned.items():
        if not 0 <= c < k:
            return None
        for w in _bits(adj[v]):
            if preassigned.get(w) == c:
                return None
    # strip unassigned vertices of degree < k; they are colorable last
    mask = (1 << n) - 1
    removed: list[int] = []
    changed = True
    while changed:
        changed = False
        for v in _bits(mask):
            if v not in preassigned and (adj[v] & mask).bit_count() < k:
                mask &= ~(1 << v)
                removed.append(v)
                changed = True
    coloring: dict[int, int] = {}
    for comp in _components(adj, mask):
        got = _color_component(adj, comp, k, preassigned)
        if got is None:
            return None
        coloring.update(got)
    for v in reversed(removed):
        taken = {coloring[w] for w in _bits(adj[v]) if w in coloring}
        coloring[v] = next(c for c in range(k) if c not in taken)
    return coloring


def _k_colorable(g: Graph, k: int) -> bool:
    if k >= g.n:
        return True
    return _solve_k_coloring(g.adj, g.n, k) is not None


def chromatic_number(g: Graph, capacity: int = CHROMATIC_CAPACITY) -> tuple[int, tuple[int, ...]]:
    """Exact chromatic number with a proper coloring certificate.

    The coloring is the deterministic output of the decision search at the
    optimal k (lexicographically-least extraction turned out to need
    pigeonhole-style UNSAT proofs per vertex and is far too slow on e.g.
    shift graphs, so determinism comes from the search itself here).
    """
    if g.n < 1:
        raise InvalidInputError("graph must have at least one vertex")
    if g.n > capacity:
        raise CapacityError(f"{g.n} vertices exceed chromatic capacity {capacity}")
    if g.edge_count() == 0:
        return 1, tuple([1] * g.n)
    # cheap greedy clique gives the lower bound for the upward search
    clique_mask = 0
    cand = (1 << g.n) - 1
    while cand:
        u = min(_bits(cand), key=lambda w: -(g.adj[w] & cand).bit_count())
        clique_mask |= 1 << u
        cand &= g.adj[u]
    lower = max(2, clique_mask.bit_count())
    for k in range(lower, g.n + 1):
        got = _solve_k_coloring(g.adj, g.n, k)
        if got is not None:
            return k, tuple(got[v] + 1 for v in range(g.n))
    raise AssertionError("unreachable: n colors always suffice")


@dataclass(frozen=True)
class CoverCertificate:
    """Cover of witness indices by feasible parts (parts may overlap)."""

    parts: tuple[tuple[int, ...], ...]

    def size(self) -> int:
        return len(self.parts)

    def covers(self, n: int) -> bool:
        seen = set()
        for part in self.parts:
            seen.update(part)
        return seen == set(range(n))


def maximal_feasible_subsets(n: int, feasible: Callable[[frozenset], bool],
                             max_sets: int = 200_000,
                             extender=None) -> list[frozenset]:
    """All inclusion-maximal subsets of range(n) passing a monotone predicate.

    `extender`, when given, replaces the set predicate with an incremental
    oracle: ``extender.initial()`` is the empty state and
    ``extender.extend(state, v)`` returns the extended state or None.
    """
    if extender is None:
        cache: dict[frozenset, bool] = {}

        def feas(s: frozenset) -> bool:
            hit = cache.get(s)
            if hit is None:
                hit = cache[s] = feasible(s)
            return hit

        class _SetState:
            def initial(self):
                return frozenset()

            def extend(self, state, v):
                nxt = state | {v}
                return nxt if feas(nxt) else None

        extender = _SetState()

    out: list[frozenset] = []
    base: list[int] = []
    excl: list[int] = []

    def rec(state, cand: list[int]):
        ext = []
        for v in cand:
            nxt = extender.extend(state, v)
            if nxt is not None:
                ext.append((v, nxt))
        if not ext:
            if all(extender.extend(state, v) is None for v in excl):
                out.append(frozenset(base))
                if len(out) > max_sets:
                    raise CapacityError("maximal feasible subset enumeration exploded")
            return
        vs = [v for v, _ in ext]
        for i, (v, nxt) in enumerate(ext):
            base.append(v)
            mark = len(excl)
            excl.extend(vs[:i])
            rec(nxt, vs[i + 1:])
            del excl[mark:]
            base.pop()

    rec(extender.initial(), list(range(n)))
    return out


def _exact_set_cover(n: int, masks: list[int]) -> list[int]:
    """Minimum set cover over the given masks; returns chosen indices."""
    universe = (1 << n) - 1
    cover_of = [[] for _ in range(n)]
    for idx, m in enumerate(masks):
        for v in _bits(m):
            cover_of[v].append(idx)
    for v in range(n):
        if not cover_of[v]:
            raise InvalidInputError(f"element {v} is not covered by any feasible set")

    # greedy start for the upper bound
    best: list[int] = []
    covered = 0
    while covered != universe:
        idx = max(range(len(masks)), key=lambda i: (masks[i] & ~covered).bit_count())
        best.append(idx)
        covered |= masks[idx]
    best_len = len(best)
    max_size = max(m.bit_count() for m in masks)

    def search(covered: int, chosen: list[int]):
        nonlocal best, best_len
        if covered == universe:
            if len(chosen) < best_len:
                best, best_len = chosen[:], len(chosen)
            return
        missing = (universe & ~covered).bit_count()
        if len(chosen) + (missing + max_size - 1) // max_size >= best_len:
            return
        # branch on the uncovered element with fewest options
        elem = min(_bits(universe & ~covered),
                   key=lambda v: sum(1 for i in cover_of[v] if masks[i] & ~covered))
        options = sorted((i for i in cover_of[elem]),
                         key=lambda i: -(masks[i] & ~covered).bit_count())
        for i in options:
            search(covered | masks[i], chosen + [i])

    search(0, [])
    return best


def min_cover(n: int, feasible: Callable[[frozenset], bool],
              capacity: int = COVER_CAPACITY, extender=None) -> CoverCertificate:
    """Minimum-cardinality cover of range(n) by subsets passing `feasible`.

    `feasible` must be monotone decreasing and accept every singleton.
    Implemented as enumeration of the maximal feasible subsets followed by
    exact set cover.
    """
    if n < 1:
        raise InvalidInputError("cover needs at least one element")
    if n > capacity:
        raise CapacityError(f"{n} elements exceed cover capacity {capacity}")
    for v in range(n):
        if not feasible(frozenset([v])):
            raise InvalidInputError(f"singleton {{{v}}} is infeasible")
    maximal = maximal_feasible_subsets(n, feasible, extender=extender)
    canon = sorted(tuple(sorted(s)) for s in maximal)
    masks = [sum(1 << v for v in part) for part in canon]
    chosen = _exact_set_cover(n, masks)
    target = len(chosen)

    # lexicographically least cover of the optimal size (ascending canonical
    # indices): commit one index at a time, certified by a bounded-depth
    # completion decision with element branching
    universe = (1 << n) - 1
    cover_of = [[] for _ in range(n)]
    for idx, m in enumerate(masks):
        for v in _bits(m):
            cover_of[v].append(idx)

    def completes(covered: int, floor: int, slots: int) -> bool:
        if covered == universe:
            return True
        if slots == 0:
            return False
        elem, options = None, None
        for v in _bits(universe & ~covered):
            opts = [i for i in cover_of[v] if i > floor]
            if not opts:
                return False
            if options is None or len(opts) < len(options):
                elem, options = v, opts
        for i in sorted(options, key=lambda i: -(masks[i] & ~covered).bit_count()):
            if completes(covered | masks[i], floor, slots - 1):
                return True
        return False

    picked: list[int] = []
    covered = 0
    floor = -1
    while covered != universe:
        for i in range(floor + 1, len(masks)):
            if masks[i] & ~covered == 0:
                continue
            if completes(covered | masks[i], i, target - len(picked) - 1):
                picked.append(i)
                covered |= masks[i]
                floor = i
                break
        else:
            raise AssertionError("cover extraction lost the optimum")
    return CoverCertificate(tuple(canon[i] for i in picked))


def _acyclic_insert_ok(order: list[int], out_masks: Sequence[int], v: int) -> int | None:
    """Position to insert v into a dominance order, or None if a cycle appears."""
    beats_v = [i for i, u in enumerate(order) if out_masks[u] >> v & 1]
    v_beats = [i for i, u in enumerate(order) if out_masks[v] >> u & 1]
    hi = max(beats_v) if beats_v else -1
    lo = min(v_beats) if v_beats else len(order)
    if hi < lo:
        return hi + 1
    return None


def max_transitive_subtournament(tournament, capacity: int = TOURNAMENT_CAPACITY
                                 ) -> tuple[int, tuple[int, ...]]:
    """Largest vertex subset inducing an acyclic (= transitive) subtournament.

    Memoized recursion on candidate masks: a transitive set with source v
    lives entirely inside v's out-neighborhood.
    """
    out = tuple(tournament.out_masks)
    n = tournament.n
    if n > capacity:
        raise CapacityError(f"{n} vertices exceed tournament capacity {capacity}")
    memo: dict[int, int] = {}

    def f(mask: int) -> int:
        if mask == 0:
            return 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        best_local = 0
        verts = sorted(_bits(mask), key=lambda v: -(out[v] & mask).bit_count())
        for v in verts:
            sub = out[v] & mask
            if 1 + sub.bit_count() <= best_local:
                continue
            best_local = max(best_local, 1 + f(sub))
        memo[mask] = best_local
        return best_local

    size = f((1 << n) - 1)

    # lexicographically least witness set of that size
    def extend(chosen: list[int], order: list[int], cand: list[int]) -> list[int] | None:
        if len(chosen) == size:
            return chosen
        if len(chosen) + len(cand) < size:
            return None
        for i, v in enumerate(cand):
            pos = _acyclic_insert_ok(order, out, v)
            if pos is None:
                continue
            got = extend(chosen + [v], order[:pos] + [v] + order[pos:], cand[i + 1:])
            if got is not None:
                return got
        return None

    witness = extend([], [], list(range(n)))
    assert witness is not None
    return size, tuple(witness)


def max_rainbow_free_subset(coloring, capacity: int = RAINBOW_CAPACITY
                            ) -> tuple[int, tuple[int, ...]]:
    """Largest vertex subset of an edge-3-colored K_n without a rainbow triangle."""
    n = coloring.n
    if n > capacity:
        raise CapacityError(f"{n} vertices exceed rainbow capacity {capacity}")
    color = coloring.color

    def rainbow_with(chosen: list[int], v: int) -> bool:
        for a, b in combinations(chosen, 2):
            if {color(a, b), color(a, v), color(b, v)} == {1, 2, 3}:
                return True
        return False

    best_size = 0
    best_set: list[int] = []

    def search(i: int, chosen: list[int]):
        nonlocal best_size, best_set
        if len(chosen) > best_size:
            best_size, best_set = len(chosen), chosen[:]
        if i == n or len(chosen) + (n - i) <= best_size:
            return
        if not rainbow_with(chosen, i):
            search(i + 1, chosen + [i])
        search(i + 1, chosen)

    search(0, [])

    # rerun include-first with the exact target for the lex-least witness
    target = best_size

    def lex(i: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == target:
            return chosen
        if i == n or len(chosen) + (n - i) < target:
            return None
        if not rainbow_with(chosen, i):
            got = lex(i + 1, chosen + [i])
            if got is not None:
                return got
        return lex(i + 1, chosen)

    witness = lex(0, [])
    assert witness is not None
    return best_size, tuple(witness)
