"""Automorphism groups by individualisation / refinement and the transitivity
classes (vertex, arc, cherry) derived from them."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Hashable, Sequence

from .graphcore import Graph

NODE_BUDGET = 10**8

Perm = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SymmetryReport:
    """``None`` in any field means the search budget ran out (unknown)."""

    aut_order: int | None
    generators: tuple[Perm, ...]
    vertex_transitive: bool | None
    arc_transitive: bool | None
    cherry_transitive: bool | None

    @property
    def known(self) -> bool:
        return self.aut_order is not None

    def to_dict(self) -> dict:
        return {
            "aut_order": self.aut_order,
            "n_generators": len(self.generators),
            "vertex_transitive": self.vertex_transitive,
            "arc_transitive": self.arc_transitive,
            "cherry_transitive": self.cherry_transitive,
        }


# --------------------------------------------------------------------------
# refinement

def _distance_profile(g: Graph, s: int) -> tuple[int, ...]:
    dist = [-1] * g.n
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for u in g.neighbors[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    counts = Counter(dist)
    return tuple(sorted(counts.items()))


def initial_coloring(g: Graph) -> list[int]:
    keys = [(g.degree(v), _distance_profile(g, v)) for v in range(g.n)]
    rank = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


def refine(g: Graph, colors: Sequence[int]) -> tuple[list[int], tuple]:
    """Equitable refinement.  Colours are ranks of sorted signatures, so the
    result (and the trace) is invariant under relabelling."""
    colors = list(colors)
    trace = []
    n_classes = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(Counter(colors[u] for u in g.neighbors[v]).items())))
                for v in range(g.n)]
        uniq = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(uniq)}
        colors = [rank[s] for s in sigs]
        trace.append(tuple(uniq))
        if len(uniq) == n_classes:
            return colors, tuple(trace)
        n_classes = len(uniq)


def individualize(colors: Sequence[int], v: int) -> list[int]:
    keys = [(c, u != v) for u, c in enumerate(colors)]
    rank = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


def _first_nontrivial_cell(colors: Sequence[int]) -> list[int] | None:
    counts = Counter(colors)
    target = min((c for c, k in counts.items() if k > 1), default=None)
    if target is None:
        return None
    return [v for v, c in enumerate(colors) if c == target]


def is_automorphism(g: Graph, perm: Perm) -> bool:
    if sorted(perm) != list(range(g.n)):
        return False
    return all(g.has_edge(perm[u], perm[v]) for u, v in g.edges())


# --------------------------------------------------------------------------
# search

class _Searcher:
    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"automorphism search exceeded {self.budget} nodes")

    def extend(self, left: list[int], right: list[int]) -> Perm | None:
        """Find an automorphism mapping the colouring ``left`` onto ``right``."""
        self._tick()
        cell = _first_nontrivial_cell(left)
        if cell is None:
            inv = {c: v for v, c in enumerate(right)}
            perm = tuple(inv[left[v]] for v in range(self.g.n))
            return perm if is_automorphism(self.g, perm) else None
        x = cell[0]
        lc, ltrace = refine(self.g, individualize(left, x))
        target = left[x]
        for y in (v for v, c in enumerate(right) if c == target):
            rc, rtrace = refine(self.g, individualize(right, y))
            if rtrace != ltrace:
                continue
            found = self.extend(lc, rc)
            if found is not None:
                return found
        return None


def orbit(generators: Sequence[Perm], start: Hashable, act) -> set:
    """Orbit of ``start`` under the group generated by ``generators``;
    ``act(perm, point)`` applies a permutation to a point."""
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for gen in generators:
            q = act(gen, p)
            if q not in seen:
                seen.add(q)
                queue.append(q)
    return seen


def _act_vertex(perm: Perm, v: int) -> int:
    return perm[v]


def _act_arc(perm: Perm, arc: tuple[int, int]) -> tuple[int, int]:
    return perm[arc[0]], perm[arc[1]]


def _act_cherry(perm: Perm, cherry: tuple[int, frozenset]) -> tuple[int, frozenset]:
    center, ends = cherry
    return perm[center], frozenset(perm[u] for u in ends)


def _fixes(perm: Perm, points: Sequence[int]) -> bool:
    return all(perm[p] == p for p in points)


def automorphism_group(g: Graph, budget: int = NODE_BUDGET) -> SymmetryReport:
    """Exact ``|Aut(G)|`` via a stabiliser chain.

    At each level the first non-singleton cell of the refined partition gives
    the next base point ``b``.  Every vertex ``w`` of that cell that is not
    already in the orbit of ``b`` (under the generators found so far that fix
    the base) is tested explicitly by a backtracking search, so the orbit
    lengths, and hence the order, are exact.
    """
    if g.n > 256:
        raise ValueError("automorphism search is limited to n <= 256")
    search = _Searcher(g, budget)
    generators: list[Perm] = []
    order = 1
    base: list[int] = []
    try:
        colors, _ = refine(g, initial_coloring(g))
        while True:
            cell = _first_nontrivial_cell(colors)
            if cell is None:
                break
            b = cell[0]
            left, ltrace = refine(g, individualize(colors, b))
            level_gens = [p for p in generators if _fixes(p, base)]
            orb = orbit(level_gens, b, _act_vertex)
            for w in cell:
                if w in orb:
                    continue
                right, rtrace = refine(g, individualize(colors, w))
                if rtrace != ltrace:
                    continue
                perm = search.extend(left, right)
                if perm is not None:
                    generators.append(perm)
                    level_gens.append(perm)
                    orb = orbit(level_gens, b, _act_vertex)
            order *= len(orb)
            base.append(b)
            colors = left
    except BudgetExceeded:
        return SymmetryReport(None, tuple(generators), None, None, None)
    return _classify(g, order, tuple(generators))


def _classify(g: Graph, order: int, gens: tuple[Perm, ...]) -> SymmetryReport:
    n = g.n
    vt = len(orbit(gens, 0, _act_vertex)) == n
    arc_count = 2 * g.m
    if arc_count:
        v0 = next(v for v in range(n) if g.neighbors[v])
        at = vt and len(orbit(gens, (v0, g.neighbors[v0][0]), _act_arc)) == arc_count
    else:
        at = False
    cherries = sum(comb(g.degree(v), 2) for v in range(n))
    if cherries:
        c0 = next(v for v in range(n) if g.degree(v) >= 2)
        start = (c0, frozenset(g.neighbors[c0][:2]))
        ct = vt and len(orbit(gens, start, _act_cherry)) == cherries
    else:
        ct = False
    return SymmetryReport(order, gens, vt, at, ct)


def is_vertex_transitive(g: Graph, budget: int = NODE_BUDGET) -> bool | None:
    return automorphism_group(g, budget).vertex_transitive


def cherries(g: Graph) -> list[tuple[int, frozenset]]:
    return [(v, frozenset(p)) for v in range(g.n) for p in combinations(g.neighbors[v], 2)]
