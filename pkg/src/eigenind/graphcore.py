"""Simple undirected graphs: storage, graph6 / edge-list I/O, named generators
and structural statistics."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Malformed graph6 or edge-list input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Both views are built once: ``neighbors`` (sorted tuples, for traversal)
    and ``rows`` (Python-int bitsets, for branch and bound).
    """

    n: int
    neighbors: tuple[tuple[int, ...], ...]
    name: str = ""
    rows: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.neighbors) != self.n:
            raise ValueError("neighbor table does not match vertex count")
        rows = []
        for v, nb in enumerate(self.neighbors):
            bits = 0
            for u in nb:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if v not in self.neighbors[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
                bits |= 1 << u
            rows.append(bits)
        object.__setattr__(self, "rows", tuple(rows))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> "Graph":
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(tuple(sorted(a)) for a in adj), name)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.neighbors == other.neighbors

    def __hash__(self):
        return hash((self.n, self.neighbors))

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.neighbors) // 2

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.neighbors[u] if u < v]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def neighbor_array(self) -> np.ndarray:
        """``(n, d)`` integer array of neighbors; only defined for regular graphs."""
        degs = {len(nb) for nb in self.neighbors}
        if len(degs) > 1:
            raise ValueError("neighbor_array needs a regular graph")
        d = degs.pop() if degs else 0
        return np.array(self.neighbors, dtype=np.intp).reshape(self.n, d)

    def with_name(self, name: str) -> "Graph":
        return Graph(self.n, self.neighbors, name)


# --------------------------------------------------------------------------
# graph6 (short form) and edge lists

def encode_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphFormatError(f"unsupported size n={g.n}: only the short graph6 form (n <= 62) is written")
    bits = [int(g.has_edge(i, j)) for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k:k + 6]:
            word = word << 1 | b
        out.append(chr(63 + word))
    return "".join(out)


def parse_graph6(text: str, name: str = "") -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string", 0)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"byte {ord(ch)} outside the graph6 range 63..126", i)
    n = ord(s[0]) - 63
    if n == 63:
        raise GraphFormatError("long-form graph6 header (n > 62) is not supported", 0)
    n_bits = n * (n - 1) // 2
    expected = 1 + math.ceil(n_bits / 6)
    if len(s) != expected:
        raise GraphFormatError(f"expected {expected} bytes for n={n}, got {len(s)}", min(len(s), expected))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges, name)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str, name: str = "") -> Graph:
    lines = [ln.split("#")[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty edge list")
    try:
        header = [int(x) for x in lines[0]]
        body = [tuple(int(x) for x in ln) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"non-integer token in edge list: {exc}") from None
    if len(header) != 2:
        raise GraphFormatError("edge-list header must be 'n m'")
    n, m = header
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}")
    if any(len(e) != 2 for e in body):
        raise GraphFormatError("every edge line must hold exactly two vertices")
    try:
        return Graph.from_edges(n, body, name)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None


def read_graph(path: str | Path) -> Graph:
    """Read a graph file; edge lists are recognised by their ``n m`` header."""
    path = Path(path)
    text = path.read_text()
    first = next((ln.strip() for ln in text.splitlines() if ln.strip()), "")
    if re.fullmatch(r"\d+\s+\d+", first):
        return parse_edge_list(text, path.stem)
    return parse_graph6(first, path.stem)


# --------------------------------------------------------------------------
# named generators

def complete(k: int) -> Graph:
    return Graph.from_edges(k, combinations(range(k), 2), f"K{k}")


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)], f"K{a},{b}")


def cycle(k: int) -> Graph:
    if k < 3:
        raise GeneratorError("cycle needs k >= 3")
    return Graph.from_edges(k, [(i, (i + 1) % k) for i in range(k)], f"C{k}")


def prism(k: int) -> Graph:
    """C_k x K_2."""
    if k < 3:
        raise GeneratorError("prism needs k >= 3")
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges, f"prism{k}")


def hypercube(r: int) -> Graph:
    if r < 1:
        raise GeneratorError("hypercube needs r >= 1")
    n = 1 << r
    edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(r) if v < v ^ (1 << b)]
    return Graph.from_edges(n, edges, f"Q{r}")


def generalized_petersen(n: int, k: int, name: str = "") -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    return Graph.from_edges(2 * n, edges, name or f"GP({n},{k})")


_GENERATORS = {
    "complete": (complete, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "cycle": (cycle, 1),
    "prism": (prism, 1),
    "hypercube": (hypercube, 1),
    "petersen": (lambda: generalized_petersen(5, 2, "petersen"), 0),
    "moebius_kantor": (lambda: generalized_petersen(8, 3, "moebius_kantor"), 0),
    "dodecahedron": (lambda: generalized_petersen(10, 2, "dodecahedron"), 0),
    "k33": (lambda: complete_bipartite(3, 3), 0),
}

_ALIASES = {"k": "complete", "c": "cycle", "q": "hypercube", "kb": "complete_bipartite"}


def generate_named(name: str, params: Sequence[int] = ()) -> Graph:
    key = name.lower().replace("-", "_")
    if key not in _GENERATORS:
        raise GeneratorError(f"unknown graph name {name!r}")
    fn, arity = _GENERATORS[key]
    if len(params) != arity:
        raise GeneratorError(f"{key} takes {arity} integer parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise GeneratorError(f"parameters for {key} must be positive")
    g = fn(*params)
    label = key if arity == 0 else f"{key}_{'_'.join(map(str, params))}"
    return g.with_name(label)


def parse_named(spec: str) -> Graph:
    """Parse ``"petersen"``, ``"prism 3"``, ``"prism_3"``, ``"k4"`` or ``"q3"``."""
    s = spec.strip().lower()
    if s.replace("-", "_") in _GENERATORS:
        return generate_named(s)
    m = re.fullmatch(r"([a-z_]+?)[\s_:]*(\d+(?:[\s_,]+\d+)*)", s)
    if not m:
        raise GeneratorError(f"cannot parse graph name {spec!r}")
    head = _ALIASES.get(m.group(1), m.group(1))
    params = [int(p) for p in re.split(r"[\s_,]+", m.group(2))]
    return generate_named(head, params)


CUBIC_CORPUS = ("complete 4", "k33", "prism 3", "hypercube 3", "petersen",
                "moebius_kantor", "dodecahedron", "prism 6")


def cubic_corpus() -> list[Graph]:
    """The eight cubic vertex-transitive graphs used for certification."""
    return [parse_named(s) for s in CUBIC_CORPUS]


# --------------------------------------------------------------------------
# structure

@dataclass(frozen=True)
class StructureReport:
    degree_min: int
    degree_max: int
    is_regular: bool
    d: int | None
    is_connected: bool
    is_bipartite: bool
    odd_girth: int | None  # None when bipartite (no odd cycle)


def _components(g: Graph) -> int:
    seen = [False] * g.n
    count = 0
    for s in range(g.n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
    return count


def two_coloring(g: Graph) -> list[int] | None:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def odd_girth(g: Graph) -> int | None:
    """Shortest odd cycle length, via BFS on the bipartite double cover.

    The distance from ``(s, 0)`` to ``(s, 1)`` is the shortest odd closed walk
    through ``s``; minimised over ``s`` it equals the shortest odd cycle.
    """
    best = None
    for s in range(g.n):
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        while queue:
            v, p = queue.popleft()
            dv = dist[(v, p)]
            if best is not None and dv + 1 >= best:
                break
            for u in g.neighbors[v]:
                key = (u, 1 - p)
                if key not in dist:
                    dist[key] = dv + 1
                    queue.append(key)
            if (s, 1) in dist:
                break
        if (s, 1) in dist and (best is None or dist[(s, 1)] < best):
            best = dist[(s, 1)]
    return best


def analyze_structure(g: Graph) -> StructureReport:
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    degs = [len(nb) for nb in g.neighbors]
    regular = min(degs) == max(degs)
    og = odd_girth(g)
    return StructureReport(
        degree_min=min(degs),
        degree_max=max(degs),
        is_regular=regular,
        d=degs[0] if regular else None,
        is_connected=_components(g) == 1,
        is_bipartite=og is None,
        odd_girth=og,
    )
