import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st

from eigenind.graphcore import Graph, cubic_corpus


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    return cubic_corpus()


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_force_alpha(g: Graph) -> int:
    """Largest independent set by enumerating all 2^n vertex subsets."""
    best = 0
    edges = g.edges()
    for mask in range(1 << g.n):
        size = bin(mask).count("1")
        if size <= best:
            continue
        if all(not (mask >> u & 1 and mask >> v & 1) for u, v in edges):
            best = size
    return best


def all_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    h = to_nx(g)
    matcher = nx.algorithms.isomorphism.GraphMatcher(h, h)
    return [tuple(m[v] for v in range(g.n)) for m in matcher.isomorphisms_iter()]


def mc_orthant(corr: np.ndarray, n: int, seed: int = 12345) -> tuple[float, float]:
    """Independent Monte Carlo oracle for P(all coordinates < 0)."""
    rng = np.random.default_rng(seed)
    chol = np.linalg.cholesky(corr + 1e-13 * np.eye(len(corr)))
    hits = 0
    done = 0
    while done < n:
        k = min(1_000_000, n - done)
        z = rng.standard_normal((k, len(corr))) @ chol.T
        hits += int(np.count_nonzero(np.all(z < 0, axis=1)))
        done += k
    p = hits / n
    return p, float(np.sqrt(p * (1 - p) / n))


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])
