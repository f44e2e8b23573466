"""Gaussian wave functions on the d-regular tree, restricted to a finite ball.

The wave function is invariant under the (distance-transitive) automorphism
group of the tree, so its covariance only depends on distance:
``sigma_k = cov(X_o, X_v)`` for ``dist(o, v) = k``.  Taking covariance of the
eigenvector equation at ``v`` with ``X_o`` gives the radial recursion

    d sigma_1 = lam,   sigma_(k-1) + (d-1) sigma_(k+1) = lam sigma_k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .streams import RandomStream, as_stream, bernoulli_summary

JITTERS = (0.0, 1e-12, 1e-10, 1e-8)
MAX_BALL = 4096


class OutOfSpectrum(ValueError):
    pass


class NumericallyDegenerate(RuntimeError):
    pass


def spectral_edge(d: int) -> float:
    return 2.0 * math.sqrt(d - 1)


def tree_covariance_sequence(d: int, lam: float, k_max: int) -> np.ndarray:
    if d < 3:
        raise ValueError("tree degree must be at least 3")
    if abs(lam) > spectral_edge(d) * (1 + 1e-12):
        raise OutOfSpectrum(f"lambda={lam} outside spectrum [-{spectral_edge(d):.6f}, {spectral_edge(d):.6f}] of T_{d}")
    sigma = np.empty(k_max + 1)
    sigma[0] = 1.0
    if k_max >= 1:
        sigma[1] = lam / d
    for k in range(1, k_max):
        sigma[k + 1] = (lam * sigma[k] - sigma[k - 1]) / (d - 1)
    return sigma


def recursion_residuals(d: int, lam: float, sigma: np.ndarray) -> np.ndarray:
    """Residuals of the radial eigenvector equation at k = 0 .. len-2."""
    res = [d * sigma[1] - lam * sigma[0]]
    for k in range(1, len(sigma) - 1):
        res.append(sigma[k - 1] + (d - 1) * sigma[k + 1] - lam * sigma[k])
    return np.abs(np.array(res))


def ball_size(d: int, radius: int) -> int:
    return 1 + d * ((d - 1) ** radius - 1) // (d - 2)


def tree_ball(d: int, radius: int) -> tuple[np.ndarray, np.ndarray]:
    """BFS-ordered ball of ``T_d`` around the root 0: (parent, depth) arrays.
    The root's neighbours are vertices ``1..d``."""
    parent = [-1]
    depth = [0]
    frontier = [0]
    for r in range(radius):
        nxt = []
        for v in frontier:
            for _ in range(d if v == 0 else d - 1):
                parent.append(v)
                depth.append(r + 1)
                nxt.append(len(parent) - 1)
        frontier = nxt
    return np.array(parent), np.array(depth)


def tree_distances(parent: np.ndarray, depth: np.ndarray) -> np.ndarray:
    n = len(parent)
    radius = int(depth.max()) if n else 0
    anc = np.full((n, radius + 1), -1)
    anc[:, 0] = 0
    for v in range(1, n):
        anc[v, : depth[v]] = anc[parent[v], : depth[v]]
        anc[v, depth[v]] = v
    lca_depth = np.zeros((n, n), dtype=np.int64)
    for k in range(1, radius + 1):
        col = anc[:, k]
        lca_depth += (col[:, None] == col[None, :]) & (col[:, None] >= 0)
    return depth[:, None] + depth[None, :] - 2 * lca_depth


@dataclass(frozen=True)
class TreeWaveModel:
    d: int
    lam: float
    radius: int
    sigma: np.ndarray  # sigma_0 .. sigma_2R
    parent: np.ndarray
    depth: np.ndarray
    cov: np.ndarray
    chol: np.ndarray
    jitter: float

    @property
    def size(self) -> int:
        return len(self.parent)

    def neighbors_of_root(self) -> np.ndarray:
        return np.arange(1, self.d + 1)

    def sample(self, gen: np.random.Generator, k: int) -> np.ndarray:
        return gen.standard_normal((k, self.size)) @ self.chol.T


def build_ball_covariance(d: int, lam: float, radius: int) -> TreeWaveModel:
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if ball_size(d, radius) > MAX_BALL:
        raise ValueError(f"ball of radius {radius} in T_{d} has more than {MAX_BALL} vertices")
    sigma = tree_covariance_sequence(d, lam, 2 * radius)
    parent, depth = tree_ball(d, radius)
    cov = sigma[tree_distances(parent, depth)]
    eye = np.eye(len(parent))
    for jitter in JITTERS:
        try:
            chol = np.linalg.cholesky(cov + jitter * eye)
        except np.linalg.LinAlgError:
            continue
        if np.all(np.isfinite(chol)):
            return TreeWaveModel(d, lam, radius, sigma, parent, depth, cov, chol, jitter)
    lmin = float(np.linalg.eigvalsh(cov)[0])
    raise NumericallyDegenerate(
        f"Cholesky failed at jitter {JITTERS[-1]:g}; smallest eigenvalue estimate {lmin:.3e}")


@dataclass(frozen=True)
class TreeDensity:
    estimate: float
    stderr: float
    n_samples: int
    jitter: float
    ball_size: int

    def __iter__(self):
        yield self.estimate
        yield self.stderr


def estimate_tree_density(d: int, lam: float, radius: int, n_samples: int,
                          rng: RandomStream | int | None = None,
                          model: TreeWaveModel | None = None) -> TreeDensity:
    """Frequency of ``X_o > X_u`` for all neighbours ``u`` of the root, with
    the whole ball sampled through the Cholesky factor."""
    if model is None:
        model = build_ball_covariance(d, lam, radius)
    nb = model.neighbors_of_root()
    stream = as_stream(rng).substream(f"tree:{d}:{lam!r}:{radius}")

    def block(gen, k):
        x = model.sample(gen, k)
        return int(np.count_nonzero(np.all(x[:, :1] > x[:, nb], axis=1)))

    hits = sum(stream.map_blocks(n_samples, block))
    est, se = bernoulli_summary(hits, n_samples)
    return TreeDensity(est, se, n_samples, model.jitter, model.size)
