"""Random eigenvectors, the independent sets I+ / I- they induce, and exact
neighbour covariances at a root."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .graphcore import Graph
from .spectra import EigenspaceBasis, eigendecompose, eigenspace_basis
from .streams import RandomStream, as_stream
from .symmetry import is_vertex_transitive

# values closer than TIE_RTOL * max|x| count as equal; eigenvectors from a
# floating-point basis carry ~1e-15 noise on exactly tied coordinates
TIE_RTOL = 1e-9


class DegenerateEigenspace(ValueError):
    pass


class NonTransitiveWarning(UserWarning):
    pass


@dataclass(frozen=True)
class EigenvectorSample:
    values: np.ndarray
    lam: float
    i_plus: frozenset[int]
    i_minus: frozenset[int]


@dataclass(frozen=True)
class NeighborCovariance:
    root: int
    neighbors: tuple[int, ...]
    c: np.ndarray  # cov(Y_i, Y_j)
    root_cov: np.ndarray  # cov(X, Y_i)
    root_var: float
    angles: np.ndarray  # angle between u_i and u_j, u_i = x - y_i

    def pair_sum(self) -> float:
        iu = np.triu_indices(len(self.neighbors), 1)
        return float(self.c[iu].sum())


def _extrema_masks(x: np.ndarray, nbr: np.ndarray | list) -> tuple[np.ndarray, np.ndarray]:
    """Strict local max / min masks along the last axis; ties fall in neither."""
    tol = TIE_RTOL * np.max(np.abs(x), axis=-1, keepdims=True)
    if isinstance(nbr, np.ndarray):
        nx = x[..., nbr]  # (..., n, d)
        t = tol[..., None]
        return np.all(x[..., None] > nx + t, axis=-1), np.all(x[..., None] < nx - t, axis=-1)
    plus = np.ones(x.shape, dtype=bool)
    minus = np.ones(x.shape, dtype=bool)
    for v, nb in enumerate(nbr):
        if nb:
            nx = x[..., list(nb)]
            plus[..., v] = np.all(x[..., v, None] > nx + tol, axis=-1)
            minus[..., v] = np.all(x[..., v, None] < nx - tol, axis=-1)
    return plus, minus


def _neighbor_index(g: Graph):
    try:
        return g.neighbor_array()
    except ValueError:
        return g.neighbors


def local_extrema(g: Graph, values: np.ndarray) -> tuple[frozenset[int], frozenset[int]]:
    plus, minus = _extrema_masks(np.asarray(values, dtype=float), _neighbor_index(g))
    return frozenset(np.flatnonzero(plus).tolist()), frozenset(np.flatnonzero(minus).tolist())


def sample_random_eigenvector(basis: EigenspaceBasis, g: Graph, rng: np.random.Generator) -> EigenvectorSample:
    """One draw of ``sum_i gamma_i e_i``, scaled by ``sqrt(n / l)`` so that on a
    vertex-transitive graph every coordinate has unit variance."""
    n, l = basis.basis.shape
    gamma = rng.standard_normal(l)
    x = math.sqrt(n / l) * (basis.basis @ gamma)
    ip, im = local_extrema(g, x)
    return EigenvectorSample(x, basis.lam, ip, im)


@dataclass(frozen=True)
class IplusEstimate:
    estimate: float
    stderr: float
    per_vertex: np.ndarray
    minus_estimate: float
    minus_stderr: float
    n_samples: int
    vertex_transitive: bool | None

    def __iter__(self):
        yield self.estimate
        yield self.stderr


def estimate_iplus_probability(g: Graph, lam: float, n_samples: int, rng: RandomStream | int | None = None,
                               basis: EigenspaceBasis | None = None,
                               transitive: bool | None = None) -> IplusEstimate:
    """Monte Carlo frequency of ``v in I+`` for the random eigenvector with
    eigenvalue ``lam``, averaged over samples and vertices.

    The standard error comes from the per-sample spread of ``|I+|/n``.  On a
    graph that is not vertex-transitive the pooled number has no single
    meaning, so a :class:`NonTransitiveWarning` is emitted and ``per_vertex``
    should be read instead.
    """
    if n_samples < 1:
        raise ValueError("need at least one sample")
    if basis is None:
        basis = eigenspace_basis(eigendecompose(g), lam)
    if transitive is None:
        transitive = is_vertex_transitive(g)
    if not transitive:
        warnings.warn(f"{g.name or 'graph'} is not vertex-transitive; use per-vertex estimates",
                      NonTransitiveWarning, stacklevel=2)
    n, l = basis.basis.shape
    scale = math.sqrt(n / l)
    nbr = _neighbor_index(g)
    b = basis.basis
    stream = as_stream(rng).substream(f"iplus:{basis.lam!r}")

    def block(gen, k):
        x = scale * (gen.standard_normal((k, l)) @ b.T)
        plus, minus = _extrema_masks(x, nbr)
        fp = plus.sum(axis=1) / n
        fm = minus.sum(axis=1) / n
        return fp.sum(), (fp * fp).sum(), fm.sum(), (fm * fm).sum(), plus.sum(axis=0)

    parts = stream.map_blocks(n_samples, block)
    s_p = sum(p[0] for p in parts)
    ss_p = sum(p[1] for p in parts)
    s_m = sum(p[2] for p in parts)
    ss_m = sum(p[3] for p in parts)
    counts = np.sum([p[4] for p in parts], axis=0)

    def mean_se(s, ss):
        mean = s / n_samples
        if n_samples < 2:
            return float(mean), float("nan")
        var = max(ss - n_samples * mean * mean, 0.0) / (n_samples - 1)
        return float(mean), math.sqrt(var / n_samples)

    est, se = mean_se(s_p, ss_p)
    mest, mse = mean_se(s_m, ss_m)
    return IplusEstimate(est, se, counts / n_samples, mest, mse, n_samples, transitive)


def neighbor_covariances(basis: EigenspaceBasis, g: Graph, root: int) -> NeighborCovariance:
    """Exact covariances of the root and its neighbours under the normalised
    random eigenvector, with the angles between ``u_i = x - y_i``."""
    n, l = basis.basis.shape
    nb = g.neighbors[root]
    if not nb:
        raise DegenerateEigenspace("root has no neighbours")
    rows = basis.basis[[root, *nb]]
    k = (n / l) * rows @ rows.T
    if min(np.diag(k)) <= 1e-12:
        raise DegenerateEigenspace("a coordinate has zero variance in this eigenspace")
    x_var = float(k[0, 0])
    xy = k[0, 1:]
    c = k[1:, 1:]
    # cov(U_i, U_j) with U_i = X - Y_i
    uu = x_var - xy[:, None] - xy[None, :] + c
    norms = np.sqrt(np.clip(np.diag(uu), 0.0, None))
    with np.errstate(invalid="ignore", divide="ignore"):
        cosines = uu / np.outer(norms, norms)
    angles = np.arccos(np.clip(cosines, -1.0, 1.0))
    np.fill_diagonal(angles, 0.0)
    return NeighborCovariance(root, tuple(nb), c, xy.copy(), x_var, angles)


def conjecture_gap(g: Graph, n_samples: int, rng: RandomStream | int | None = None,
                   qd_samples: int = 200_000) -> list[dict]:
    """For each eigenvalue of a regular vertex-transitive graph, compare the
    Monte Carlo ``P(v in I+)`` with ``q_d(lam)``.  Exploration only: the
    inequality is not asserted anywhere."""
    from .sphere import q3_closed_form, qd_monte_carlo

    d = g.degree(0)
    dec = eigendecompose(g)
    stream = as_stream(rng)
    rows = []
    for lam in dec.representatives:
        basis = eigenspace_basis(dec, lam)
        est = estimate_iplus_probability(g, lam, n_samples, stream.substream("gap"), basis=basis, transitive=True)
        if d == 3:
            qd, qd_se = q3_closed_form(lam), 0.0
        else:
            qd, qd_se = qd_monte_carlo(d, lam, qd_samples, stream.substream("gap-qd"))
        rows.append({"lambda": lam, "multiplicity": basis.dim, "p_iplus": est.estimate,
                     "stderr": est.stderr, "q_d": qd, "q_d_stderr": qd_se,
                     "gap": est.estimate - qd})
    return rows
