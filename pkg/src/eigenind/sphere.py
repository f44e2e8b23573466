"""Gaussian orthant probabilities and spherical simplices.

The probability that a vertex beats all of its neighbours in a random
eigenvector equals the normalised volume of a spherical simplex whose outer
normals are ``-u_i``.  This module evaluates that volume in closed form for
three neighbours, by Monte Carlo for general degree, and bounds it from below
by the inscribed spherical cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .streams import RandomStream, as_stream, bernoulli_summary

PSD_TOL = 1e-10


class DomainError(ValueError):
    pass


class InfeasibleSpec(ValueError):
    pass


class DegenerateError(ValueError):
    pass


@dataclass(frozen=True)
class OrthantSpec:
    corr: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.corr, dtype=float)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise DomainError("correlation matrix must be square")
        if not np.allclose(c, c.T, atol=1e-12):
            raise DomainError("correlation matrix must be symmetric")
        if not np.allclose(np.diag(c), 1.0, atol=1e-12):
            raise DomainError("correlation matrix must have unit diagonal")
        if np.linalg.eigvalsh(c)[0] < -PSD_TOL:
            raise DomainError("correlation matrix is not positive semidefinite")
        object.__setattr__(self, "corr", c)

    @property
    def d(self) -> int:
        return self.corr.shape[0]

    @classmethod
    def from_pairs(cls, c12: float, c13: float, c23: float) -> "OrthantSpec":
        return cls(np.array([[1.0, c12, c13], [c12, 1.0, c23], [c13, c23, 1.0]]))


def _asin(x):
    return np.arcsin(np.clip(x, -1.0, 1.0))


def simplex_cosine(d: int, lam: float) -> float:
    """Cosine of the common angle between the normals ``u_i`` in the
    cherry-transitive case: ``(d - 2 - lam) / (2 (d - 1))``."""
    return (d - 2 - lam) / (2.0 * (d - 1))


def cherry_covariance(d: int, lam: float) -> float:
    """Common neighbour covariance ``(lam^2 - d) / (d (d - 1))``."""
    return (lam * lam - d) / (d * (d - 1.0))


def q3_closed_form(lam: float) -> float:
    """Normalised area of the regular spherical triangle for eigenvalue ``lam``."""
    if not (-3.0 - 1e-9 <= lam <= 3.0 + 1e-9):
        raise DomainError(f"q3 needs -3 <= lambda <= 3, got {lam}")
    x = min(max((1.0 - lam) / 4.0, -1.0), 1.0)
    return 0.125 + 3.0 / (4.0 * math.pi) * math.asin(x)


def orthant3(c12: float, c13: float, c23: float) -> float:
    """P(Y1 < 0, Y2 < 0, Y3 < 0) for standard Gaussians with the given correlations."""
    OrthantSpec.from_pairs(c12, c13, c23)
    return 0.125 + (math.asin(c12) + math.asin(c13) + math.asin(c23)) / (4.0 * math.pi)


def iplus_prob_d3_exact(spec: OrthantSpec, lam: float) -> float:
    """P(v in I+) for a cubic vertex from the neighbour covariances and ``lam``.

    Builds ``x . y_i`` and ``|u_i|`` from the covariances via
    ``sum_i y_i = lam x`` and sums the three arcsines of the triangle.
    """
    if spec.d != 3:
        raise DomainError("iplus_prob_d3_exact needs a 3x3 covariance")
    if abs(lam) < 1e-6:
        raise DegenerateError("lambda too close to 0: x = sum(y_i)/lambda is singular")
    c = spec.corr
    pair = {(0, 1): c[0, 1], (0, 2): c[0, 2], (1, 2): c[1, 2]}
    total = sum(pair.values())
    if abs(total - (lam * lam - 3.0) / 2.0) > 1e-6:
        raise DomainError(f"covariances sum to {total}, expected (lam^2-3)/2 = {(lam * lam - 3) / 2}")
    # c_jk is the covariance of the two neighbours other than i
    opposite = [c[1, 2], c[0, 2], c[0, 1]]
    xy = [lam / 2.0 - 1.0 / (2.0 * lam) - cjk / lam for cjk in opposite]
    norm2 = [2.0 - 2.0 * t for t in xy]
    if min(norm2) <= 1e-14:
        raise DegenerateError("some u_i has zero length")
    s = 0.0
    for (i, j), cij in pair.items():
        uij = 1.0 + cij - xy[i] - xy[j]
        s += float(_asin(uij / math.sqrt(norm2[i] * norm2[j])))
    return (math.pi / 2.0 + s) / (4.0 * math.pi)


def equicorrelated_normals(gen: np.random.Generator, size: int, d: int, c: float) -> np.ndarray:
    """``(size, d)`` standard normals with common pairwise correlation ``c``."""
    if c >= 0:
        w = gen.standard_normal((size, 1))
        z = gen.standard_normal((size, d))
        return math.sqrt(c) * w + math.sqrt(1.0 - c) * z
    cov = np.full((d, d), c)
    np.fill_diagonal(cov, 1.0)
    chol = np.linalg.cholesky(cov)
    return gen.standard_normal((size, d)) @ chol.T


def qd_monte_carlo(d: int, lam: float, n_samples: int, rng: RandomStream | int | None = None) -> tuple[float, float]:
    """Monte Carlo estimate of ``q_d(lam)`` and its standard error.

    For ``lam != 0`` the neighbour values are equicorrelated Gaussians, the
    root value is their sum over ``lam`` and the event is ``X > Y_i`` for all
    ``i``.  At ``lam == 0`` the normals are sampled directly with correlation
    ``simplex_cosine(d, 0)``.
    """
    if d < 3:
        raise DomainError("q_d is defined for d >= 3")
    if n_samples < 1:
        raise ValueError("need at least one sample")
    c = cherry_covariance(d, lam)
    if c > 1.0 + 1e-12 or c < -1.0 / (d - 1) - 1e-12:
        raise InfeasibleSpec(f"implied covariance {c} is not PSD for d={d}, lambda={lam}")
    c = min(c, 1.0)
    stream = as_stream(rng).substream(f"qd:{d}:{lam!r}")

    if lam == 0.0:
        rho = simplex_cosine(d, 0.0)

        def block(gen, k):
            u = equicorrelated_normals(gen, k, d, rho)
            return int(np.count_nonzero(np.all(u > 0, axis=1)))
    else:
        def block(gen, k):
            y = equicorrelated_normals(gen, k, d, c)
            x = y.sum(axis=1, keepdims=True) / lam
            return int(np.count_nonzero(np.all(x - y > 0, axis=1)))

    hits = sum(stream.map_blocks(n_samples, block))
    return bernoulli_summary(hits, n_samples)


# --------------------------------------------------------------------------
# spherical caps

def sphere_volume(k: int) -> float:
    """Surface volume of the unit sphere ``S^k`` in ``R^(k+1)``."""
    n = k + 1
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def sphere_volume_ratio(d: int) -> float:
    """``vol(S^(d-2)) / vol(S^(d-1))`` through log-gamma."""
    return math.exp(math.lgamma(d / 2) - math.lgamma((d - 1) / 2) - 0.5 * math.log(math.pi))


def cap_lower_bound(d: int, lam: float, mode: str = "arc_transitive") -> float:
    """Inscribed-cap lower bound on ``P(v in I+)``.

    ``arc_transitive``: every ``u_i`` makes angle ``arccos(-lam/d)/2`` with
    the root direction, giving ``1/2 - (pi/4) r sqrt((lam+d)/d)`` where ``r``
    is the sphere volume ratio.  ``vertex_transitive``: the angle is at most
    ``arccos(1-lam-d)/2``, giving ``1/2 - (pi/4) r sqrt(lam+d)``.
    """
    if d < 2:
        raise DomainError("d must be at least 2")
    r = sphere_volume_ratio(d)
    if mode == "arc_transitive":
        if not -d <= lam <= 0:
            raise DomainError(f"arc-transitive cap bound needs -d <= lambda <= 0, got {lam}")
        return 0.5 - math.pi / 4.0 * r * math.sqrt((lam + d) / d)
    if mode == "vertex_transitive":
        if not -d <= lam <= -d + 1:
            raise DomainError(f"vertex-transitive cap bound needs -d <= lambda <= -d+1, got {lam}")
        return 0.5 - math.pi / 4.0 * r * math.sqrt(lam + d)
    raise DomainError(f"unknown mode {mode!r}")
