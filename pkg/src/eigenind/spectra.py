"""Dense symmetric eigensolver (cyclic Jacobi) and eigenspace grouping for
adjacency matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphcore import Graph

GROUP_RTOL = 1e-8


class SolverError(RuntimeError):
    pass


class NoSuchEigenvalue(ValueError):
    pass


@dataclass(frozen=True)
class EigenspaceBasis:
    lam: float
    basis: np.ndarray  # (n, l), orthonormal columns

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]
    groups: tuple[tuple[int, ...], ...]
    representatives: tuple[float, ...]
    sweeps: int = 0

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if len(self.eigenvalues) else 0.0

    def multiplicities(self) -> dict[float, int]:
        return {lam: len(idx) for lam, idx in zip(self.representatives, self.groups)}


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Circle-method schedule: ``n - 1`` (or ``n``) rounds of disjoint pairs
    that together cover every pair ``p < q`` exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def jacobi_eigh(a: np.ndarray, rtol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray, int]:
    """Cyclic Jacobi for a real symmetric matrix.

    Each sweep visits every off-diagonal pair once in round-robin order; the
    rotations within one round act on disjoint index pairs, so they commute
    and are applied together.  Sweeps stop once the off-diagonal Frobenius
    norm is below ``rtol`` times the Frobenius norm of the input.  Returns
    ascending eigenvalues, the accumulated rotations as eigenvectors, and the
    number of sweeps used.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, rtol=0, atol=1e-14):
        raise ValueError("jacobi_eigh needs a square symmetric matrix")
    v = np.eye(n)
    norm0 = np.linalg.norm(a)
    schedule = _round_robin(n)
    sweeps = 0
    while True:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= rtol * norm0:
            break
        if sweeps >= max_sweeps:
            raise SolverError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")
        sweeps += 1
        for p, q in schedule:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            h = a[q, q] - a[p, p]
            # t = tan of the rotation angle, smaller root; theta = inf gives t = 0
            with np.errstate(over="ignore", divide="ignore"):
                theta = 0.5 * h / apq
                t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ap = a[:, p].copy()
            aq = a[:, q].copy()
            a[:, p] = ap * c - aq * s
            a[:, q] = ap * s + aq * c
            ap = a[p, :].copy()
            aq = a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp = v[:, p].copy()
            vq = v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order], sweeps


def _mgs(cols: np.ndarray) -> np.ndarray:
    q = np.array(cols, dtype=float, copy=True)
    for k in range(q.shape[1]):
        for j in range(k):
            q[:, k] -= (q[:, j] @ q[:, k]) * q[:, j]
        q[:, k] /= np.linalg.norm(q[:, k])
    return q


def group_eigenvalues(w: np.ndarray, rtol: float = GROUP_RTOL) -> list[list[int]]:
    """Chain consecutive sorted eigenvalues closer than ``rtol * max(1, rho)``."""
    if len(w) == 0:
        return []
    tol = rtol * max(1.0, float(np.max(np.abs(w))))
    groups = [[0]]
    for k in range(1, len(w)):
        if w[k] - w[k - 1] <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def eigendecompose(g: Graph, method: str = "jacobi") -> SpectralDecomposition:
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    a = g.adjacency_matrix()
    if method == "jacobi":
        w, v, sweeps = jacobi_eigh(a)
    elif method == "lapack":
        w, v = np.linalg.eigh(a)
        sweeps = 0
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    groups = group_eigenvalues(w)
    for idx in groups:
        if len(idx) > 1:
            v[:, idx] = _mgs(v[:, idx])
    reps = tuple(float(np.mean(w[idx])) for idx in groups)
    return SpectralDecomposition(w, v, tuple(tuple(i) for i in groups), reps, sweeps)


def min_eigenvalue(dec: SpectralDecomposition) -> float:
    return dec.representatives[0]


def eigenspace_basis(dec: SpectralDecomposition, lam: float) -> EigenspaceBasis:
    tol = GROUP_RTOL * max(1.0, dec.spectral_radius)
    for rep, idx in zip(dec.representatives, dec.groups):
        if abs(rep - lam) <= max(tol, 1e-9 * max(1.0, abs(lam))):
            return EigenspaceBasis(rep, dec.eigenvectors[:, list(idx)].copy())
    raise NoSuchEigenvalue(f"{lam} is not an eigenvalue (spectrum {dec.representatives})")
