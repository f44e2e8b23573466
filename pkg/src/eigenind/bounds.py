"""Upper and lower bounds on the independence ratio of regular graphs, the
exact ratio by branch and bound, numerical checks of the two technical
lemmas, and bound reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graphcore import Graph, analyze_structure, encode_graph6
from .sphere import DomainError, q3_closed_form, sphere_volume_ratio
from .spectra import eigendecompose, min_eigenvalue
from .symmetry import NODE_BUDGET, SymmetryReport, automorphism_group

SANDWICH_SLACK = 1e-9
EXACT_MAX_N = 64


class UnsupportedGraph(ValueError):
    pass


class HypothesisViolation(ValueError):
    pass


# --------------------------------------------------------------------------
# scalar bounds

def hoffman_upper(d: int, lambda_min: float) -> float:
    if lambda_min >= d:
        raise DomainError("Hoffman bound is degenerate when lambda_min = d")
    if lambda_min < -d - 1e-9:
        raise DomainError(f"lambda_min {lambda_min} below -d")
    return -lambda_min / (d - lambda_min)


def _sqrt_plus(x: float) -> float:
    # lambda_min + d can be -1e-15 for bipartite graphs
    return math.sqrt(max(x, 0.0))


def crude_lower_raw(d: int, lambda_min: float) -> float:
    return 0.5 - _sqrt_plus(d * (lambda_min + d)) / 3.0


def crude_lower(d: int, lambda_min: float) -> float:
    """Vertex-transitive bound ``1/2 - sqrt(d (lambda_min + d)) / 3``, clamped at 0."""
    return max(crude_lower_raw(d, lambda_min), 0.0)


def arc_lower_raw(d: int, lambda_min: float) -> tuple[float, float | None]:
    general = 0.5 - _sqrt_plus(lambda_min + d) / 3.0
    q4 = 0.5 - _sqrt_plus(lambda_min + 4) / 4.0 if d == 4 else None
    return general, q4


def arc_lower(d: int, lambda_min: float) -> tuple[float, float | None]:
    """Arc-transitive bounds: the general ``1/2 - sqrt(lambda_min + d) / 3`` and,
    for ``d == 4`` only, the sharper ``1/2 - sqrt(lambda_min + 4) / 4``."""
    general, q4 = arc_lower_raw(d, lambda_min)
    return max(general, 0.0), (None if q4 is None else max(q4, 0.0))


def q3_lower(lambda_min: float, k4_exception: bool = False) -> float:
    if lambda_min <= -2.0 + 1e-9 or (k4_exception and abs(lambda_min + 1.0) < 1e-9):
        return q3_closed_form(max(lambda_min, -3.0))
    raise HypothesisViolation(
        f"lambda_min = {lambda_min} in (-2, -1]: impossible for a cubic vertex-transitive graph other than K4")


def odd_girth_lower(lambda_min: float, g_odd: int | None, k4_exception: bool = False) -> float:
    """``(5g-3)/(16g) + (g+1)/(2g) * (3/(4 pi)) * asin((lambda^2-3)/6)``;
    ``g_odd=None`` (bipartite) gives the ``g -> infinity`` limit."""
    if not (lambda_min <= -2.0 + 1e-9 or (k4_exception and abs(lambda_min + 1.0) < 1e-9)):
        raise HypothesisViolation(f"odd-girth bound needs lambda_min <= -2, got {lambda_min}")
    arg = (lambda_min * lambda_min - 3.0) / 6.0
    if abs(arg) > 1.0 + 1e-12:
        raise DomainError(f"arcsin argument {arg} out of range")
    term = 3.0 / (4.0 * math.pi) * math.asin(min(max(arg, -1.0), 1.0))
    if g_odd is None:
        return 5.0 / 16.0 + term / 2.0
    if g_odd < 3 or g_odd % 2 == 0:
        raise DomainError(f"odd girth must be odd and >= 3, got {g_odd}")
    return (5 * g_odd - 3) / (16 * g_odd) + (g_odd + 1) / (2 * g_odd) * term


# --------------------------------------------------------------------------
# exact independence number

def _clique_cover_order(rows: tuple[int, ...], cand: int) -> tuple[list[int], list[int]]:
    """Greedy clique cover of ``cand``; returns vertices in cover order and,
    for each, the number of cliques used so far (a bound on alpha of the prefix)."""
    order, bounds = [], []
    k = 0
    while cand:
        k += 1
        q = cand
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= rows[v]
            q &= ~low
            cand &= ~low
            order.append(v)
            bounds.append(k)
    return order, bounds


def independence_number(g: Graph) -> tuple[int, list[int]]:
    """Maximum independent set by bitset branch and bound with greedy clique
    cover bounds (the complement-graph analogue of coloring-based max clique)."""
    rows = g.rows
    best: list[int] = []

    def expand(chosen: list[int], cand: int):
        nonlocal best
        order, bounds = _clique_cover_order(rows, cand)
        for i in range(len(order) - 1, -1, -1):
            if len(chosen) + bounds[i] <= len(best):
                return
            v = order[i]
            chosen.append(v)
            rest = cand & ~rows[v] & ~(1 << v)
            if rest:
                expand(chosen, rest)
            elif len(chosen) > len(best):
                best = list(chosen)
            chosen.pop()
            cand &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return len(best), sorted(best)


def exact_independence_ratio(g: Graph, max_n: int = EXACT_MAX_N) -> Fraction | None:
    """alpha(G)/n as an exact fraction; ``None`` ("not computed") above ``max_n``."""
    if g.n > max_n or g.n == 0:
        return None
    alpha, _ = independence_number(g)
    return Fraction(alpha, g.n)


# --------------------------------------------------------------------------
# lemma verifiers

@dataclass(frozen=True)
class TangentLemmaReport:
    passed: bool
    min_margin: float
    argmin_lambda: float
    argmin_t: float
    n_lambda: int
    n_t: int


def _tangent_parts(lam):
    a = 0.5 - lam + lam * lam / 2.0
    b = 1.0 - lam
    c = a + b - 1.0
    return a, b, c


def tangent_f(lam, t):
    a, b, c = _tangent_parts(lam)
    return np.arcsin(np.clip((a + b * t) / (c + t), -1.0, 1.0))


def tangent_fprime(lam, t):
    a, b, c = _tangent_parts(lam)
    with np.errstate(divide="ignore"):
        return (b * c - a) / ((c + t) * np.sqrt(np.maximum((c + t) ** 2 - (a + b * t) ** 2, 0.0)))


def tangent_margin(lam, t):
    """``f(t) - [f(t0) + f'(t0)(t - t0)]`` with ``t0 = (lam^2 - 3)/6``.

    At ``lam = -3`` the tangent point is ``t0 = 1`` where ``f'`` blows up; the
    vertical tangent gives margin ``+inf`` left of ``t0`` and ``0`` at ``t0``.
    """
    lam = np.asarray(lam, dtype=float)
    t = np.asarray(t, dtype=float)
    t0 = (lam * lam - 3.0) / 6.0
    dt = t - t0
    with np.errstate(invalid="ignore"):
        rise = np.where(dt == 0.0, 0.0, tangent_fprime(lam, t0) * dt)
    return tangent_f(lam, t) - tangent_f(lam, t0) - rise


def verify_tangent_lemma(lambda_grid: int = 1000, t_grid: int = 1000, tol: float = 1e-12) -> TangentLemmaReport:
    if lambda_grid < 100 or t_grid < 100:
        raise ValueError("grids need at least 100 points each")
    lam = np.linspace(-3.0, -2.0, lambda_grid)[:, None]
    t = np.linspace(-0.5, 1.0, t_grid)[None, :]
    margin = tangent_margin(lam, t)
    i, j = np.unravel_index(np.argmin(margin), margin.shape)
    m = float(margin[i, j])
    return TangentLemmaReport(m >= -tol, m, float(lam[i, 0]), float(t[0, j]), lambda_grid, t_grid)


@dataclass(frozen=True)
class VolRatioReport:
    passed: bool
    rows: tuple[tuple[int, float, float], ...]  # (d, ratio, sqrt(d / 2 pi))


def verify_vol_ratio(d_max: int = 50) -> VolRatioReport:
    if d_max < 3:
        raise ValueError("d_max must be at least 3")
    rows = tuple((d, sphere_volume_ratio(d), math.sqrt(d / (2.0 * math.pi))) for d in range(3, d_max + 1))
    return VolRatioReport(all(r < s for _, r, s in rows), rows)


# --------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class LowerBound:
    name: str
    value: float | None
    raw: float | None
    verified: bool
    note: str = ""

    @property
    def vacuous(self) -> bool:
        return self.raw is not None and self.raw <= 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "raw": self.raw,
                "verified": self.verified, "vacuous": self.vacuous, "note": self.note}


@dataclass(frozen=True)
class ReportConfig:
    exact_max_n: int = EXACT_MAX_N
    symmetry_budget: int = NODE_BUDGET
    eigensolver: str = "jacobi"


@dataclass(frozen=True)
class BoundReport:
    graph: str
    n: int
    d: int
    lambda_min: float
    hoffman: float
    bounds: tuple[LowerBound, ...]
    exact_ratio: Fraction | None
    alpha: int | None
    symmetry: SymmetryReport
    odd_girth: int | None
    connected: bool
    graph6: str | None = None
    k4_exception: bool = False
    notes: tuple[str, ...] = field(default=())

    def bound(self, name: str) -> LowerBound:
        return next(b for b in self.bounds if b.name == name)

    def to_dict(self) -> dict:
        exact = None
        if self.exact_ratio is not None:
            exact = {"alpha": self.alpha, "n": self.n, "value": float(self.exact_ratio)}
        return {
            "graph": self.graph,
            "graph6": self.graph6,
            "n": self.n,
            "d": self.d,
            "lambda_min": self.lambda_min,
            "hoffman": self.hoffman,
            "bounds": [b.to_dict() for b in self.bounds],
            "exact_ratio": exact if exact is not None else "not computed",
            "odd_girth": self.odd_girth,
            "connected": self.connected,
            "k4_exception": self.k4_exception,
            "symmetry": self.symmetry.to_dict(),
            "notes": list(self.notes),
        }


def sandwich_violations(hoffman: float, bounds, exact: float | None, slack: float = SANDWICH_SLACK) -> list[str]:
    """Every verified lower bound <= exact ratio <= Hoffman bound."""
    out = []
    if exact is None:
        return out
    if exact > hoffman + slack:
        out.append(f"exact ratio {exact} exceeds Hoffman bound {hoffman}")
    for b in bounds:
        if b["verified"] and b["value"] is not None and b["value"] > exact + slack:
            out.append(f"{b['name']} bound {b['value']} exceeds exact ratio {exact}")
    return out


def report_violations(report: BoundReport | dict) -> list[str]:
    r = report.to_dict() if isinstance(report, BoundReport) else report
    exact = r.get("exact_ratio")
    exact_val = exact["value"] if isinstance(exact, dict) else None
    return sandwich_violations(r["hoffman"], r["bounds"], exact_val)


def build_report(g: Graph, config: ReportConfig = ReportConfig()) -> BoundReport:
    """Evaluate every bound; each lower bound is marked verified only when the
    symmetry and eigenvalue hypotheses of its theorem hold for ``g``."""
    st = analyze_structure(g)
    if not st.is_regular:
        raise UnsupportedGraph("unsupported: non-regular graph")
    d = st.d
    if d < 1:
        raise UnsupportedGraph("unsupported: graph has no edges")
    dec = eigendecompose(g, config.eigensolver)
    lam = min_eigenvalue(dec)
    sym = automorphism_group(g, config.symmetry_budget) if g.n <= 256 else SymmetryReport(None, (), None, None, None)
    vt = bool(sym.vertex_transitive)
    at = bool(sym.arc_transitive)
    notes = []
    if not sym.known:
        notes.append("symmetry search budget exceeded; transitivity unknown")

    bounds = []
    raw = crude_lower_raw(d, lam)
    bounds.append(LowerBound("crude", max(raw, 0.0), raw, vt,
                             "" if vt else "needs vertex-transitivity"))
    gen_raw, q4_raw = arc_lower_raw(d, lam)
    bounds.append(LowerBound("arc", max(gen_raw, 0.0), gen_raw, at,
                             "" if at else "needs arc-transitivity"))
    if q4_raw is None:
        bounds.append(LowerBound("q4", None, None, False, "needs d = 4"))
    else:
        bounds.append(LowerBound("q4", max(q4_raw, 0.0), q4_raw, at,
                                 "" if at else "needs arc-transitivity"))

    k4 = d == 3 and g.n == 4 and abs(lam + 1.0) < 1e-9
    if d != 3:
        bounds.append(LowerBound("q3", None, None, False, "needs d = 3"))
        bounds.append(LowerBound("odd_girth", None, None, False, "needs d = 3"))
    elif lam > -2.0 + 1e-9 and not k4:
        note = "lambda_min in (-2,-1): hypothesis violation" if vt else "needs lambda_min <= -2"
        if vt:
            notes.append("cubic vertex-transitive graph other than K4 with lambda_min > -2")
        bounds.append(LowerBound("q3", None, None, False, note))
        bounds.append(LowerBound("odd_girth", None, None, False, note))
    else:
        note = "K4 exception" if k4 else ""
        v = q3_lower(lam, k4_exception=k4)
        bounds.append(LowerBound("q3", v, v, vt, note if vt else "needs vertex-transitivity"))
        v = odd_girth_lower(lam, st.odd_girth, k4_exception=k4)
        bounds.append(LowerBound("odd_girth", v, v, vt, note if vt else "needs vertex-transitivity"))

    exact = exact_independence_ratio(g, config.exact_max_n)
    alpha = exact.numerator * (g.n // exact.denominator) if exact is not None else None
    return BoundReport(
        graph=g.name or "graph",
        n=g.n,
        d=d,
        lambda_min=lam,
        hoffman=hoffman_upper(d, lam),
        bounds=tuple(bounds),
        exact_ratio=exact,
        alpha=alpha,
        symmetry=sym,
        odd_girth=st.odd_girth,
        connected=st.is_connected,
        graph6=encode_graph6(g) if g.n <= 62 else None,
        k4_exception=k4,
        notes=tuple(notes),
    )
