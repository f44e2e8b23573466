"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 invariant or certification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import BoundReport, ReportConfig, UnsupportedGraph, build_report, hoffman_upper, report_violations
from .graphcore import (Graph, GeneratorError, GraphFormatError, analyze_structure, cubic_corpus,
                        encode_graph6, parse_graph6, parse_named, read_graph)
from .randev import estimate_iplus_probability, local_extrema, neighbor_covariances
from .sphere import q3_closed_form, qd_monte_carlo
from .spectra import eigendecompose, eigenspace_basis
from .streams import RandomStream
from .treewave import OutOfSpectrum, estimate_tree_density, spectral_edge

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 20_000
    threads: int = 1
    tolerance: float = 4.0  # standard errors
    fmt: str = "json"

    def stream(self) -> RandomStream:
        return RandomStream(seed=self.seed, threads=self.threads)


class InputError(Exception):
    pass


def _config(args, default_samples: int) -> RunConfig:
    samples = args.samples if args.samples is not None else default_samples
    if samples < 0 or args.threads < 1 or not 0 <= args.seed < 2**64:
        raise InputError("samples must be >= 0, threads >= 1, seed a 64-bit unsigned integer")
    return RunConfig(seed=args.seed, samples=samples, threads=args.threads,
                     tolerance=args.tolerance, fmt=args.format)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _load_graph(args) -> Graph:
    if args.named:
        try:
            return parse_named(args.named)
        except GeneratorError as exc:
            raise InputError(str(exc)) from None
    if not args.input:
        raise InputError("give a graph file or --named NAME")
    try:
        return read_graph(args.input)
    except (OSError, GraphFormatError) as exc:
        raise InputError(str(exc)) from None


def _flatten(prefix: str, obj, rows: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, rows)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            key = v.get("name", str(i)) if isinstance(v, dict) else str(i)
            _flatten(f"{prefix}.{key}", v, rows)
    else:
        rows.append((prefix, obj))


def _as_csv(obj) -> str:
    rows: list = []
    _flatten("", obj, rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["field", "value"])
    w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------
# analyze

def analyze_graph(g: Graph, cfg: RunConfig) -> dict:
    report = build_report(g, ReportConfig())
    out = report.to_dict()
    if cfg.samples > 0 and report.symmetry.vertex_transitive:
        est = estimate_iplus_probability(g, report.lambda_min, cfg.samples, cfg.stream(), transitive=True)
        out["iplus"] = {"lambda": report.lambda_min, "samples": cfg.samples,
                        "estimate": est.estimate, "stderr": est.stderr}
    return out


def cmd_analyze(args) -> int:
    cfg = _config(args, default_samples=0)
    g = _load_graph(args)
    try:
        out = analyze_graph(g, cfg)
    except UnsupportedGraph as exc:
        raise InputError(str(exc)) from None
    _emit(_as_csv(out) if cfg.fmt == "csv" else _dump(out), args.out)
    bad = report_violations(out)
    for msg in bad:
        print(f"sandwich violation: {msg}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


# --------------------------------------------------------------------------
# certify

def certify_graph(g: Graph, cfg: RunConfig) -> tuple[BoundReport, list[str]]:
    """Sandwich check plus the random-eigenvector invariants on one graph."""
    report = build_report(g)
    failures = report_violations(report)
    st = analyze_structure(g)
    sym = report.symmetry
    if st.d == 3 and st.is_connected and sym.vertex_transitive and not report.k4_exception:
        if report.lambda_min > -2.0 + 1e-8:
            failures.append(f"lambda_min {report.lambda_min} > -2 on a cubic transitive graph other than K4")
    if not sym.vertex_transitive or cfg.samples == 0:
        return report, failures

    dec = eigendecompose(g)
    basis = eigenspace_basis(dec, report.lambda_min)
    stream = cfg.stream().substream(report.graph)
    gen = stream.generator(0)
    n, l = basis.basis.shape
    adj = g.adjacency_matrix()
    for _ in range(16):
        x = math.sqrt(n / l) * basis.basis @ gen.standard_normal(l)
        ip, im = local_extrema(g, x)
        if ip & im or any(g.has_edge(u, v) for s in (ip, im) for u in s for v in s):
            failures.append("I+ / I- not disjoint independent sets")
            break
        if np.linalg.norm(adj @ x - basis.lam * x) > 1e-6 * np.linalg.norm(x):
            failures.append("eigenvector residual too large")
            break

    cov = neighbor_covariances(basis, g, 0)
    if np.linalg.eigvalsh(cov.c)[0] < -1e-8:
        failures.append("neighbour covariance not PSD")
    target = (basis.lam ** 2 - st.d) / 2.0
    if abs(cov.pair_sum() - target) > 1e-6:
        failures.append(f"neighbour covariance sum {cov.pair_sum()} != {target}")

    est = estimate_iplus_probability(g, basis.lam, cfg.samples, stream, basis=basis, transitive=True)
    se_pm = math.hypot(est.stderr, est.minus_stderr)
    if abs(est.estimate - est.minus_estimate) > cfg.tolerance * se_pm + 1e-12:
        failures.append(f"|I+| and |I-| frequencies differ: {est.estimate} vs {est.minus_estimate}")
    if sym.cherry_transitive:
        if st.d == 3:
            qd, qd_se = q3_closed_form(basis.lam), 0.0
        else:
            qd, qd_se = qd_monte_carlo(st.d, basis.lam, cfg.samples, stream.substream("qd"))
        if abs(est.estimate - qd) > cfg.tolerance * math.hypot(est.stderr, qd_se) + 1e-12:
            failures.append(f"P(v in I+) = {est.estimate} +- {est.stderr} disagrees with q_d = {qd}")
    return report, failures


def _check_stored_report(data: dict) -> list[str]:
    failures = report_violations(data)
    if data.get("graph6"):
        fresh = build_report(parse_graph6(data["graph6"], data.get("graph", ""))).to_dict()
        for key in ("hoffman", "lambda_min"):
            if abs(fresh[key] - data[key]) > 1e-9:
                failures.append(f"stored {key} {data[key]} != recomputed {fresh[key]}")
        if fresh["exact_ratio"] != data["exact_ratio"]:
            failures.append("stored exact ratio does not match recomputation")
        stored = {b["name"]: b for b in data["bounds"]}
        for b in fresh["bounds"]:
            s = stored.get(b["name"])
            if s is None or s["verified"] != b["verified"] or (
                    (s["value"] is None) != (b["value"] is None)
                    or (b["value"] is not None and abs(s["value"] - b["value"]) > 1e-9)):
                failures.append(f"stored bound {b['name']} does not match recomputation")
    return failures


def _read_corpus(directory: Path) -> list[tuple[str, object]]:
    """(label, Graph | stored report dict) for every graph6 line and JSON report."""
    items: list[tuple[str, object]] = []
    for path in sorted(directory.iterdir()):
        if path.suffix == ".json":
            items.append((path.stem, json.loads(path.read_text())))
        elif path.suffix in (".g6", ".graph6", ".txt"):
            lines = [ln.strip() for ln in path.read_text().splitlines() if ln.strip()]
            for i, line in enumerate(lines):
                label = path.stem if len(lines) == 1 else f"{path.stem}#{i}"
                items.append((label, parse_graph6(line, label)))
    return items


def run_certify(items, cfg: RunConfig) -> list[dict]:
    rows = []
    for label, item in items:
        if isinstance(item, Graph):
            try:
                report, failures = certify_graph(item, cfg)
            except UnsupportedGraph as exc:
                rows.append({"graph": label, "kind": "graph", "status": "fail", "failures": [str(exc)]})
                continue
            verified = [b.value for b in report.bounds if b.verified and b.value is not None]
            rows.append({
                "graph": label, "kind": "graph", "n": report.n, "lambda_min": report.lambda_min,
                "hoffman": report.hoffman,
                "exact": float(report.exact_ratio) if report.exact_ratio is not None else None,
                "best_lower": max(verified) if verified else None,
                "status": "fail" if failures else "pass", "failures": failures,
            })
        else:
            failures = _check_stored_report(item)
            rows.append({"graph": label, "kind": "report", "status": "fail" if failures else "pass",
                         "failures": failures})
    return rows


def _format_table(rows: list[dict]) -> str:
    def f(x):
        return "-" if x is None else f"{x:.6f}"

    lines = [f"{'graph':<22} {'n':>4} {'lambda_min':>11} {'best_lower':>11} {'exact':>9} {'hoffman':>9}  status"]
    for r in rows:
        lines.append(f"{r['graph']:<22} {r.get('n', '-')!s:>4} {f(r.get('lambda_min')):>11} "
                     f"{f(r.get('best_lower')):>11} {f(r.get('exact')):>9} {f(r.get('hoffman')):>9}  {r['status']}")
        lines.extend(f"    ! {msg}" for msg in r["failures"])
    n_fail = sum(r["status"] == "fail" for r in rows)
    lines.append(f"{len(rows) - n_fail}/{len(rows)} passed")
    return "\n".join(lines) + "\n"


def cmd_certify(args) -> int:
    cfg = _config(args, default_samples=20_000)
    if args.builtin:
        items = [(g.name, g) for g in cubic_corpus()]
    else:
        if not args.corpus_dir:
            raise InputError("give a corpus directory or --builtin")
        directory = Path(args.corpus_dir)
        try:
            items = _read_corpus(directory)
        except (OSError, GraphFormatError, json.JSONDecodeError) as exc:
            raise InputError(str(exc)) from None
        if not items:
            raise InputError(f"no graphs in {directory}")
    rows = run_certify(items, cfg)
    if cfg.fmt == "json":
        text = _dump({"rows": rows, "passed": sum(r["status"] == "pass" for r in rows), "total": len(rows)})
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph", "kind", "n", "lambda_min", "best_lower", "exact", "hoffman", "status", "failures"])
        for r in rows:
            w.writerow([r["graph"], r["kind"], r.get("n"), r.get("lambda_min"), r.get("best_lower"),
                        r.get("exact"), r.get("hoffman"), r["status"], "; ".join(r["failures"])])
        text = buf.getvalue()
    else:
        text = _format_table(rows)
    _emit(text, args.out)
    return EXIT_FAIL if any(r["status"] == "fail" for r in rows) else EXIT_OK


def cmd_export_corpus(args) -> int:
    directory = Path(args.directory)
    directory.mkdir(parents=True, exist_ok=True)
    for g in cubic_corpus():
        (directory / f"{g.name}.g6").write_text(encode_graph6(g) + "\n")
    return EXIT_OK


# --------------------------------------------------------------------------
# figure 1, tree, Monte Carlo

def figure1_rows(step: float = 0.005) -> list[tuple[float, float, float]]:
    n = int(round(2.0 / step))
    rows = []
    for i in range(n + 1):
        lam = round(-3.0 + i * step, 10)
        rows.append((lam, hoffman_upper(3, lam), q3_closed_form(lam)))
    return rows


def cmd_figure1(args) -> int:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "hoffman_upper", "q3_lower"])
    for lam, h, q in figure1_rows():
        w.writerow([f"{lam:.3f}", repr(h), repr(q)])
    try:
        _emit(buf.getvalue(), args.out)
    except OSError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def cmd_tree(args) -> int:
    cfg = _config(args, default_samples=1_000_000)
    if args.lambda_min:
        lam = -spectral_edge(args.d)
    elif args.lam is not None:
        lam = args.lam
    else:
        raise InputError("give -l/--lambda or --lambda-min")
    try:
        res = estimate_tree_density(args.d, lam, args.R, cfg.samples, cfg.stream())
    except (OutOfSpectrum, ValueError) as exc:
        raise InputError(str(exc)) from None
    out = {"d": args.d, "lambda": lam, "R": args.R, "samples": cfg.samples, "seed": cfg.seed,
           "estimate": res.estimate, "stderr": res.stderr, "ball_size": res.ball_size, "jitter": res.jitter}
    if args.d == 3:
        out["q3_closed_form"] = q3_closed_form(lam)
    _emit(_as_csv(out) if cfg.fmt == "csv" else _dump(out), args.out)
    return EXIT_OK


def cmd_qd(args) -> int:
    cfg = _config(args, default_samples=1_000_000)
    try:
        est, se = qd_monte_carlo(args.d, args.lam, cfg.samples, cfg.stream())
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = {"d": args.d, "lambda": args.lam, "samples": cfg.samples, "seed": cfg.seed,
           "estimate": est, "stderr": se}
    if args.d == 3:
        out["q3_closed_form"] = q3_closed_form(args.lam)
    _emit(_as_csv(out) if cfg.fmt == "csv" else _dump(out), args.out)
    return EXIT_OK


def cmd_iplus(args) -> int:
    cfg = _config(args, default_samples=100_000)
    g = _load_graph(args)
    dec = eigendecompose(g)
    lam = args.lam if args.lam is not None else dec.representatives[0]
    try:
        basis = eigenspace_basis(dec, lam)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    est = estimate_iplus_probability(g, lam, cfg.samples, cfg.stream(), basis=basis)
    out = {"graph": g.name, "lambda": basis.lam, "multiplicity": basis.dim, "samples": cfg.samples,
           "seed": cfg.seed, "estimate": est.estimate, "stderr": est.stderr,
           "minus_estimate": est.minus_estimate, "vertex_transitive": est.vertex_transitive,
           "per_vertex": [float(p) for p in est.per_vertex]}
    _emit(_as_csv(out) if cfg.fmt == "csv" else _dump(out), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--tolerance", type=float, default=4.0, help="agreement tolerance in standard errors")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", default=None, help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eigenind", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="bound report for one regular graph")
    p.add_argument("input", nargs="?", help="graph6 or edge-list file")
    p.add_argument("--named", help="generator name, e.g. petersen, k4, 'prism 3'")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("certify", help="certify bounds on a corpus of graph6 files")
    p.add_argument("corpus_dir", nargs="?")
    p.add_argument("--builtin", action="store_true", help="use the built-in cubic corpus")
    _common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("export-corpus", help="write the built-in cubic corpus as graph6 files")
    p.add_argument("directory")
    p.set_defaults(func=cmd_export_corpus)

    p = sub.add_parser("figure1", help="Hoffman bound and q3 lower bound on [-3, -1] as CSV")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("tree", help="I+ density of the Gaussian wave function on T_d")
    p.add_argument("-d", type=int, default=3)
    p.add_argument("-l", "--lambda", dest="lam", type=float, default=None)
    p.add_argument("--lambda-min", action="store_true", help="use -2 sqrt(d-1)")
    p.add_argument("-R", type=int, default=6)
    _common(p)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("qd", help="Monte Carlo q_d(lambda)")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-l", "--lambda", dest="lam", type=float, required=True)
    _common(p)
    p.set_defaults(func=cmd_qd)

    p = sub.add_parser("iplus", help="Monte Carlo P(v in I+) for a random eigenvector")
    p.add_argument("input", nargs="?")
    p.add_argument("--named")
    p.add_argument("-l", "--lambda", dest="lam", type=float, default=None, help="default: lambda_min")
    _common(p)
    p.set_defaults(func=cmd_iplus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
