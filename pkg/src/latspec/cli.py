"""``latspec`` command line.

Exit codes: 0 success, 1 formula/oracle disagreement (``check``), 2 usage,
I/O, parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Sequence

from . import ck
from . import expr as ex
from .codec import encode_report, loads_operator
from .config import AnalysisConfig
from .errors import DomainError, ExprSyntaxError, LatspecError
from .frechet import cluster_points, limsup_modulus
from .operator import CenterOperator, SpectralReport, analyze, is_compact
from .oracle import (
    OracleResult,
    cluster_oracle,
    compact_consistent,
    compact_tail_check,
    quotient_norm_oracle,
    write_history_csv,
)
from .spectra import ClosedDisc, Point, SampleCloud, Segment, SpectralSet
from .symbol import Finite, Generator

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2

# Gap allowed between a closed form and its oracle on exact symbols.
EXACT_CHECK_TOL = 1e-6


class UsageError(LatspecError):
    pass


def fmt_complex(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.12g}"
    if z.real == 0:
        return f"{z.imag:.12g}i"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def describe_set(s: SpectralSet, limit: int) -> list[str]:
    if s.is_empty:
        return ["(empty)"]
    lines = []
    for p in s.primitives[:limit]:
        match p:
            case Point(z):
                lines.append(f"point {fmt_complex(z)}")
            case Segment(a, b):
                lines.append(f"segment [{fmt_complex(a)}, {fmt_complex(b)}]")
            case ClosedDisc(c, r):
                lines.append(f"disc center {fmt_complex(c)} radius {r:.12g}")
            case SampleCloud():
                lines.append(f"cloud of {p.points.size} samples, resolution {p.resolution:.3g}")
    if len(s) > limit:
        lines.append(f"... {len(s) - limit} more primitives, sup-modulus {s.sup_modulus():.12g}")
    return lines


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def format_report(r: SpectralReport, cfg: AnalysisConfig) -> str:
    limit = cfg.spectrum_truncation
    out = [r.label or "operator"]
    out.append(f"  estimated                 : {_yes(r.estimated)} (tolerance {r.tolerance:g})")
    out.append(f"  norm ||T||                : {r.norm:.12g}")
    out.append(f"  essential norm ||T||_e    : {r.essential_norm:.12g}")
    out.append(f"  essential spectral radius : {r.essential_spectral_radius:.12g}")
    if r.atomic_clusters is not None:
        pts = ", ".join(fmt_complex(z) for z in r.atomic_clusters.points[:limit])
        if len(r.atomic_clusters.points) > limit:
            pts += f", ... ({len(r.atomic_clusters.points)} total)"
        out.append(f"  atomic cluster points     : {{{pts}}} ({r.atomic_clusters.method})")
        out.append(f"  limsup / liminf |lambda|  : {r.atomic_limsup:.12g} / {r.atomic_liminf:.12g}")
    out.append("  spectrum:")
    out.extend(f"    {line}" for line in describe_set(r.spectrum, limit))
    out.append("  essential spectrum:")
    out.extend(f"    {line}" for line in describe_set(r.essential_spectrum, limit))
    out.append(f"  compact                   : {_yes(r.compact)}")
    out.append(f"  essentially quasinilpotent: {_yes(r.essentially_quasinilpotent)}")
    out.append(f"  invertible                : {_yes(r.invertible)}")
    out.append(f"  compact + non-atomic split: {_yes(r.decomposable)}")
    for mu, ok in r.fredholm:
        out.append(f"  T - ({fmt_complex(mu)}) Fredholm: {_yes(ok)}")
    return "\n".join(out)


def _base_config() -> AnalysisConfig:
    env = os.environ.get("LATSPEC_TOL")
    if env is None:
        return AnalysisConfig()
    try:
        return AnalysisConfig(tolerance=float(env))
    except ValueError as err:
        raise UsageError(f"LATSPEC_TOL: {err}") from err


def _load(path: str, args: argparse.Namespace) -> tuple[CenterOperator, AnalysisConfig]:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from err
    base = _base_config().with_overrides(tolerance=args.tol, horizon=args.horizon)
    T, cfg = loads_operator(text, base)
    # Command-line flags win over the file's config block.
    return T, cfg.with_overrides(tolerance=args.tol, horizon=args.horizon)


def _parse_constant(text: str) -> complex:
    return ex.evaluate(ex.parse(text, None))


def _emit(report: SpectralReport, cfg: AnalysisConfig, output: str, extra: Sequence[str] = ()) -> None:
    if output == "json":
        print(json.dumps(encode_report(report), indent=2))
    else:
        print(format_report(report, cfg))
        for line in extra:
            print(line)


def cmd_analyze(args: argparse.Namespace) -> int:
    T, cfg = _load(args.path, args)
    mus = tuple(_parse_constant(m) for m in args.mu)
    _emit(analyze(T, cfg, mus), cfg, args.output)
    return EXIT_OK


def _hausdorff(xs: Sequence[complex], ys: Sequence[complex]) -> float:
    if not xs and not ys:
        return 0.0
    if not xs or not ys:
        return math.inf
    d1 = max(min(abs(x - y) for y in ys) for x in xs)
    d2 = max(min(abs(x - y) for x in xs) for y in ys)
    return max(d1, d2)


def run_check(T: CenterOperator, cfg: AnalysisConfig, budget: int = 64, eps: float | None = None,
              n_samples: int = 10_000) -> tuple[list[dict], dict[str, OracleResult]]:
    """Compare closed-form atomic quantities with the brute-force oracles.

    Exact symbols are sampled at ``1..n_samples``.  Generators are compared on
    their tail window, which is where the closed-form estimate looks too.
    """
    sym = T.atomic
    if sym is None:
        raise UsageError("check needs an atomic part")
    sampled = isinstance(sym, Generator)
    tol = cfg.tol(True) if sampled else EXACT_CHECK_TOL
    eps = eps if eps is not None else (cfg.tol(True) if sampled else 1e-6)
    start = sym.tail_start(cfg.cluster_window)
    samples = sym.samples[start:] if sampled else sym.head(n_samples)

    rows: list[dict] = []
    histories: dict[str, OracleResult] = {}

    def row(name, formula, oracle, gap, limit, ok=None, note=""):
        ok = gap <= limit if ok is None else ok
        rows.append(dict(quantity=name, formula=formula, oracle=oracle, gap=gap,
                         tolerance=limit, ok=bool(ok), note=note))

    limsup = limsup_modulus(sym, cfg)
    if isinstance(sym, Finite):
        rows.append(dict(quantity="quotient norm", formula=str(limsup), oracle="n/a", gap=0.0,
                         tolerance=tol, ok=True, note="finite atom set"))
    elif budget >= len(samples):
        raise UsageError(f"budget {budget} needs more than {len(samples)} samples")
    else:
        res = quotient_norm_oracle(samples, budget)
        histories["quotient_norm"] = res
        row("quotient norm", f"{limsup:.12g}", f"{res.value:.12g}", abs(limsup - res.value), tol)

    clusters = cluster_points(sym, cfg)
    if clusters.points:
        top = clusters.max_modulus()
        row("largest cluster modulus", f"{limsup:.12g}", f"{top:.12g}", abs(top - limsup),
            clusters.tolerance if sampled else 1e-12)
    if isinstance(sym, Finite):
        rows.append(dict(quantity="cluster set", formula="{}", oracle="n/a", gap=0.0,
                         tolerance=eps, ok=True, note="finite atom set"))
    elif len(samples) >= 2 * cfg.cluster_checkpoints:
        # Generator samples are already cut to the tail window.
        found = cluster_oracle(samples, eps, cfg.cluster_checkpoints,
                               1.0 if sampled else cfg.cluster_window)
        gap = _hausdorff(list(clusters.points), found)
        # Both sides carry their own eps-slack for sampled symbols.
        limit = eps + clusters.tolerance
        row("cluster set", f"{len(clusters.points)} point(s)", f"{len(found)} point(s)", gap, limit)

    Ns = sorted({0, start // 4, start // 2, start})
    bounds = compact_tail_check(sym, Ns)
    histories["tail_bound"] = OracleResult(bounds[-1][1], Ns[-1], True, bounds)
    compact_formula = is_compact(CenterOperator(atomic=sym), cfg)
    compact_oracle = compact_consistent(bounds, tol)
    row("compactness", _yes(compact_formula), f"{_yes(compact_oracle)} (bound {bounds[-1][1]:.3g})",
        0.0, 0.0, ok=compact_formula == compact_oracle)
    return rows, histories


def cmd_check(args: argparse.Namespace) -> int:
    T, cfg = _load(args.path, args)
    rows, histories = run_check(T, cfg, args.budget, args.eps, args.samples)
    header = f"{'quantity':<24} {'formula':>20} {'oracle':>28} {'gap':>10} {'tol':>8}  status"
    print(T.label or "operator")
    print(header)
    for r in rows:
        status = "ok" if r["ok"] else "FAIL"
        if r["note"]:
            status += f" ({r['note']})"
        print(f"{r['quantity']:<24} {r['formula']:>20} {r['oracle']:>28} "
              f"{r['gap']:>10.3g} {r['tolerance']:>8.1g}  {status}")
    if args.csv:
        write_history_csv(histories, args.csv)
    failed = [r["quantity"] for r in rows if not r["ok"]]
    if failed:
        print(f"disagreement: {', '.join(failed)}", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_example_ck(args: argparse.Namespace) -> int:
    cfg = _base_config().with_overrides(tolerance=args.tol)
    example = ck.build(args.p, args.n_max, args.samples_per_interval)
    report = analyze(example.operator, cfg)
    nonatomic_norm = example.operator.nonatomic.sup_modulus()
    extra = [
        "  sigma_e(T_p) = {p(x) : x in (union of I_n) u {0}}, i.e. the non-atomic spectrum,",
        f"    which already contains the atomic cluster point p(0) = {fmt_complex(example.operator.atomic.limit)}",
        f"  ||T_p||_e = max |p| over (union of I_n) u {{0}} = {nonatomic_norm:.12g}",
        f"  intervals sampled: n = 1..{example.n_max}, {example.samples_per_interval} points each; "
        f"sampling slack ~ {example.sampling_slack:.3g}",
    ]
    _emit(report, cfg, args.output, extra)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("path", help="operator spec (JSON)")
        p.add_argument("--tol", type=float, help="tolerance override")
        p.add_argument("--horizon", type=int, help="default generator horizon")

    p = sub.add_parser("analyze", help="print the spectral report of an operator")
    common(p)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--mu", action="append", default=[], metavar="EXPR",
                   help="query Fredholmness of T - mu (repeatable, e.g. '1+2*i')")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="compare closed forms against brute-force oracles")
    common(p)
    p.add_argument("--budget", type=int, default=64, help="removal budget k_max")
    p.add_argument("--eps", type=float, help="cluster detection radius")
    p.add_argument("--samples", type=int, default=10_000, help="samples for exact symbols")
    p.add_argument("--csv", metavar="PATH", help="write oracle histories as CSV")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("example", help="built-in examples")
    ex_sub = p.add_subparsers(dest="example", required=True)
    p = ex_sub.add_parser("ck", help="multiplication by p on C(K)")
    p.add_argument("--p", default="x", metavar="EXPR", help="function of x (default: x)")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--samples-per-interval", type=int, default=64)
    p.add_argument("--tol", type=float, help="tolerance override")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_example_ck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        if err.text:
            print(f"  {err.text}\n  {' ' * (err.offset - 1)}^", file=sys.stderr)
        return EXIT_USAGE
    except (LatspecError, DomainError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
