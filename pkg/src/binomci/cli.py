"""Command-line front end.

Subcommands: ``interval`` computes one interval and prints it, ``coverage``
sweeps exact non-coverage and expected-length curves to CSV/JSON/SVG,
``simulate`` runs a long-run repetition experiment against a chosen auxiliary
source, and ``compare`` writes side-by-side curves plus a summary of
domination verdicts, refinement witnesses, and statistic cardinalities.

Runs are reproducible: the same flags and seeds produce byte-identical
output files.  The environment variable BINOMCI_OUTDIR sets the default
directory for relative output paths.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .coverage import (
    coverage_curve,
    default_theta_grid,
    domination_report,
    refinement_check,
)
from .intervals import (
    cp_interval,
    discrete_aux_interval,
    stevens_generalized,
    stevens_interval,
)
from .korn import korn_interval
from .numerics import BracketError
from .output import (
    compare_csv,
    coverage_csv,
    coverage_json,
    simulation_csv,
    simulation_json,
)
from .simulate import longrun_simulate
from .splitsample import split_design, split_sample_interval, thetahat_support
from .sources import source_from_spec
from .svgchart import line_chart

_SIG = ".12g"  # print endpoints to 12 significant digits


def _fmt(x) -> str:
    return format(float(x), _SIG)


def _out_path(path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.environ.get("BINOMCI_OUTDIR", "."), path)


def _write(path: str, text: str) -> str:
    full = _out_path(path)
    parent = os.path.dirname(full)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(full, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return full


def _parse_bits(text: str) -> list[int]:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"bits must be a nonempty 0/1 string, got {text!r}")
    return [int(c) for c in text]


def _resolve_counts(args) -> tuple[int, int]:
    """(n, y) from --bits or --n/--y, rejecting conflicting inputs."""
    if args.bits is not None:
        bits = _parse_bits(args.bits)
        if args.n is not None and args.n != len(bits):
            raise ValueError(f"--n {args.n} conflicts with {len(bits)} bits")
        y = sum(bits)
        if args.y is not None and args.y != y:
            raise ValueError(f"--y {args.y} conflicts with bits (y={y})")
        return len(bits), y
    if args.n is None or args.y is None:
        raise ValueError("need --bits or both --n and --y")
    return args.n, args.y


def cmd_interval(args) -> int:
    method = args.method
    if method == "cp":
        n, y = _resolve_counts(args)
        iv = cp_interval(n, y, args.alpha)
    elif method == "stevens":
        if args.v is None:
            raise ValueError("stevens method requires --v")
        n, y = _resolve_counts(args)
        iv = stevens_interval(n, y, args.v, args.alpha)
    elif method == "stevens-general":
        if args.v_lower is None or args.v_upper is None:
            raise ValueError("stevens-general requires --v-lower and --v-upper")
        n, y = _resolve_counts(args)
        iv = stevens_generalized(n, y, args.v_lower, args.v_upper, args.alpha)
    elif method == "discrete":
        if args.w is None or args.w_tilde is None:
            raise ValueError("discrete method requires --w and --w-tilde")
        n, y = _resolve_counts(args)
        iv = discrete_aux_interval(n, y, args.w, args.w_tilde, args.alpha)
    elif method == "korn":
        if args.bits is None:
            raise ValueError("korn method requires --bits")
        iv = korn_interval(_parse_bits(args.bits), args.alpha)
    elif method == "split":
        if args.bits is not None:
            if args.y1 is not None or args.y2 is not None:
                raise ValueError("--bits conflicts with --y1/--y2")
            bits = _parse_bits(args.bits)
            design = split_design(len(bits))
            y1 = sum(bits[: design.n1])
            y2 = sum(bits[design.n1 :])
        else:
            if args.n is None or args.y1 is None or args.y2 is None:
                raise ValueError("split method requires --bits or --n, --y1, --y2")
            design = split_design(args.n)
            y1, y2 = args.y1, args.y2
        iv = split_sample_interval(y1, y2, design, args.alpha)
    else:
        raise ValueError(f"unknown method {method!r}")

    print(f"method: {iv.method}")
    for key, value in iv.inputs.items():
        print(f"{key}: {value}")
    if iv.crossed:
        print("crossed: true")
    print(f"lower: {_fmt(iv.lower)}")
    print(f"upper: {_fmt(iv.upper)}")
    return 0


def _build_curve(method, args, thetas):
    return coverage_curve(
        method, args.n, args.alpha, thetas,
        m_levels=getattr(args, "m_levels", None), nodes=args.nodes,
    )


def cmd_coverage(args) -> int:
    if args.method == "discrete" and args.m_levels is None:
        raise ValueError("discrete method requires --m-levels")
    thetas = default_theta_grid(args.n, args.alpha, interior=args.grid_points)
    curve = _build_curve(args.method, args, thetas)

    out = args.out or f"coverage_{args.method}_n{args.n}.{args.format}"
    if args.format == "csv":
        text = coverage_csv(curve)
    elif args.format == "json":
        text = coverage_json(curve)
    else:
        text = line_chart(
            [
                ("upper non-coverage", curve.thetas, curve.upper_noncoverage),
                ("lower non-coverage", curve.thetas, curve.lower_noncoverage),
                ("expected length", curve.thetas, curve.expected_length),
            ],
            title=f"{curve.method} coverage profile, n={curve.n}, "
                  f"alpha={curve.alpha}",
            xlabel="theta",
            ylabel="probability / length",
            refline=curve.alpha / 2.0,
            reflabel="alpha/2",
        )
    full = _write(out, text)
    print(f"wrote {full}")
    return 0


def cmd_simulate(args) -> int:
    source = source_from_spec(
        args.source, seed=args.source_seed, lam=args.lam, base=args.base,
        period=args.period,
        perm=[int(p) for p in args.perm.split(",")] if args.perm else None,
    )
    report = longrun_simulate(
        source, args.n, args.alpha, args.theta, args.m, args.seed,
        checkpoints=args.checkpoints,
    )
    csv_path = _write(args.out + ".csv", simulation_csv(report))
    json_path = _write(args.out + ".json", simulation_json(report))
    print(f"wrote {csv_path}")
    print(f"wrote {json_path}")
    print(f"final_upper_proportion: {_fmt(report.final_upper_proportion)}")
    print(f"final_lower_proportion: {_fmt(report.final_lower_proportion)}")
    print(f"average_length: {_fmt(report.average_length)}")
    return 0


def _cardinality_line(method: str, n: int) -> str:
    if method == "cp":
        return f"cardinality {method}: {n + 1} count values"
    if method == "korn":
        return f"cardinality {method}: 2^{n} = {2 ** n} statistic values"
    if method == "split":
        support = thetahat_support(split_design(n))
        return f"cardinality {method}: {len(support)} estimator values"
    if method in ("stevens", "stevens-general"):
        return f"cardinality {method}: continuum (y + v)"
    return f"cardinality {method}: n/a"


def cmd_compare(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if len(methods) < 2:
        raise ValueError("compare requires at least two methods")
    thetas = default_theta_grid(args.n, args.alpha, interior=args.grid_points)
    curves = [_build_curve(m, args, thetas) for m in methods]

    out = args.out or f"compare_{'_'.join(methods)}_n{args.n}.csv"
    full = _write(out, compare_csv(curves))
    print(f"wrote {full}")

    print("# summary")
    for method in methods:
        print(_cardinality_line(method, args.n))
    half = args.alpha / 2.0
    for curve in curves:
        slack = half - curve.upper_noncoverage
        print(f"mean upper slack to alpha/2, {curve.method}: "
              f"{_fmt(slack.mean())}")
    for method in methods:
        if method in ("stevens", "korn"):
            rep = domination_report(args.n, args.alpha, method=method)
            verdict = "dominates" if rep.contained else "DOES NOT dominate"
            print(f"domination {method} vs cp: {verdict} "
                  f"(checked {rep.checked}, min slacks "
                  f"{_fmt(rep.min_upper_slack)}, {_fmt(rep.min_lower_slack)})")
    if "split" in methods:
        rep = refinement_check(split_design(args.n))
        print(f"refinement split: {'yes' if rep.is_refinement else 'no'}")
        for pair_hi, pair_lo, value in rep.tie_witnesses:
            print(f"  tie: outcomes {pair_hi} and {pair_lo} share "
                  f"estimator value {value}")
        for pair_a, val_a, pair_b, val_b in rep.inversion_witnesses:
            print(f"  inversion: {pair_a} gives {val_a} above {pair_b} "
                  f"giving {val_b} in the next count block")
        for t, small, large, in_lattice in rep.rate_anomaly:
            tag = "" if in_lattice else " (formula extrapolation)"
            print(f"  rate anomaly at t={t}: {small} > {large}{tag}")
    return 0


def _add_common_interval_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="number of trials")
    p.add_argument("--y", type=int, help="observed success count")
    p.add_argument("--bits", type=str, help="observed 0/1 sequence")
    p.add_argument("--alpha", type=float, default=0.05,
                   help="two-sided miss budget (default 0.05)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomci",
        description="Exact and randomized confidence intervals for a "
                    "binomial probability, with exact coverage analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interval", help="compute one interval")
    p.add_argument("--method", required=True,
                   choices=["cp", "stevens", "stevens-general", "discrete",
                            "korn", "split"])
    _add_common_interval_flags(p)
    p.add_argument("--v", type=float, help="auxiliary value in [0, 1]")
    p.add_argument("--v-lower", dest="v_lower", type=float)
    p.add_argument("--v-upper", dest="v_upper", type=float)
    p.add_argument("--w", type=float, help="discrete auxiliary level in (0, 1]")
    p.add_argument("--w-tilde", dest="w_tilde", type=float,
                   help="companion level in [0, 1)")
    p.add_argument("--y1", type=int, help="successes in the first group")
    p.add_argument("--y2", type=int, help="successes in the second group")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("coverage", help="sweep non-coverage and length curves")
    p.add_argument("--method", required=True,
                   choices=["cp", "stevens", "stevens-general", "korn",
                            "discrete", "split"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--m-levels", dest="m_levels", type=int,
                   help="constant level count for the discrete method")
    p.add_argument("--grid-points", dest="grid_points", type=int, default=999)
    p.add_argument("--nodes", type=int, default=64,
                   help="quadrature nodes for expected length")
    p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p.add_argument("--out", type=str, help="output file path")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("simulate", help="long-run repetition experiment")
    p.add_argument("--source", required=True,
                   choices=["uniform", "weyl", "vdc", "perm"])
    p.add_argument("--source-seed", dest="source_seed", type=int,
                   help="seed for the uniform source")
    p.add_argument("--lam", type=float, help="Weyl multiplier (default sqrt 2)")
    p.add_argument("--base", type=int, help="van der Corput base (default 2)")
    p.add_argument("--period", type=int, help="periodic source period")
    p.add_argument("--perm", type=str,
                   help="comma-separated permutation of 1..period")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--m", type=int, required=True, help="repetitions")
    p.add_argument("--seed", type=int, required=True,
                   help="seed for the binomial draws")
    p.add_argument("--checkpoints", type=int, default=100)
    p.add_argument("--out", type=str, required=True,
                   help="output path prefix (.csv and .json are written)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("compare", help="side-by-side curves and verdicts")
    p.add_argument("--methods", required=True,
                   help="comma-separated list, e.g. cp,stevens")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--m-levels", dest="m_levels", type=int)
    p.add_argument("--grid-points", dest="grid_points", type=int, default=201)
    p.add_argument("--nodes", type=int, default=64)
    p.add_argument("--out", type=str)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BracketError as exc:
        print(f"error: endpoint solve failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
