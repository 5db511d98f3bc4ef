"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 bad arguments,
3 no crossing or too little data for a fit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .decoder import Variant, decode
from .lattice import SpinConfig, build_geometry
from .noise import ErrorParams, FlipRecord, apply_record, sample_errors, sample_stream

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_NO_DATA = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _common(p, sizes=True, rates=True):
    if sizes:
        p.add_argument("-L", "--size", type=int, action="append", dest="sizes",
                       help="lattice size (repeatable)")
    if rates:
        p.add_argument("--p", type=float, action="append", dest="rates",
                       help="error rate per flip type (repeatable)")
        p.add_argument("--p-grid", type=float, nargs=3, metavar=("START", "STOP", "STEP"),
                       help="inclusive grid of rates")
        p.add_argument("--p-phi", type=float, help="override the Phi flip rate")
        p.add_argument("--p-lambda", type=float, help="override the Lambda flip rate")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--failures", type=int, default=harness.DEFAULT_FAILURES,
                   help="stop a point after this many logical failures")
    p.add_argument("--max-samples", type=int, default=harness.DEFAULT_MAX_SAMPLES)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.ADAPTIVE.value)
    p.add_argument("--out", type=Path, help="write here instead of stdout")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="philambda", description="Phi-Lambda anyon decoding experiments")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check every exact identity")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)

    p = sub.add_parser("run", help="decode one sample")
    _common(p)
    p.add_argument("--sample", type=int, default=0, help="sample index within the stream")
    p.add_argument("--trace", action="store_true", help="emit flips, configurations and the decode report")
    p.add_argument("--replay", type=Path, help="JSON flip record to decode instead of sampling")

    for name, text in (("sweep", "logical error rates on a grid"),
                       ("threshold", "crossing point of the curves"),
                       ("static-control", "sweep with the static decoder next to the adaptive one")):
        p = sub.add_parser(name, help=text)
        _common(p)
        if name == "threshold":
            p.add_argument("--from-csv", type=Path, help="reuse a sweep instead of sampling")
            p.add_argument("--resamples", type=int, default=1000)

    p = sub.add_parser("fit", help="exponential decay rate alpha at fixed p")
    _common(p)
    p.add_argument("--min-failures", type=int, default=10)

    p = sub.add_parser("lstar", help="smallest L with P below p")
    _common(p, sizes=False)
    p.add_argument("--max-size", type=int, default=32)
    p.add_argument("--min-size", type=int, default=2)
    return parser


def _rates(args):
    rates = list(args.rates or [])
    if args.p_grid:
        rates += harness.rate_grid(*args.p_grid)
    if not rates and (args.p_phi is not None or args.p_lambda is not None):
        rates = [args.p_phi if args.p_phi is not None else args.p_lambda]
    if not rates:
        raise _UsageError("give at least one rate with --p or --p-grid")
    return rates


def _sweep_config(args, variant=None):
    if not args.sizes:
        raise _UsageError("give at least one size with -L")
    if args.workers < 1:
        raise _UsageError("--workers must be at least 1")
    return harness.SweepConfig(
        sizes=args.sizes, error_rates=_rates(args), stop_failures=args.failures,
        max_samples=args.max_samples, master_seed=args.seed, workers=args.workers,
        decoder_variant=variant or args.variant, p_phi=args.p_phi, p_lambda=args.p_lambda,
    )


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _cmd_validate(args):
    checks = harness.validate_all()
    if args.format == "json":
        from . import algebra
        text = json.dumps({
            "checks": [{"name": c.name, "passed": c.passed, "deviation": c.deviation} for c in checks],
            "constants": {
                "f_matrix": algebra.F_MATRIX.tolist(),
                "r_phases": {k.name.lower(): v for k, v in algebra.R_PHASES.items()},
                "probs": {x.name.lower(): {y.name.lower(): str(v) for y, v in row.items()}
                          for x, row in algebra.PROBS_TABLE.items()},
            },
        }, indent=1) + "\n"
    else:
        width = max(len(c.name) for c in checks)
        text = "".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  deviation={c.deviation:.3g}\n"
                       for c in checks)
    _emit(text, args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VALIDATION


def _cmd_run(args):
    if not args.sizes or len(args.sizes) != 1:
        raise _UsageError("run takes exactly one -L")
    geom = build_geometry(args.sizes[0])
    config = SpinConfig(geom)
    if args.replay:
        record = FlipRecord.from_json(args.replay.read_text())
        if any(not 0 <= s < geom.n_spins for s, _ in record):
            raise _UsageError("replayed flip record does not fit this lattice")
    else:
        p = _rates(args)[0]
        params = ErrorParams(p if args.p_phi is None else args.p_phi,
                             p if args.p_lambda is None else args.p_lambda)
        rng = sample_stream(args.seed, geom.L, params, args.sample, geom.n_spins)
        record = sample_errors(geom, params, rng)
    apply_record(config, record)
    before = config.to_dict()
    report = decode(config, args.variant)
    if args.trace:
        payload = {"errors": [[s, g] for s, g in record], "before": before,
                   "report": report.to_dict(geom), "after": config.to_dict()}
        _emit(json.dumps(payload, indent=1) + "\n", args.out)
    else:
        _emit(f"{report.verdict.name.lower()} ({len(record)} flips, {len(report.pairings)} pairings)\n", args.out)
    return EXIT_OK


def _cmd_sweep(args):
    points = harness.sweep(_sweep_config(args))
    _emit(harness.format_points(points, args.format, "logical error rate"), args.out)
    return EXIT_OK


def _cmd_static(args):
    cfg = _sweep_config(args)
    points = harness.static_control_experiment(cfg) + harness.sweep(
        harness.SweepConfig(**{**vars(cfg), "decoder_variant": Variant.ADAPTIVE.value}))
    if args.format == "svg":
        raise _UsageError("static-control writes csv or json")
    if args.format == "json":
        rows = [{**pt.row(), "variant": pt.variant} for pt in points]
        _emit(json.dumps(rows, indent=1) + "\n", args.out)
    else:
        lines = harness.points_to_csv(points).splitlines()
        body = [f"{line},{pt.variant}" for line, pt in zip(lines[1:], points)]
        _emit("\n".join([lines[0] + ",variant"] + body) + "\n", args.out)
    return EXIT_OK


def _cmd_threshold(args):
    if args.from_csv:
        points = harness.points_from_csv(args.from_csv.read_text())
    else:
        points = harness.sweep(_sweep_config(args))
    try:
        est = harness.threshold_estimate(points, args.resamples, args.seed)
    except harness.InsufficientData as exc:
        print(f"threshold: {exc}", file=sys.stderr)
        return EXIT_NO_DATA
    if args.format == "json":
        text = json.dumps({"p_c": est.p_c, "low": est.low, "high": est.high,
                           "crossings": {f"{a}-{b}": x for (a, b), x in est.crossings.items()}}) + "\n"
    else:
        pairs = ", ".join(f"{a}/{b}: {x:.5f}" for (a, b), x in est.crossings.items())
        text = f"p_c = {est.p_c:.5f}  interval [{est.low:.5f}, {est.high:.5f}]  ({pairs})\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_fit(args):
    cfg = _sweep_config(args)
    out = []
    for p in cfg.error_rates:
        points = harness.sweep(harness.SweepConfig(**{**vars(cfg), "error_rates": [p]}))
        try:
            fit = harness.fit_alpha(points, args.min_failures)
        except harness.InsufficientData as exc:
            print(f"fit at p={p}: {exc}", file=sys.stderr)
            return EXIT_NO_DATA
        out.append((p, fit))
    if args.format == "json":
        text = json.dumps([{"p": p, "alpha": f.alpha, "c": f.c, "residual": f.residual} for p, f in out]) + "\n"
    else:
        text = "".join(f"p={p}: alpha={f.alpha:.5f} c={f.c:.5g} residual={f.residual:.3g}\n" for p, f in out)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_lstar(args):
    lines = []
    for p in _rates(args):
        L = harness.find_lstar(p, range(args.min_size, args.max_size + 1), args.failures, args.seed,
                               args.workers, args.max_samples, variant=args.variant)
        lines.append(f"p={p}: L*={L if L is not None else f'not found <= {args.max_size}'}\n")
    _emit("".join(lines), args.out)
    return EXIT_OK


COMMANDS = {
    "validate": _cmd_validate, "run": _cmd_run, "sweep": _cmd_sweep, "threshold": _cmd_threshold,
    "fit": _cmd_fit, "lstar": _cmd_lstar, "static-control": _cmd_static,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"philambda: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"philambda: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
