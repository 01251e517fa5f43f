"""Command-line interface: ``marketeff <subcommand> [flags]``.

Exit status is 0 on success, 2 on validation errors and 64 on usage errors.
With ``--format json`` errors are also printed as a JSON payload on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analytics, constructions, evolution, formats, ingest as ingest_mod, oracle, plot, strategy
from .core import DeterministicPattern, PatternError, price_path, to_rational

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _rational_arg(text):
    try:
        return to_rational(text)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _schedule_arg(text):
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad schedule {text!r}; expected e.g. 2,2,3")
    if not out:
        raise argparse.ArgumentTypeError("schedule is empty")
    return out


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pattern", help="pattern JSON file or catalog name "
                        "(fig1, fig2, faircoin, parity:M, feedoff:M,M')")
    common.add_argument("--memory", type=int, help="strategy memory m")
    common.add_argument("--schedule", type=_schedule_arg, help="comma-separated memories, e.g. 2,2")
    common.add_argument("--steps", type=int, help="number of evolution steps")
    common.add_argument("--theta", type=_rational_arg, default=evolution.DEFAULT_THETA,
                        help="bubble threshold on peak amplitude ratio (default 3/2)")
    common.add_argument("--seed", type=int, help="generator seed")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="marketeff", description="Exact memory-bounded market efficiency engine.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("gain", parents=[common], help="gain of a strategy file on a pattern")
    p.add_argument("--strategy", required=True, help="strategy JSON file")
    sub.add_parser("optimal", parents=[common], help="optimal tie-to-zero strategy and its gain")
    p = sub.add_parser("evolve", parents=[common], help="one evolution step")
    p.add_argument("--strategy", help="strategy JSON file (default: optimal for --memory)")
    p = sub.add_parser("iterate", parents=[common], help="repeated optimal evolution")
    p.add_argument("--freeze", action="store_true", help="reuse the step-0 strategies")
    sub.add_parser("efficient", parents=[common], help="is the pattern efficient for --memory")
    sub.add_parser("min-memory", parents=[common], help="smallest inefficient memory up to --memory")
    p = sub.add_parser("brute-force", parents=[common], help="optimal gain by exhaustive search")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_CAP)

    p = sub.add_parser("construct", parents=[common], help="generate a catalog pattern")
    p.add_argument("kind", choices=("parity", "feedoff", "figure"))
    p.add_argument("--m", type=int)
    p.add_argument("--mprime", type=int)
    p.add_argument("--name")
    for const in ("a", "a-prime", "b", "c"):
        p.add_argument(f"--{const}", type=_rational_arg)

    p = sub.add_parser("feedoff-report", parents=[common], help="gains behind the feed-off inequality")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mprime", type=int, required=True)

    sub.add_parser("expand", parents=[common], help="scenario pattern to one long deterministic block")

    p = sub.add_parser("sweep", parents=[common], help="bubble statistics over random patterns")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--length", type=int, default=20)
    p.add_argument("--values", default="-3,-2,-1,1,2,3", help="comma-separated value set")
    p.add_argument("--workers", type=int, default=1)

    sub.add_parser("autocorr", parents=[common], help="memory-1 gain vs sign autocorrelation")

    p = sub.add_parser("ingest", parents=[common], help="CSV column to a pattern")
    p.add_argument("--csv", required=True, dest="csv_path")
    p.add_argument("--column", required=True)
    p.add_argument("--mode", choices=("prices", "returns"), default="returns")
    p.add_argument("--quantum", type=_rational_arg)

    p = sub.add_parser("plot", parents=[common], help="SVG of price paths along an evolution")
    p.add_argument("--start", type=_rational_arg, default=Fraction(0))
    return parser


def load_pattern(ref):
    if ref is None:
        raise UsageError("--pattern is required")
    path = Path(ref)
    if path.is_file():
        return formats.parse_pattern(path.read_text())
    try:
        return constructions.named_pattern(ref)
    except (KeyError, ValueError):
        raise UsageError(f"--pattern {ref!r} is neither a file nor a catalog name") from None


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for {args.command}")
    return value


def _schedule(args):
    if args.schedule:
        return args.schedule
    memory = _need(args, "memory")
    return [memory] * (args.steps or 1)


def _dump(payload) -> str:
    return formats.to_json(payload) + "\n"


def _run(args) -> str:
    cmd = args.command
    if cmd == "gain":
        pattern = load_pattern(args.pattern)
        strat = formats.parse_strategy(Path(args.strategy).read_text())
        report = strategy.gain(strat, pattern)
        return _dump({
            "gain": report.gain,
            "contributions": [{"context": list(c), "contribution": v}
                              for c, v in sorted(report.contributions.items())],
        })
    if cmd == "optimal":
        pattern = load_pattern(args.pattern)
        m = _need(args, "memory")
        strat = strategy.optimal_strategy(pattern, m)
        return _dump({"memory": m, "optimal_gain": strategy.optimal_gain(pattern, m), "strategy": strat})
    if cmd == "evolve":
        pattern = load_pattern(args.pattern)
        if args.strategy:
            strat = formats.parse_strategy(Path(args.strategy).read_text())
        else:
            strat = strategy.optimal_strategy(pattern, _need(args, "memory"))
        return formats.serialize_pattern(evolution.evolve(pattern, strat)) + "\n"
    if cmd == "iterate":
        pattern = load_pattern(args.pattern)
        traj, bubble = evolution.iterate(pattern, _schedule(args), args.theta, freeze=args.freeze)
        if args.format == "csv":
            return formats.emit_trajectory_csv(traj)
        return _dump(formats.trajectory_to_dict(traj, bubble))
    if cmd == "efficient":
        pattern = load_pattern(args.pattern)
        m = _need(args, "memory")
        return _dump({"memory": m, "efficient": strategy.is_efficient(pattern, m),
                      "optimal_gain": strategy.optimal_gain(pattern, m)})
    if cmd == "min-memory":
        pattern = load_pattern(args.pattern)
        m_max = _need(args, "memory")
        return _dump({"max_memory": m_max,
                      "min_inefficient_memory": strategy.min_inefficient_memory(pattern, m_max)})
    if cmd == "brute-force":
        pattern = load_pattern(args.pattern)
        m = _need(args, "memory")
        return _dump({"memory": m, "brute_force_optimal_gain": oracle.brute_force_optimal_gain(pattern, m, args.cap)})
    if cmd == "construct":
        if args.kind == "parity":
            pattern = constructions.parity_pattern(_need(args, "m"))
        elif args.kind == "feedoff":
            pattern = constructions.feedoff_pattern(_feedoff_params(args))
        else:
            pattern = constructions.figure_pattern(_need(args, "name"))
        return formats.serialize_pattern(pattern) + "\n"
    if cmd == "feedoff-report":
        report = constructions.feedoff_report(_feedoff_params(args))
        return _dump({
            "m": report.params.m,
            "m_prime": report.params.m_prime,
            "gains": {
                "s_m_on_P": report.gain_sm_on_p,
                "s_mprime_on_P": report.gain_smp_on_p,
                "optimal_mprime_on_P_m": report.optimal_mp_on_pm,
                "optimal_m_on_P_m": report.optimal_m_on_pm,
                "optimal_mprime_on_P_mprime": report.optimal_mp_on_pmp,
            },
            "inequality_holds": report.inequality_holds,
        })
    if cmd == "expand":
        pattern = load_pattern(args.pattern)
        if isinstance(pattern, DeterministicPattern):
            pattern = pattern.as_scenarios()
        return formats.serialize_pattern(constructions.expand_to_deterministic(pattern, seed=args.seed)) + "\n"
    if cmd == "sweep":
        config = analytics.SweepConfig(
            count=args.count,
            pattern_length=args.length,
            value_set=tuple(to_rational(v) for v in args.values.split(",") if v.strip()),
            memory=args.memory or 3,
            steps=args.steps or 16,
            theta=args.theta,
            seed=args.seed or 0,
        )
        report = analytics.sweep(config, workers=args.workers)
        return formats.emit_report(report, args.format)
    if cmd == "autocorr":
        pattern = load_pattern(args.pattern)
        if not isinstance(pattern, DeterministicPattern):
            raise PatternError(["autocorr needs a deterministic pattern"])
        g, scaled = analytics.compare_gain_autocorr(pattern)
        return _dump({"autocorr1": analytics.autocorr1(pattern), "optimal_gain_memory1": g,
                      "length_times_abs_autocorr1": scaled})
    if cmd == "ingest":
        spec = ingest_mod.IngestSpec(args.csv_path, args.column, args.mode, args.quantum)
        pattern, provenance = ingest_mod.ingest(spec)
        return formats.serialize_pattern(pattern, provenance=provenance) + "\n"
    if cmd == "plot":
        pattern = load_pattern(args.pattern)
        if not isinstance(pattern, DeterministicPattern):
            raise PatternError(["plot needs a deterministic pattern"])
        paths = {"step 0": price_path(pattern, args.start)}
        if args.schedule or args.memory:
            traj, _ = evolution.iterate(pattern, _schedule(args), args.theta)
            for t, step in enumerate(traj.steps, start=1):
                paths[f"step {t}"] = price_path(step.after, args.start)
        return plot.emit_price_svg(paths, title="price path")
    raise UsageError("a subcommand is required")


def _feedoff_params(args):
    extra = {}
    for attr, key in (("a", "a"), ("a_prime", "a_prime"), ("b", "b"), ("c", "c")):
        value = getattr(args, attr, None)
        if value is not None:
            extra[key] = value
    return constructions.FeedoffParams(_need(args, "m"), _need(args, "mprime"), **extra)


def _report_error(kind: str, message: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"error": kind, "message": message}))
    print(message, file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json"
    try:
        args = parser.parse_args(argv)
        fmt = args.format if hasattr(args, "format") else "json"
        if args.command is None:
            raise UsageError(parser.format_usage())
        output = _run(args)
    except UsageError as exc:
        _report_error("usage", str(exc).strip(), "text")
        return EXIT_USAGE
    except (PatternError, formats.FormatError, ingest_mod.IngestError, evolution.BoundaryDependent,
            constructions.CapExceeded, oracle.OracleCapExceeded, ValueError, KeyError, OSError) as exc:
        _report_error(type(exc).__name__, str(exc), fmt)
        return EXIT_INVALID
    if args.out:
        Path(args.out).write_text(output)
    else:
        sys.stdout.write(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
