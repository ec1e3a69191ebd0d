"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 a bound in ``eval`` was degenerate (the report is still written).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import scenario as sc
from . import sweep
from . import verify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3


def _write_json(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=2, allow_nan=False)
        fh.write("\n")


def cmd_eval(args) -> int:
    try:
        scenario = sc.parse_scenario(sc.load_json(args.scenario))
        report = sc.evaluate_scenario(scenario)
    except sc.ScenarioError as exc:
        print(f"error: {args.scenario}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_json(report, args.out)
    degenerate = sc.degenerate_bounds(report)
    for name, reason in degenerate.items():
        print(f"degenerate bound {name}: {reason}", file=sys.stderr)
    return EXIT_DEGENERATE if degenerate else EXIT_OK


def cmd_sweep(args) -> int:
    try:
        spec = sc.parse_sweep(sc.load_json(args.spec))
    except sc.ScenarioError as exc:
        print(f"error: {args.spec}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sweep.write_csv(spec, args.out)
    return EXIT_OK


def cmd_figure(args) -> int:
    sweep.write_csv(sweep.figure_spec(args.id, args.points), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = verify.TrialConfig(
        seed=args.seed,
        trials=args.trials,
        dim_range=(args.dim_min, args.dim_max),
        set_size_range=(args.set_min, args.set_max),
        fixtures=not args.no_fixtures,
    )
    results = verify.run_suite(cfg)
    summary = verify.summarize(results)
    tot = summary["total"]
    print(f"checks run: {tot['checks']}  passed: {tot['passed']}  failed: {tot['failed']}  skipped-degenerate: {tot['skipped']}")
    print(f"{'check':<26}{'count':>7}{'failed':>8}{'skipped':>9}  worst margin")
    for name, row in summary["by_check"].items():
        worst = "-" if row["worst_margin"] is None else f"{row['worst_margin']:.3e}"
        print(f"{name:<26}{row['checks']:>7}{row['failed']:>8}{row['skipped']:>9}  {worst}")
    failures = [r for r in results if not r.passed]
    for r in failures[:20]:
        print(f"FAILED {r.name}: lhs={r.lhs!r} rhs={r.rhs!r} margin={r.margin:.3e} [{r.context}]", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(verify.suite_to_json(cfg, results))
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _points(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("must be >= 2")
    return v


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="varbounds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate every bound for one scenario file")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate bounds along a Bloch-vector family")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="regenerate one of the figure datasets")
    p.add_argument("--id", required=True, choices=sweep.FIGURES)
    p.add_argument("--points", type=_points, default=sweep.DEFAULT_POINTS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("verify", help="randomised check of every inequality")
    p.add_argument("--trials", type=_positive, default=1000)
    p.add_argument("--seed", type=_seed, default=42)
    p.add_argument("--dim-min", type=int, default=2)
    p.add_argument("--dim-max", type=int, default=4)
    p.add_argument("--set-min", type=int, default=2)
    p.add_argument("--set-max", type=int, default=4)
    p.add_argument("--no-fixtures", action="store_true", help="skip the fixed qubit fixtures")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        try:
            verify.TrialConfig(1, 1, (args.dim_min, args.dim_max), (args.set_min, args.set_max))
        except ValueError as exc:
            parser.error(str(exc))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
