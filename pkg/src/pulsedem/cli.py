"""Command line front end.

    pulsedem run --scenario <name> --config <file> --out <dir> [--seed N]
    pulsedem list

Exit codes: 0 when every check passes, 1 when any check fails, 2 for
configuration or I/O problems (bad scenario name, unreadable config,
unwritable output directory, invalid parameter values).
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import ScenarioConfig, load_params
from .errors import ConfigError
from .report import write_outputs
from .scenarios import run_scenario, scenario_names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulsedem",
        description="numerical checks for a pulsed-potential field model")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification scenario")
    run.add_argument("--scenario", required=True,
                     help="scenario name, or 'all' (see: pulsedem list)")
    run.add_argument("--config", default=None, metavar="FILE",
                     help="INI file overriding default parameters")
    run.add_argument("--out", default="out", metavar="DIR",
                     help="output directory (created if missing)")
    run.add_argument("--seed", type=int, default=None,
                     help="override the random seed from the config")
    fig = run.add_mutually_exclusive_group()
    fig.add_argument("--figures", dest="figures", action="store_true",
                     default=None, help="render PNG figures (default)")
    fig.add_argument("--no-figures", dest="figures", action="store_false",
                     help="skip figure rendering")

    sub.add_parser("list", help="list available scenarios")
    return parser


def _cmd_list() -> int:
    for name in scenario_names():
        print(name)
    return 0


def _cmd_run(args) -> int:
    try:
        params = load_params(args.config)
    except (ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.scenario not in scenario_names():
        print(f"error: unknown scenario {args.scenario!r} "
              f"(choose from: {', '.join(scenario_names())})", file=sys.stderr)
        return 2

    seed = args.seed if args.seed is not None else params["common"]["seed"]
    figures = args.figures if args.figures is not None \
        else params["common"]["figures"]
    cfg = ScenarioConfig(scenario=args.scenario, out_dir=args.out,
                         seed=seed, figures=figures, params=params)

    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        print(f"error: cannot create output directory: {exc}", file=sys.stderr)
        return 2

    report = run_scenario(cfg)
    try:
        write_outputs(report, args.out, figures=figures)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return 2

    n_pass = sum(1 for c in report.checks if c.passed)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        value = "none" if check.value is None else f"{check.value:.6e}"
        print(f"{status} {check.name}: value={value} "
              f"expected={check.expected:.6e} tol={check.tol:.3e}")
    print(f"{n_pass}/{len(report.checks)} checks passed "
          f"(scenario={report.scenario}, seed={report.seed})")
    return 0 if report.passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        return _cmd_list()
    return _cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
