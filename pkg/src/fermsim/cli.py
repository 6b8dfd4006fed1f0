"""Command-line front end.

Subcommands:

* ``simulate --config <path> [--model ide|ode] [--cells N] [--dt H]
  [--t-final D] [--distribution KIND] [--output-dir PATH]`` — run one
  simulation; flags override config-file keys.
* ``compare --a <dir> --b <dir> --out <file>`` — per-state
  relative-difference report between two completed runs.
* ``verify`` — run the independent oracle suite.

Exit codes: 0 success, 1 configuration error, 2 integration failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from . import simulate as sim
from .config import apply_overrides, default_config, load_config
from .errors import ConfigError, IntegrationFailure
from .oracles import run_all

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INTEGRATION = 2
EXIT_VERIFICATION = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermsim",
        description="Population-balance fermentation simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one simulation")
    p_sim.add_argument("--config", help="flat key = value config file")
    p_sim.add_argument("--model", choices=("ide", "ode"))
    p_sim.add_argument("--cells", type=int, help="number of mass cells")
    p_sim.add_argument("--dt", type=float, help="time step in days")
    p_sim.add_argument("--t-final", type=float, help="horizon in days")
    p_sim.add_argument("--distribution", help="initial distribution kind")
    p_sim.add_argument("--output-dir", help="artifact directory")

    p_cmp = sub.add_parser("compare", help="compare two completed runs")
    p_cmp.add_argument("--a", required=True, help="first run directory")
    p_cmp.add_argument("--b", required=True, help="second run directory")
    p_cmp.add_argument("--out", required=True, help="output CSV path")

    p_ver = sub.add_parser("verify", help="run the oracle suite")
    p_ver.add_argument("--fast", action="store_true",
                       help="skip the 20-day positivity run")
    return parser


def _simulate(args) -> int:
    config = load_config(args.config) if args.config else default_config()
    overrides = {}
    if args.model is not None:
        overrides["model"] = args.model
    if args.cells is not None:
        overrides["grid.n_cells"] = args.cells
    if args.dt is not None:
        overrides["dt"] = repr(args.dt)
    if args.t_final is not None:
        overrides["t_final"] = repr(args.t_final)
    if args.distribution is not None:
        overrides["distribution.kind"] = args.distribution
    if args.output_dir is not None:
        overrides["output_dir"] = args.output_dir
    if overrides:
        config = apply_overrides(config, overrides)
    result = sim.run(config)
    for path in result.files:
        print(path)
    return EXIT_OK


def _compare(args) -> int:
    sim.compare(args.a, args.b, args.out)
    print(args.out)
    return EXIT_OK


def _verify(args) -> int:
    reports = run_all(include_slow=not args.fast)
    ok = True
    for report in reports:
        print(report.line())
        ok = ok and report.passed
    return EXIT_OK if ok else EXIT_VERIFICATION


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "simulate":
            return _simulate(args)
        if args.command == "compare":
            return _compare(args)
        return _verify(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationFailure as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except OSError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
