# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" The ``blockavg`` command line.

Exit codes: 0 on success, 1 when a validation suite fails, 2 on a
configuration or domain error, 3 when a resource cap refuses a run or a
budget truncates it """

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time

import numpy as np

from typing import Dict, List, Optional, Sequence

from blockavg.data import ProfileKind
from blockavg.exceptions import (
    ConfigurationError,
    DomainError,
    ResourceCapError,
    UnsupportedModeError,
)
from blockavg.harness.config import ExperimentConfig
from blockavg.harness.experiment import estimate_tmix, run_experiment, write_manifest
from blockavg.harness.validate import SUITES, validate
from blockavg.profiles import ProfileCurve
from blockavg.size import (
    BlockSizeSpec,
    RegimeThresholds,
    mixing_time_bounds,
    ratio_bounds,
    regime_classify,
    timescales,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3

PROFILE_PARAMETERS = ("rho", "delta", "c", "c_bar")


def _parse_table(text: str) -> Dict[int, float]:
    """``"2:0.5,3:0.5"`` into ``{2: 0.5, 3: 0.5}``"""
    table: Dict[int, float] = {}
    try:
        for item in text.split(","):
            k, p = item.split(":")
            table[int(k)] = table.get(int(k), 0.0) + float(p)
    except ValueError:
        raise ConfigurationError(f"Cannot parse the block size table {text!r}")

    return table


def _spec_from_args(args: argparse.Namespace) -> BlockSizeSpec:
    if args.n is None:
        raise ConfigurationError("Give either --config or --n")

    given = [x is not None for x in (args.k, args.a, args.table)]
    if sum(given) != 1:
        raise ConfigurationError("Give exactly one of --k, --a, --table")

    if args.k is not None:
        return BlockSizeSpec.deterministic(args.n, args.k)
    elif args.a is not None:
        return BlockSizeSpec.two_point(args.n, args.a)

    return BlockSizeSpec.table(args.n, _parse_table(args.table))


def cmd_timescales(args: argparse.Namespace) -> int:
    if args.config:
        config = ExperimentConfig.from_toml(args.config)
        spec, thresholds = config.spec, config.regime
    else:
        spec, thresholds = _spec_from_args(args), RegimeThresholds()

    ts = timescales(spec)
    diagnostics = regime_classify(spec, thresholds)

    out = {
        "spec": spec.to_dict(),
        "timescales": ts.as_dict(),
        "ratio_bounds": list(ratio_bounds(spec)),
        "regime": {
            "label": diagnostics.label.value,
            "mu_ratio": diagnostics.mu_ratio,
            "sigma_ratio": diagnostics.sigma_ratio,
            "lindeberg": diagnostics.lindeberg,
        },
    }
    if args.eps is not None:
        out["mixing_time_bounds"] = mixing_time_bounds(spec, args.eps)._asdict()

    print(json.dumps(out, indent=2))

    return EXIT_OK


def _output_directory(config: ExperimentConfig, override: Optional[str]) -> str:
    directory = override or config.output or "."
    os.makedirs(directory, exist_ok=True)

    return directory


def cmd_simulate(args: argparse.Namespace) -> int:
    config = ExperimentConfig.from_toml(args.config)
    directory = _output_directory(config, args.output)

    start = time.monotonic()
    result = run_experiment(config, workers=args.workers)
    wall_time = time.monotonic() - start

    result.to_csv(os.path.join(directory, "aggregate.csv"))
    for metric, extra in result.extras.items():
        extra.to_csv(os.path.join(directory, f"aggregate_{metric}.csv"))

    for replica in result.results:
        if args.trajectories and replica.record is not None:
            replica.record.to_csv(
                os.path.join(directory, f"trajectory_{replica.replica:04d}.csv")
            )
        if replica.generations:
            filename = os.path.join(
                directory, f"generations_{replica.replica:04d}.csv"
            )
            with open(filename, "w", newline="") as f:
                writer = csv.writer(f)
                writer.writerow(["t", "j", "mass"])
                for t, histogram in replica.generations:
                    writer.writerows(histogram.rows(t))

    write_manifest(
        os.path.join(directory, "manifest.json"), config, result, wall_time
    )
    logger.info(f"Results written to {directory}")

    return EXIT_RESOURCE if result.truncated else EXIT_OK


def cmd_tmix(args: argparse.Namespace) -> int:
    config = ExperimentConfig.from_toml(args.config)
    estimate = estimate_tmix(config, args.eps)

    out = estimate.as_dict()
    out["a_priori"] = mixing_time_bounds(config.spec, args.eps)._asdict()
    print(json.dumps(out, indent=2))

    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    parameters = {
        name: getattr(args, name)
        for name in PROFILE_PARAMETERS
        if getattr(args, name) is not None
    }
    curve = ProfileCurve(ProfileKind(args.kind), parameters)

    grid = np.arange(args.start, args.stop + args.step / 2, args.step)
    values = curve.evaluate(grid)

    f = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(f)
        writer.writerow(["beta", "value"])
        writer.writerows([repr(float(b)), repr(float(v))] for b, v in zip(grid, values))
    finally:
        if f is not sys.stdout:
            f.close()

    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    report = validate(args.suite, seed=args.seed)
    if args.output:
        report.to_json(args.output)

    print(json.dumps(report.to_dict(), indent=2))

    return EXIT_OK if report.passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockavg", description="Block Average process simulator"
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv DEBUG"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("timescales", help="print the timescales of a spec")
    p.add_argument("--config", help="read the block size law from a TOML experiment")
    p.add_argument("--n", type=int, help="population size")
    p.add_argument("--k", type=int, help="deterministic block size")
    p.add_argument("--a", type=float, help="two-point weight")
    p.add_argument("--table", help='block size pmf, e.g. "2:0.5,3:0.5"')
    p.add_argument("--eps", type=float, help="also print mixing time bounds")
    p.set_defaults(run=cmd_timescales)

    p = commands.add_parser("simulate", help="run a replicated experiment")
    p.add_argument("config", help="TOML experiment")
    p.add_argument("--workers", type=int, help="override [experiment].workers")
    p.add_argument("--output", help="override [output].directory")
    p.add_argument(
        "--trajectories",
        action="store_true",
        help="also write the trajectory of every replica",
    )
    p.set_defaults(run=cmd_simulate)

    p = commands.add_parser("tmix", help="estimate the mixing time")
    p.add_argument("config", help="TOML experiment")
    p.add_argument("--eps", type=float, default=0.25)
    p.set_defaults(run=cmd_tmix)

    p = commands.add_parser("profile", help="emit a limit profile as CSV")
    p.add_argument("--kind", required=True, choices=[k.value for k in ProfileKind])
    for name in PROFILE_PARAMETERS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)
    p.add_argument("--start", type=float, default=-3.0)
    p.add_argument("--stop", type=float, default=3.0)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--output", help="CSV file, stdout if omitted")
    p.set_defaults(run=cmd_profile)

    p = commands.add_parser("validate", help="run a validation suite")
    p.add_argument("suite", choices=list(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="also write the JSON report here")
    p.set_defaults(run=cmd_validate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    levels: List[int] = [logging.WARNING, logging.INFO, logging.DEBUG]
    logging.basicConfig(
        level=levels[min(args.verbose, 2)],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.run(args)
    except ResourceCapError as e:
        logger.error(str(e))
        return EXIT_RESOURCE
    except (ConfigurationError, DomainError, UnsupportedModeError) as e:
        logger.error(str(e))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
