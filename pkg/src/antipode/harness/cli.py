"""Command line: ``antipode {run,sweep,verify,plot}``.

Exit codes: 0 on success, 1 for invalid input or unusable files, 2 when a simulation fails
numerically and 3 when the verification suite reports a failed check.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from antipode.control import ControllerKind
from antipode.dynamics import SimulationMode
from antipode.errors import InvalidInput, NumericalFailure
from antipode.harness.config import ExperimentConfig, load_config
from antipode.harness.emit import OutputFormat, default_file_name, emit, read_run_csv
from antipode.harness.errors import OutputFailure
from antipode.harness.metrics import altitude_drop, pfm
from antipode.harness.simulation import run_experiment
from antipode.harness.sweeps import sweep
from antipode.harness.verification import verify

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_NUMERICAL_FAILURE = 2
EXIT_VERIFY_FAILED = 3

CONTROLLER_CHOICES = {
    "benchmark": (ControllerKind.BENCHMARK,),
    "switching": (ControllerKind.SWITCHING,),
    "continuous": (ControllerKind.CONTINUOUS,),
    "both": (ControllerKind.BENCHMARK, ControllerKind.SWITCHING),
}


def _ic_pair(text: str) -> tuple[float, float]:
    try:
        w0, psi0_deg = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected '<wz>,<psi0_deg>', got '{text}'") from None
    return w0, psi0_deg


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seeds are unsigned 64-bit integers, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antipode",
        description="Simulate and compare quadrotor attitude controllers around the "
        "quaternion double cover.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON experiment configuration")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--seed", type=_seed, help="noise seed")
    common.add_argument("--dt", type=float, help="integration and control step in seconds")
    common.add_argument("--mode", choices=[m.value for m in SimulationMode])
    common.add_argument("--workers", type=int, help="processes used by sweeps")
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        action="append",
        help="output format; repeat for several",
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true")
    verbosity.add_argument("--quiet", "-q", action="store_true")

    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", parents=[common], help="fly one experiment")
    run.add_argument("--controller", choices=sorted(CONTROLLER_CHOICES), default="both")
    run.add_argument("--ic", type=_ic_pair, help="Stage 3 initial condition '<wz>,<psi0_deg>'")
    run.set_defaults(handler=_run, default_format=OutputFormat.CSV)

    grid = commands.add_parser("sweep", parents=[common], help="sweep initial conditions")
    grid.add_argument("--controller", choices=sorted(CONTROLLER_CHOICES), default="both")
    grid.add_argument("--ic", type=_ic_pair, action="append", help="repeat for several pairs")
    grid.set_defaults(handler=_sweep, default_format=OutputFormat.CSV)

    check = commands.add_parser("verify", parents=[common], help="run the verification suite")
    check.set_defaults(handler=_verify, default_format=OutputFormat.JSON)

    plot = commands.add_parser("plot", parents=[common], help="plot run CSV files as SVG")
    plot.add_argument("csv", type=Path, nargs="+")
    plot.set_defaults(handler=_plot, default_format=OutputFormat.SVG)
    return parser


def _config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config is not None else ExperimentConfig()
    return cfg.with_overrides(
        rng_seed=args.seed,
        dt=args.dt,
        mode=SimulationMode(args.mode) if args.mode is not None else None,
        workers=args.workers,
    )


def _formats(args: argparse.Namespace) -> list[OutputFormat]:
    if not args.format:
        return [args.default_format]
    return [OutputFormat(f) for f in dict.fromkeys(args.format)]


def _run(args: argparse.Namespace) -> int:
    cfg = _config(args)
    if args.ic is not None:
        cfg = cfg.with_ic(*args.ic)
    for controller in CONTROLLER_CHOICES[args.controller]:
        log = run_experiment(cfg, controller)
        figures = pfm(log, cfg.t0, cfg.tf)
        summary = (
            f"{controller.value}: gamma_tau={figures.gamma_tau:.6g} N m, "
            f"gamma_p={figures.gamma_p:.6g} N m rad/s, switches={len(log.events)}"
        )
        if log.r is not None:
            summary += f", altitude_drop={altitude_drop(log, cfg.t0, cfg.tf):.4g} m"
        print(summary)
        for fmt in _formats(args):
            emit(log, fmt, args.out / default_file_name(log, fmt))
    return EXIT_OK


def _sweep(args: argparse.Namespace) -> int:
    summary = sweep(_config(args), args.ic, CONTROLLER_CHOICES[args.controller])
    for reduction in summary.reductions():
        w0, psi0_deg = reduction.ic_pair
        print(
            f"w0={w0:g} rad/s, psi0={psi0_deg:g} deg: switching lowers gamma_tau by "
            f"{reduction.gamma_tau:.2f}% and gamma_p by {reduction.gamma_p:.2f}%"
        )
    for fmt in _formats(args):
        emit(summary, fmt, args.out / default_file_name(summary, fmt))
    return EXIT_OK


def _verify(args: argparse.Namespace) -> int:
    report = verify(_config(args))
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name}: {check.measured:.6g} (tolerance {check.tolerance:g})")
    for fmt in _formats(args):
        emit(report, fmt, args.out / default_file_name(report, fmt))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _plot(args: argparse.Namespace) -> int:
    for source in args.csv:
        log = read_run_csv(source)
        emit(log, OutputFormat.SVG, args.out / source.with_suffix(".svg").name)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.handler(args)
    except NumericalFailure as e:
        sys.stderr.write(str(e))
        return EXIT_NUMERICAL_FAILURE
    except (InvalidInput, OutputFailure) as e:
        sys.stderr.write(str(e))
        return EXIT_INVALID_INPUT
