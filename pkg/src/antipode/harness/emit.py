"""Writes run logs, sweep summaries and verification reports as CSV, JSON or SVG files."""
from __future__ import annotations

import csv
import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Union

import numpy as np
from matplotlib.figure import Figure

from antipode.harness.errors import InvalidConfiguration, OutputFailure
from antipode.harness.metrics import altitude_drop, pfm
from antipode.harness.simulation import RUN_COLUMNS, RunLog
from antipode.harness.sweeps import SweepSummary
from antipode.harness.verification import VerifyReport

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = (
    "w0",
    "psi0_deg",
    "controller",
    "mean_gamma_tau",
    "esd_gamma_tau",
    "mean_gamma_p",
    "esd_gamma_p",
    "runs",
    "failures",
)

Emittable = Union[RunLog, SweepSummary, VerifyReport]


class OutputFormat(Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


def _number(value: float) -> str:
    return f"{value:.17g}"


def _write_rows(path: Path, header: tuple[str, ...], rows: list[list[str]]) -> None:
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_run_csv(log: RunLog, path: Path) -> None:
    """One row per logged step, every value printed with 17 significant digits."""
    _write_rows(path, RUN_COLUMNS, [[_number(x) for x in row] for row in log.as_table()])


def read_run_csv(path: Path) -> RunLog:
    path = Path(path)
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            header = tuple(next(reader, ()))
            if header != RUN_COLUMNS:
                raise OutputFailure(path, "Not a run log: unexpected CSV header.")
            rows = [[float(x) for x in row] for row in reader if row]
    except OSError as e:
        raise OutputFailure(path, e.strerror or str(e)) from e
    except ValueError as e:
        raise OutputFailure(path, f"Not a run log: {e}.") from e
    return RunLog.from_table(np.array(rows, dtype=float).reshape(-1, len(RUN_COLUMNS)))


def write_sweep_csv(summary: SweepSummary, path: Path) -> None:
    rows = []
    for i, (w0, psi0_deg) in enumerate(summary.ic_pairs):
        for controller in summary.controllers:
            cell = summary.cell(i, controller)
            rows.append(
                [
                    _number(w0),
                    _number(psi0_deg),
                    controller.value,
                    _number(cell.mean_gamma_tau),
                    _number(cell.esd_gamma_tau),
                    _number(cell.mean_gamma_p),
                    _number(cell.esd_gamma_p),
                    str(cell.runs),
                    str(cell.failures),
                ]
            )
    _write_rows(path, SWEEP_COLUMNS, rows)


def _plain(value: Any) -> Any:
    """JSON-ready copy of ``value``; non-finite numbers become ``null``."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (float, np.floating)):
        return float(value) if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def run_document(log: RunLog) -> dict[str, Any]:
    document: dict[str, Any] = {
        "controller": log.controller,
        "t": log.t,
        "q": log.q,
        "w": log.w,
        "qd": log.qd,
        "wd": log.wd,
        "tau": log.tau,
        "sigma": log.sigma,
        "lambda": log.lambda_,
        "v_plus": log.v_plus,
        "v_minus": log.v_minus,
        "psi": log.psi,
        "psi_d": log.psi_d,
        "fa": log.fa,
        "events": [
            {"t": e.t, "old_sigma": e.old_sigma, "new_sigma": e.new_sigma, "v": e.v}
            for e in log.events
        ],
    }
    if log.r is not None:
        document["r"] = log.r
    if log.window is not None:
        t0, tf = log.window
        figures = pfm(log, t0, tf)
        document["window"] = [t0, tf]
        document["gamma_tau"] = figures.gamma_tau
        document["gamma_p"] = figures.gamma_p
        if log.r is not None:
            document["altitude_drop"] = altitude_drop(log, t0, tf)
    return _plain(document)


def sweep_document(summary: SweepSummary) -> dict[str, Any]:
    cells = []
    for i, (w0, psi0_deg) in enumerate(summary.ic_pairs):
        for controller in summary.controllers:
            cell = summary.cell(i, controller)
            cells.append(
                {
                    "w0": w0,
                    "psi0_deg": psi0_deg,
                    "controller": controller,
                    "mean_gamma_tau": cell.mean_gamma_tau,
                    "esd_gamma_tau": cell.esd_gamma_tau,
                    "mean_gamma_p": cell.mean_gamma_p,
                    "esd_gamma_p": cell.esd_gamma_p,
                    "runs": cell.runs,
                    "failures": cell.failures,
                }
            )
    return _plain(
        {
            "repeats": summary.repeats,
            "rng_seed": summary.rng_seed,
            "controllers": summary.controllers,
            "cells": cells,
            "reductions_percent": [
                {
                    "w0": r.ic_pair[0],
                    "psi0_deg": r.ic_pair[1],
                    "gamma_tau": r.gamma_tau,
                    "gamma_p": r.gamma_p,
                }
                for r in summary.reductions()
            ],
        }
    )


def report_document(report: VerifyReport) -> dict[str, Any]:
    return _plain(
        {
            "passed": report.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "measured": c.measured,
                    "tolerance": c.tolerance,
                    "detail": c.detail,
                }
                for c in report.checks
            ],
        }
    )


def _write_json(document: dict[str, Any], path: Path) -> None:
    path.write_text(json.dumps(document, indent=2, allow_nan=False) + "\n", encoding="utf-8")


def plot_run(log: RunLog, path: Path) -> None:
    """Yaw and its reference on top, switching function and switching variable below."""
    figure = Figure(figsize=(8.0, 6.0))
    yaw_axes, switch_axes = figure.subplots(2, 1, sharex=True)
    yaw_axes.plot(log.t, np.degrees(np.unwrap(log.psi)), label="ψ")
    yaw_axes.plot(log.t, np.degrees(np.unwrap(log.psi_d)), linestyle="--", label="ψ_d")
    yaw_axes.set_ylabel("yaw [deg]")
    yaw_axes.legend(loc="best")
    switch_axes.plot(log.t, log.lambda_, label="Λ")
    switch_axes.step(log.t, log.sigma, where="post", label="σ")
    switch_axes.set_xlabel("t [s]")
    switch_axes.legend(loc="best")
    if log.controller is not None:
        yaw_axes.set_title(f"{log.controller.value} controller")
    figure.savefig(path, format="svg", metadata={"Date": None})


def plot_sweep(summary: SweepSummary, path: Path) -> None:
    """Mean ± ESD of both figures of merit per initial-condition pair and controller."""
    figure = Figure(figsize=(8.0, 6.0))
    tau_axes, power_axes = figure.subplots(2, 1, sharex=True)
    x = np.arange(len(summary.ic_pairs))
    offsets = np.linspace(-0.15, 0.15, len(summary.controllers))
    for offset, controller in zip(offsets, summary.controllers):
        cells = [summary.cell(i, controller) for i in range(len(summary.ic_pairs))]
        tau_axes.errorbar(
            x + offset,
            [c.mean_gamma_tau for c in cells],
            yerr=[np.nan_to_num(c.esd_gamma_tau) for c in cells],
            fmt="o",
            capsize=3,
            label=controller.value,
        )
        power_axes.errorbar(
            x + offset,
            [c.mean_gamma_p for c in cells],
            yerr=[np.nan_to_num(c.esd_gamma_p) for c in cells],
            fmt="o",
            capsize=3,
            label=controller.value,
        )
    tau_axes.set_ylabel("Γ_τ [N m]")
    power_axes.set_ylabel("Γ_p [N m rad/s]")
    power_axes.set_xticks(x, [f"{w0:g} rad/s, {psi0:g}°" for w0, psi0 in summary.ic_pairs])
    tau_axes.legend(loc="best")
    figure.savefig(path, format="svg", metadata={"Date": None})


_WRITERS: dict[tuple[type, OutputFormat], Callable[[Any, Path], None]] = {
    (RunLog, OutputFormat.CSV): write_run_csv,
    (RunLog, OutputFormat.JSON): lambda log, path: _write_json(run_document(log), path),
    (RunLog, OutputFormat.SVG): plot_run,
    (SweepSummary, OutputFormat.CSV): write_sweep_csv,
    (SweepSummary, OutputFormat.JSON): lambda s, path: _write_json(sweep_document(s), path),
    (SweepSummary, OutputFormat.SVG): plot_sweep,
    (VerifyReport, OutputFormat.JSON): lambda r, path: _write_json(report_document(r), path),
}


def emit(obj: Emittable, fmt: OutputFormat, path: Path) -> Path:
    """Writes ``obj`` to ``path`` in ``fmt``, creating missing parent directories."""
    path = Path(path)
    writer = _WRITERS.get((type(obj), fmt))
    if writer is None:
        raise InvalidConfiguration(
            "format", f"{type(obj).__name__} cannot be written as {fmt.value}."
        )
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        writer(obj, path)
    except OSError as e:
        raise OutputFailure(path, e.strerror or str(e)) from e
    logger.info(f"Wrote {path}")
    return path


def default_file_name(obj: Emittable, fmt: OutputFormat) -> str:
    if isinstance(obj, RunLog):
        kind = obj.controller.value if obj.controller is not None else "run"
        return f"run_{kind}.{fmt.value}"
    if isinstance(obj, SweepSummary):
        return f"sweep.{fmt.value}"
    return f"verify.{fmt.value}"

