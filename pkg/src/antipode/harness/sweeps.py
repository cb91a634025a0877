"""Initial-condition sweeps: every ``(pair, repeat)`` cell flies each controller once.

A cell's noise stream is derived from ``(rng_seed, cell_index)`` only, and every controller of a
cell gets its own fresh copy of that stream, so results never depend on the execution order or on
how many worker processes are used.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from antipode.control import ControllerKind
from antipode.errors import NumericalFailure
from antipode.harness.config import ExperimentConfig
from antipode.harness.metrics import pfm
from antipode.harness.simulation import run_experiment

logger = logging.getLogger(__name__)

DEFAULT_CONTROLLERS = (ControllerKind.BENCHMARK, ControllerKind.SWITCHING)

ICPair = tuple[float, float]


@dataclass(frozen=True)
class CellStats:
    """Mean and empirical standard deviation (``n − 1`` divisor) of both figures of merit."""

    mean_gamma_tau: float
    esd_gamma_tau: float
    mean_gamma_p: float
    esd_gamma_p: float
    runs: int
    failures: int

    @property
    def failed(self) -> bool:
        return self.failures > 0

    @classmethod
    def from_samples(cls, samples: Sequence[Optional[tuple[float, float]]]) -> CellStats:
        ok = np.array([s for s in samples if s is not None], dtype=float).reshape(-1, 2)
        runs = ok.shape[0]
        mean = ok.mean(axis=0) if runs else np.full(2, math.nan)
        esd = ok.std(axis=0, ddof=1) if runs >= 2 else np.full(2, math.nan)
        return cls(
            mean_gamma_tau=float(mean[0]),
            esd_gamma_tau=float(esd[0]),
            mean_gamma_p=float(mean[1]),
            esd_gamma_p=float(esd[1]),
            runs=runs,
            failures=len(samples) - runs,
        )


@dataclass(frozen=True)
class Reduction:
    """Relative improvement of the switching controller over the benchmark, in percent."""

    ic_pair: ICPair
    gamma_tau: float
    gamma_p: float


@dataclass(frozen=True, eq=False)
class SweepSummary:
    ic_pairs: tuple[ICPair, ...]
    controllers: tuple[ControllerKind, ...]
    repeats: int
    rng_seed: int
    cells: dict[tuple[int, ControllerKind], CellStats] = field(default_factory=dict)

    def cell(self, pair_index: int, controller: ControllerKind) -> CellStats:
        return self.cells[(pair_index, controller)]

    def reductions(self) -> list[Reduction]:
        if not {ControllerKind.BENCHMARK, ControllerKind.SWITCHING} <= set(self.controllers):
            return []
        result = []
        for i, pair in enumerate(self.ic_pairs):
            benchmark = self.cell(i, ControllerKind.BENCHMARK)
            switching = self.cell(i, ControllerKind.SWITCHING)
            result.append(
                Reduction(
                    ic_pair=pair,
                    gamma_tau=_reduction(benchmark.mean_gamma_tau, switching.mean_gamma_tau),
                    gamma_p=_reduction(benchmark.mean_gamma_p, switching.mean_gamma_p),
                )
            )
        return result


def _reduction(benchmark: float, switching: float) -> float:
    if not benchmark > 0:
        return math.nan
    return 100.0 * (benchmark - switching) / benchmark


@dataclass(frozen=True, eq=False)
class _Cell:
    cfg: ExperimentConfig
    pair_index: int
    repeat: int
    controllers: tuple[ControllerKind, ...]

    @property
    def index(self) -> int:
        return self.pair_index * self.cfg.repeats + self.repeat


def _cell_rng(cfg: ExperimentConfig, cell_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([cfg.rng_seed, cell_index]))


def _fly_cell(cell: _Cell) -> list[Optional[tuple[float, float]]]:
    w0, psi0_deg = cell.cfg.ic_pairs[cell.pair_index]
    cfg = cell.cfg.with_ic(w0, psi0_deg)
    results: list[Optional[tuple[float, float]]] = []
    for controller in cell.controllers:
        try:
            log = run_experiment(cfg, controller, _cell_rng(cfg, cell.index))
            figures = pfm(log, cfg.t0, cfg.tf)
            results.append((figures.gamma_tau, figures.gamma_p))
        except NumericalFailure as e:
            logger.warning(
                f"Run of {controller.value} controller failed in cell {cell.index} "
                f"(w0={w0:g}, psi0={psi0_deg:g} deg, repeat {cell.repeat}): "
                f"{e.failsafe_explanation()}"
            )
            results.append(None)
    return results


def sweep(
    cfg: ExperimentConfig,
    ic_pairs: Optional[Iterable[ICPair]] = None,
    controllers: Sequence[ControllerKind] = DEFAULT_CONTROLLERS,
) -> SweepSummary:
    """Flies ``cfg.repeats`` runs per initial-condition pair and controller.

    ``ic_pairs`` replaces ``cfg.ic_pairs`` when given. Runs that fail numerically are counted in
    their cell's ``failures`` and left out of its statistics; the sweep carries on.
    """
    if ic_pairs is not None:
        cfg = cfg.with_overrides(ic_pairs=tuple((float(w), float(p)) for w, p in ic_pairs))
    controllers = tuple(controllers)
    cells = [
        _Cell(cfg, pair_index, repeat, controllers)
        for pair_index in range(len(cfg.ic_pairs))
        for repeat in range(cfg.repeats)
    ]
    logger.info(
        f"Sweeping {len(cfg.ic_pairs)} initial-condition pair(s) x {cfg.repeats} repeat(s) "
        f"with {cfg.workers} worker(s)"
    )
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as executor:
            outcomes = list(executor.map(_fly_cell, cells))
    else:
        outcomes = [_fly_cell(cell) for cell in cells]

    stats: dict[tuple[int, ControllerKind], CellStats] = {}
    for pair_index, (w0, psi0_deg) in enumerate(cfg.ic_pairs):
        rows = outcomes[pair_index * cfg.repeats : (pair_index + 1) * cfg.repeats]
        for c, controller in enumerate(controllers):
            cell = CellStats.from_samples([row[c] for row in rows])
            stats[(pair_index, controller)] = cell
            logger.info(
                f"w0={w0:g} rad/s, psi0={psi0_deg:g} deg, {controller.value}: "
                f"gamma_tau={cell.mean_gamma_tau:.4g}+-{cell.esd_gamma_tau:.2g}, "
                f"gamma_p={cell.mean_gamma_p:.4g}+-{cell.esd_gamma_p:.2g} "
                f"({cell.runs} run(s), {cell.failures} failure(s))"
            )
    return SweepSummary(
        ic_pairs=cfg.ic_pairs,
        controllers=controllers,
        repeats=cfg.repeats,
        rng_seed=cfg.rng_seed,
        cells=stats,
    )
