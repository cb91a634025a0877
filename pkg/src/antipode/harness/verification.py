"""Numerical checks of the stability properties the controllers rely on.

Every check is a function from the experiment configuration to a ``CheckResult``; failures are
reported, never raised, so one run of the suite always yields a complete report.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from antipode.control import ControllerKind, error_rates
from antipode.dynamics import BodyState, Inputs, hold, integrate
from antipode.harness.closed_loop import BatchTrajectory, initial_states, simulate_batch
from antipode.harness.config import DEFAULT_IC_PAIRS, ExperimentConfig, NoiseConfig
from antipode.harness.metrics import pfm
from antipode.harness.simulation import RunLog, first_switch_after, run_experiment
from antipode.quat import IDENTITY, from_axis_angle
from antipode.swlyap import (
    check_return_decrease,
    in_region_of_attraction,
    lyapunov_sample,
    subsystem_rates,
)

logger = logging.getLogger(__name__)

LAMBDA_SAMPLES = 100_000
TRAJECTORIES = 100
SETTLING_TIME = 3.0
CONVERGED = 1e-3
ONSET_LAMBDA = 2.0 - 3.0 * math.sqrt(3.0)
SWITCH_LATENCY = 0.05
FD_TOLERANCE = 1e-4
FD_FRACTION = 0.99
MAX_SWITCHES = 2
AGREEMENT = 0.15


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]


def _unit_quaternions(rng: np.random.Generator, n: int) -> np.ndarray:
    q = rng.normal(size=(n, 4))
    return q / np.linalg.norm(q, axis=-1, keepdims=True)


def _settled_states(
    cfg: ExperimentConfig, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Random attitudes, each with ``ν`` close to the slow manifold of its nearer equilibrium."""
    gains = cfg.gains_switching
    qe = _unit_quaternions(rng, TRAJECTORIES)
    sigma = np.where(qe[:, 0] >= 0, 1.0, -1.0)
    n = qe[:, 1:]
    nu = -sigma[:, None] * (gains.kq / gains.kw) * n + rng.normal(0.0, 0.01, size=n.shape)
    return qe, nu - sigma[:, None] * gains.kn * n, sigma


def _switching_batch(cfg: ExperimentConfig) -> tuple[BatchTrajectory, np.ndarray]:
    rng = np.random.default_rng(np.random.SeedSequence([cfg.rng_seed, 1]))
    qe, we, sigma = _settled_states(cfg, rng)
    nu = we + sigma[:, None] * cfg.gains_switching.kn * qe[:, 1:]
    inside = in_region_of_attraction(sigma, qe, nu, cfg.gains_switching.kq, cfg.params.J)
    trajectory = simulate_batch(
        initial_states(qe, we),
        ControllerKind.SWITCHING,
        cfg.gains_switching,
        cfg.params,
        SETTLING_TIME,
        cfg.dt,
        sigma0=sigma,
    )
    return trajectory, inside


def check_lambda_identity(cfg: ExperimentConfig) -> CheckResult:
    rng = np.random.default_rng(np.random.SeedSequence([cfg.rng_seed, 0]))
    qe = _unit_quaternions(rng, LAMBDA_SAMPLES)
    we = rng.normal(0.0, 3.0, size=(LAMBDA_SAMPLES, 3))
    sample = lyapunov_sample(qe, we, 1, cfg.gains_switching, cfg.params.J)
    error = np.max(np.abs(sample.lambda_ - (sample.v_minus - sample.v_plus)))
    return CheckResult("lambda_identity", bool(error <= 1e-10), float(error), 1e-10)


def check_lyapunov_decrease(trajectory: BatchTrajectory) -> CheckResult:
    steady = trajectory.sigma[1:] == trajectory.sigma[:-1]
    rises = np.where(steady, np.diff(trajectory.v_active, axis=0), -np.inf)
    worst_rise = float(rises.max())
    worst_vdot = float(trajectory.vdot_active.max())
    return CheckResult(
        "lyapunov_decrease",
        worst_vdot <= 0.0 and worst_rise <= 1e-6,
        worst_rise,
        1e-6,
        detail=f"max analytic Vdot {worst_vdot:.3g}",
    )


def check_vdot_finite_differences(trajectory: BatchTrajectory, dt: float) -> CheckResult:
    v, sigma = trajectory.v_active, trajectory.sigma
    # fourth-order centered stencil
    fd = (v[:-4] - 8.0 * v[1:-3] + 8.0 * v[3:-1] - v[4:]) / (12.0 * dt)
    window = np.stack([sigma[i : len(sigma) - 4 + i] for i in range(5)])
    steady = np.all(window == window[2], axis=0)
    close = np.abs(fd - trajectory.vdot_active[2:-2]) <= FD_TOLERANCE
    fraction = np.sum(close & steady, axis=0) / np.maximum(np.sum(steady, axis=0), 1)
    worst = float(fraction.min())
    return CheckResult("vdot_finite_differences", worst >= FD_FRACTION, worst, FD_FRACTION)


def check_fixed_points(cfg: ExperimentConfig) -> CheckResult:
    residual = 0.0
    zero = np.zeros(3)
    for equilibrium in (IDENTITY, -IDENTITY):
        for sigma in (1, -1):
            rates = subsystem_rates(sigma, equilibrium, zero, cfg.gains_switching, cfg.params.J)
            residual = max(residual, *(float(np.max(np.abs(r))) for r in rates))
        for gains in (cfg.gains_benchmark, cfg.gains_switching):
            rates = error_rates(equilibrium, zero, gains, cfg.params.J)
            residual = max(residual, *(float(np.max(np.abs(r))) for r in rates))
    return CheckResult("fixed_points", residual <= 1e-14, residual, 1e-14)


def check_attractive_identity(cfg: ExperimentConfig) -> CheckResult:
    """Both smooth-gain laws converge to ``q_e = 1`` from states with a positive scalar part."""
    rng = np.random.default_rng(np.random.SeedSequence([cfg.rng_seed, 2]))
    qe = _unit_quaternions(rng, TRAJECTORIES)
    qe *= np.where(qe[:, :1] < 0, -1.0, 1.0)
    we = rng.normal(0.0, 0.5, size=(TRAJECTORIES, 3))
    worst = 0.0
    for kind in (ControllerKind.BENCHMARK, ControllerKind.CONTINUOUS):
        trajectory = simulate_batch(
            initial_states(qe, we),
            kind,
            cfg.gains_benchmark,
            cfg.params,
            SETTLING_TIME,
            cfg.dt,
        )
        worst = max(worst, float(trajectory.n_e_norm[-1].max()))
    return CheckResult("attractive_identity", worst < CONVERGED, worst, CONVERGED)


def check_repulsive_antipode(cfg: ExperimentConfig) -> CheckResult:
    """The continuous law pushes states away from ``q_e = −1`` and then settles at ``q_e = 1``."""
    rng = np.random.default_rng(np.random.SeedSequence([cfg.rng_seed, 3]))
    axes = rng.normal(size=(10, 3))
    axes /= np.linalg.norm(axes, axis=-1, keepdims=True)
    qe = -from_axis_angle(axes, np.full(10, 1e-3))
    trajectory = simulate_batch(
        initial_states(qe, np.zeros((10, 3))),
        ControllerKind.CONTINUOUS,
        cfg.gains_benchmark,
        cfg.params,
        8.0,
        cfg.dt,
    )
    early = trajectory.t <= 0.2
    distance = np.linalg.norm(trajectory.qe[early] + IDENTITY, axis=-1)
    departs = bool(np.all(np.diff(distance, axis=0) > 0.0))
    settled = float(trajectory.n_e_norm[-1].max())
    ends_at_identity = bool(np.all(trajectory.qe[-1, :, 0] > 0))
    return CheckResult(
        "repulsive_antipode",
        departs and ends_at_identity and settled < CONVERGED,
        settled,
        CONVERGED,
        detail=f"monotone departure over 0.2 s: {departs}",
    )


def check_switching_convergence(
    cfg: ExperimentConfig, trajectory: BatchTrajectory, inside: np.ndarray
) -> CheckResult:
    settled = max(
        float(trajectory.n_e_norm[-1].max()),
        float(np.linalg.norm(trajectory.nu[-1], axis=-1).max()),
    )
    violations = sum(
        len(check_return_decrease(switches, cfg.gains_switching.delta))
        for switches in trajectory.switches
    )
    return CheckResult(
        "switching_convergence",
        bool(np.all(inside)) and settled < CONVERGED and violations == 0,
        settled,
        CONVERGED,
        detail=f"{violations} return-decrease violation(s)",
    )


def _yaw_case(cfg: ExperimentConfig) -> tuple[ExperimentConfig, RunLog, RunLog]:
    case = replace(cfg.with_ic(*DEFAULT_IC_PAIRS[0]), noise=None)
    return (
        case,
        run_experiment(case, ControllerKind.SWITCHING),
        run_experiment(case, ControllerKind.BENCHMARK),
    )


def _wraps(psi: np.ndarray) -> bool:
    return bool(np.any(np.abs(np.diff(psi)) > math.pi))


def check_yaw_case(cfg: ExperimentConfig) -> list[CheckResult]:
    case, switching, benchmark = _yaw_case(cfg)
    onset = int(np.searchsorted(switching.t, case.t0 - 1e-12))
    lambda_onset = float(switching.lambda_[onset])
    event = first_switch_after(switching, case.profile.t_hover)
    latency = abs(event.t - case.t0) if event is not None else math.inf
    long_path = _wraps(switching.psi[onset:])
    reverses = not _wraps(benchmark.psi[onset:]) and benchmark.psi[-1] < benchmark.psi[onset]
    consistency = float(
        np.max(np.abs(switching.lambda_ - (switching.v_minus - switching.v_plus)))
    )
    drift = float(np.max(np.abs(np.linalg.norm(switching.q, axis=-1) - 1.0)))
    return [
        CheckResult(
            "yaw_case_lambda_at_onset",
            abs(lambda_onset - ONSET_LAMBDA) <= 0.05,
            lambda_onset,
            0.05,
            detail=f"expected {ONSET_LAMBDA:.4f}",
        ),
        CheckResult(
            "yaw_case_switch_latency",
            event is not None and event.new_sigma == -1 and latency <= SWITCH_LATENCY,
            latency,
            SWITCH_LATENCY,
        ),
        CheckResult(
            "yaw_case_paths",
            long_path and reverses,
            float(long_path) + float(reverses),
            2.0,
            detail=f"switching unwinds through 180 deg: {long_path}; benchmark reverses: "
            f"{reverses}",
        ),
        CheckResult(
            "yaw_case_switch_count",
            len(switching.events) <= MAX_SWITCHES,
            float(len(switching.events)),
            float(MAX_SWITCHES),
        ),
        CheckResult("logged_lambda_consistency", consistency <= 1e-9, consistency, 1e-9),
        CheckResult("quaternion_norm_drift", drift <= 1e-9, drift, 1e-9),
    ]


def check_pfm_direction(cfg: ExperimentConfig) -> list[CheckResult]:
    quiet = replace(cfg, noise=None)
    ratios = []
    for w0, psi0_deg in DEFAULT_IC_PAIRS[:2] + DEFAULT_IC_PAIRS[3:]:
        case = quiet.with_ic(w0, psi0_deg)
        benchmark, switching = (
            pfm(run_experiment(case, kind), case.t0, case.tf)
            for kind in (ControllerKind.BENCHMARK, ControllerKind.SWITCHING)
        )
        ratios.append(
            (
                switching.gamma_tau / benchmark.gamma_tau,
                switching.gamma_p / benchmark.gamma_p,
            )
        )
    worst_ratio = max(max(r) for r in ratios[:2])
    worst_difference = max(abs(x - 1.0) for r in ratios[2:] for x in r)
    return [
        CheckResult("pfm_lower_when_sides_differ", worst_ratio < 1.0, worst_ratio, 1.0),
        CheckResult(
            "pfm_similar_when_sides_agree",
            worst_difference < AGREEMENT,
            worst_difference,
            AGREEMENT,
        ),
    ]


def check_energy_conservation(cfg: ExperimentConfig) -> CheckResult:
    p = cfg.params
    start = BodyState.at_rest(w=[1.0, 2.0, 3.0])
    end = integrate(start, hold(Inputs(0.0, np.zeros(3))), p, SETTLING_TIME, cfg.dt)
    before = float(p.rotational_energy(start.w))
    change = abs(float(p.rotational_energy(end.w)) - before) / before
    return CheckResult("energy_conservation", change <= 1e-8, change, 1e-8)


def check_integration_order(cfg: ExperimentConfig) -> CheckResult:
    """Error ratio of successive step halvings on a controlled maneuver, 16 at fourth order."""
    start = initial_states(from_axis_angle([[0.0, 0.6, 0.8]], [math.pi / 2]), np.zeros((1, 3)))
    finals = [
        simulate_batch(
            start, ControllerKind.SWITCHING, cfg.gains_switching, cfg.params, 0.4, dt
        )
        for dt in (0.004, 0.002, 0.001)
    ]

    def distance(a: BatchTrajectory, b: BatchTrajectory) -> float:
        gap = np.concatenate([a.qe[-1] - b.qe[-1], a.we[-1] - b.we[-1]], axis=-1)
        return float(np.linalg.norm(gap))

    ratio = distance(finals[0], finals[1]) / distance(finals[1], finals[2])
    return CheckResult("integration_order", abs(ratio - 16.0) < 4.0, ratio, 4.0)


def check_determinism(cfg: ExperimentConfig) -> CheckResult:
    noisy = cfg if cfg.noise is not None else replace(cfg, noise=NoiseConfig())
    first, second = (run_experiment(noisy, ControllerKind.SWITCHING) for _ in range(2))
    identical = np.array_equal(first.as_table(), second.as_table())
    difference = float(np.max(np.abs(first.as_table() - second.as_table())))
    return CheckResult("run_determinism", bool(identical), difference, 0.0)


def verify(cfg: Optional[ExperimentConfig] = None) -> VerifyReport:
    """Runs every check against ``cfg`` (defaults when omitted) and logs each outcome."""
    cfg = cfg if cfg is not None else ExperimentConfig()
    trajectory, inside = _switching_batch(cfg)
    suites: list[Callable[[], list[CheckResult]]] = [
        lambda: [check_lambda_identity(cfg)],
        lambda: [check_lyapunov_decrease(trajectory)],
        lambda: [check_vdot_finite_differences(trajectory, cfg.dt)],
        lambda: [check_fixed_points(cfg)],
        lambda: [check_attractive_identity(cfg)],
        lambda: [check_repulsive_antipode(cfg)],
        lambda: [check_switching_convergence(cfg, trajectory, inside)],
        lambda: check_yaw_case(cfg),
        lambda: check_pfm_direction(cfg),
        lambda: [check_energy_conservation(cfg)],
        lambda: [check_integration_order(cfg)],
        lambda: [check_determinism(cfg)],
    ]
    checks = []
    for suite in suites:
        for check in suite():
            checks.append(check)
            if check.passed:
                logger.info(
                    f"PASS {check.name}: {check.measured:.6g} (tolerance {check.tolerance:g})"
                )
            else:
                logger.warning(
                    f"FAIL {check.name}: {check.measured:.6g} (tolerance {check.tolerance:g}) "
                    f"{check.detail}"
                )
    return VerifyReport(tuple(checks))
