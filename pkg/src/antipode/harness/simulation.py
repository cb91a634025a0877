"""Closed-loop flight of the three-stage yaw maneuver.

The controller runs at the integration rate: at every step it reads the (optionally noisy)
measured state, updates its switching variable, and the resulting thrust and torque are held
constant while the plant is advanced by one Runge–Kutta step.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt

from antipode.control import (
    ControllerKind,
    ErrorState,
    Gains,
    error_state,
    torque_benchmark,
    torque_continuous,
    torque_switching,
)
from antipode.dynamics import (
    BodyState,
    Inputs,
    RigidBodyParams,
    SimulationMode,
    hold,
    hover_thrust,
    step_rk4,
)
from antipode.harness.config import ExperimentConfig, NoiseConfig
from antipode.quat import E3, Vec3, from_axis_angle, qmul, yaw
from antipode.reference import ReferenceSample, map_desired_rate, sample
from antipode.swlyap import SwitchEvent, SwitchState, lyapunov_sample, next_sigma, switch_update

logger = logging.getLogger(__name__)

Series = npt.NDArray[np.float64]

RUN_COLUMNS = (
    "t",
    "qw",
    "qx",
    "qy",
    "qz",
    "wx",
    "wy",
    "wz",
    "qdw",
    "qdx",
    "qdy",
    "qdz",
    "wdx",
    "wdy",
    "wdz",
    "taux",
    "tauy",
    "tauz",
    "sigma",
    "lambda",
    "v_plus",
    "v_minus",
    "psi",
    "psi_d",
    "fa",
)


@dataclass(frozen=True, eq=False)
class RunLog:
    """Uniformly sampled record of one run.

    ``wd`` is the desired rate in measured-body coordinates, ``tau`` the torque the controller
    computed at each sample. Position is only kept for 6-DOF runs and is not part of the table.
    ``window`` is the metric window ``(t0, tf)`` of the experiment that produced the log.
    """

    t: Series
    q: Series
    w: Series
    qd: Series
    wd: Series
    tau: Series
    sigma: Series
    lambda_: Series
    v_plus: Series
    v_minus: Series
    psi: Series
    psi_d: Series
    fa: Series
    r: Optional[Series] = None
    controller: Optional[ControllerKind] = None
    events: tuple[SwitchEvent, ...] = ()
    window: Optional[tuple[float, float]] = None

    def __len__(self) -> int:
        return len(self.t)

    @classmethod
    def empty(cls) -> RunLog:
        return cls.from_table(np.zeros((0, len(RUN_COLUMNS))))

    def as_table(self) -> npt.NDArray[np.float64]:
        """Rows in ``RUN_COLUMNS`` order."""
        return np.column_stack(
            [
                self.t,
                self.q,
                self.w,
                self.qd,
                self.wd,
                self.tau,
                self.sigma,
                self.lambda_,
                self.v_plus,
                self.v_minus,
                self.psi,
                self.psi_d,
                self.fa,
            ]
        )

    @classmethod
    def from_table(cls, table: npt.NDArray[np.float64]) -> RunLog:
        table = np.asarray(table, dtype=float).reshape(-1, len(RUN_COLUMNS))
        return cls(
            t=table[:, 0],
            q=table[:, 1:5],
            w=table[:, 5:8],
            qd=table[:, 8:12],
            wd=table[:, 12:15],
            tau=table[:, 15:18],
            sigma=table[:, 18],
            lambda_=table[:, 19],
            v_plus=table[:, 20],
            v_minus=table[:, 21],
            psi=table[:, 22],
            psi_d=table[:, 23],
            fa=table[:, 24],
        )


def sample_count(t_final: float, dt: float) -> int:
    """Rows of a run that lasts ``t_final`` seconds: ``⌈t_final/dt⌉ + 1``."""
    return math.ceil(t_final / dt - 1e-9) + 1


def measure(s: BodyState, noise: Optional[NoiseConfig], rng: np.random.Generator) -> BodyState:
    """State as seen by the controller: noisy body rate and a slightly rotated attitude."""
    if noise is None or noise.silent:
        return s
    w = s.w + rng.normal(0.0, noise.omega_sigma, size=s.w.shape)
    rotation = rng.normal(0.0, noise.attitude_sigma, size=s.w.shape)
    angle = np.linalg.norm(rotation, axis=-1)
    axis = np.where(angle[..., None] > 0, rotation / np.maximum(angle, 1e-300)[..., None], E3)
    q = qmul(s.q, from_axis_angle(axis, angle))
    return BodyState(r=s.r, v=s.v, q=q, w=w)


@dataclass(frozen=True, eq=False)
class ControlStep:
    es: ErrorState
    tau: Vec3
    switch: SwitchState
    lambda_: float
    v_plus: float
    v_minus: float


def control_step(
    controller: ControllerKind,
    measured: BodyState,
    ref: ReferenceSample,
    gains: Gains,
    p: RigidBodyParams,
    switch: SwitchState,
    t: float,
) -> ControlStep:
    """One evaluation of ``controller``, including the switching-variable update."""
    probe = error_state(measured, ref, switch.sigma, gains.kn)
    lyapunov = lyapunov_sample(probe.qe, probe.we, switch.sigma, gains, p.J)
    lam = float(lyapunov.lambda_)
    if controller is ControllerKind.SWITCHING:
        incoming = int(next_sigma(switch.sigma, lam, gains.delta))
        switch = switch_update(switch, lam, gains.delta, t, float(lyapunov.v(incoming)))
    es = error_state(measured, ref, switch.sigma, gains.kn)
    if controller is ControllerKind.SWITCHING:
        tau = torque_switching(es, measured, ref, gains, p.J, switch.sigma)
    elif controller is ControllerKind.BENCHMARK:
        tau = torque_benchmark(es, measured, ref, gains, p.J)
    else:
        tau = torque_continuous(es, measured, ref, gains, p.J)
    return ControlStep(
        es=es,
        tau=tau,
        switch=switch,
        lambda_=lam,
        v_plus=float(lyapunov.v_plus),
        v_minus=float(lyapunov.v_minus),
    )


def run_experiment(
    cfg: ExperimentConfig,
    controller: ControllerKind,
    rng: Optional[np.random.Generator] = None,
) -> RunLog:
    """Flies the maneuver of ``cfg.profile`` under ``controller`` and logs every control step.

    Measurement noise is drawn from ``rng``, which defaults to a generator seeded with
    ``cfg.rng_seed``.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.rng_seed)
    p, profile, dt = cfg.params, cfg.profile, cfg.dt
    gains = cfg.gains_for(controller)
    rows = sample_count(cfg.t_final, dt)
    logger.info(
        f"Flying {controller.value} controller: w0={profile.rate:g} rad/s, "
        f"psi0={math.degrees(profile.psi0):g} deg, {rows} steps of {dt:g} s"
    )

    t_log = np.arange(rows) * dt
    q_log, qd_log = np.zeros((rows, 4)), np.zeros((rows, 4))
    w_log, wd_log, tau_log, r_log = (np.zeros((rows, 3)) for _ in range(4))
    sigma_log, lambda_log, v_plus_log, v_minus_log, fa_log = (np.zeros(rows) for _ in range(5))

    state = BodyState.at_rest()
    switch = SwitchState()
    stage = None
    for k in range(rows):
        t = float(t_log[k])
        ref = sample(profile, t)
        if profile.stage(t) is not stage:
            stage = profile.stage(t)
            logger.debug(f"Stage {int(stage)} ({stage.name.lower()}) starts at t={t:.4f} s")
        step = control_step(controller, measure(state, cfg.noise, rng), ref, gains, p, switch, t)
        switch = step.switch
        fa = float(hover_thrust(state, p, cfg.hover, cfg.mode))

        q_log[k], w_log[k], r_log[k] = state.q, state.w, state.r
        qd_log[k] = ref.qd
        wd_log[k] = map_desired_rate(state.q, ref.qd, ref.wd)
        tau_log[k] = step.tau
        sigma_log[k] = switch.sigma
        lambda_log[k], v_plus_log[k], v_minus_log[k] = step.lambda_, step.v_plus, step.v_minus
        fa_log[k] = fa

        if k + 1 < rows:
            state = step_rk4(state, hold(Inputs(fa, step.tau)), p, t, dt, cfg.mode)

    logger.info(
        f"Finished {controller.value} run at t={t_log[-1]:.3f} s "
        f"with {len(switch.events)} switch(es)"
    )
    return RunLog(
        t=t_log,
        q=q_log,
        w=w_log,
        qd=qd_log,
        wd=wd_log,
        tau=tau_log,
        sigma=sigma_log,
        lambda_=lambda_log,
        v_plus=v_plus_log,
        v_minus=v_minus_log,
        psi=yaw(q_log),
        psi_d=yaw(qd_log),
        fa=fa_log,
        r=r_log if cfg.mode is SimulationMode.SIX_DOF else None,
        controller=controller,
        events=switch.events,
        window=(cfg.t0, cfg.tf),
    )


def first_switch_after(log: RunLog, t: float) -> Optional[SwitchEvent]:
    return next((event for event in log.events if event.t >= t), None)
