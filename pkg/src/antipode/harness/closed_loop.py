"""Batched closed-loop simulation around a still reference, used to check stability properties.

Each member of the batch is an independent vehicle tracking the identity attitude at rest, so the
error state is just ``q_e = q⁻¹`` and ``ω_e = −ω``. The control law is evaluated at every
Runge–Kutta stage, which integrates the continuous-time closed loop; pass ``hold_torque=True`` to
keep the torque constant over each step as on the vehicle.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt

from antipode.control import (
    ControllerKind,
    Gains,
    error_state,
    torque_benchmark,
    torque_continuous,
    torque_switching,
)
from antipode.dynamics import BodyState, Inputs, RigidBodyParams, hold, step_rk4
from antipode.quat import IDENTITY, qinv
from antipode.reference import ReferenceSample
from antipode.swlyap import (
    SwitchState,
    lambda_fn,
    lyapunov_sample,
    next_sigma,
    switch_update_batch,
)

STILL = ReferenceSample(qd=IDENTITY.copy(), wd=np.zeros(3), wd_dot=np.zeros(3))

Trace = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class BatchTrajectory:
    """Per-step samples of a batch; leading axis is time, the next one the batch member."""

    t: Trace
    qe: Trace
    we: Trace
    nu: Trace
    sigma: Trace
    lambda_: Trace
    v_active: Trace
    vdot_active: Trace
    switches: tuple[SwitchState, ...]

    @property
    def members(self) -> int:
        return self.qe.shape[1]

    @property
    def n_e_norm(self) -> Trace:
        return np.linalg.norm(self.qe[..., 1:], axis=-1)


def initial_states(qe: Any, we: Any) -> BodyState:
    """Plant states whose errors with respect to the still reference are ``(qe, we)``."""
    return BodyState.at_rest(q=qinv(qe), w=-np.asarray(we, dtype=float))


def _torque(
    kind: ControllerKind, s: BodyState, sigma: np.ndarray, gains: Gains, p: RigidBodyParams
) -> np.ndarray:
    es = error_state(s, STILL, sigma, gains.kn)
    if kind is ControllerKind.SWITCHING:
        return torque_switching(es, s, STILL, gains, p.J, sigma)
    if kind is ControllerKind.BENCHMARK:
        return torque_benchmark(es, s, STILL, gains, p.J)
    return torque_continuous(es, s, STILL, gains, p.J)


def simulate_batch(
    start: BodyState,
    kind: ControllerKind,
    gains: Gains,
    p: RigidBodyParams,
    duration: float,
    dt: float,
    sigma0: Any = 1.0,
    hold_torque: bool = False,
) -> BatchTrajectory:
    """Simulates every member of ``start`` for ``duration`` seconds under the ``kind`` law.

    For the switching law ``σ`` is updated once per step, before the step, and is held during
    it. Other laws keep ``σ`` at ``sigma0``; their Lyapunov samples still refer to the switching
    subsystems built from ``gains``.
    """
    members = start.members()
    steps = int(round(duration / dt))
    sigma = np.broadcast_to(np.asarray(sigma0, dtype=float), (members,)).copy()
    switches = tuple(SwitchState(sigma=int(sigma_i)) for sigma_i in sigma)

    shape = (steps + 1, members)
    qe_log, we_log, nu_log = np.zeros(shape + (4,)), np.zeros(shape + (3,)), np.zeros(shape + (3,))
    sigma_log, lambda_log, v_log, vdot_log = (np.zeros(shape) for _ in range(4))

    s = start
    for k in range(steps + 1):
        t = k * dt
        probe = error_state(s, STILL, sigma, gains.kn)
        if kind is ControllerKind.SWITCHING:
            lam = lambda_fn(probe.qe, probe.we, gains.kq, p.J, gains.kn)
            incoming = next_sigma(sigma, lam, gains.delta)
            if np.any(incoming != sigma):
                v_in = lyapunov_sample(probe.qe, probe.we, incoming, gains, p.J).v(incoming)
                switches = switch_update_batch(switches, lam, gains.delta, t, v_in)
                sigma = np.array([st.sigma for st in switches], dtype=float)
        es = error_state(s, STILL, sigma, gains.kn)
        lyapunov = lyapunov_sample(es.qe, es.we, sigma, gains, p.J)
        qe_log[k], we_log[k], nu_log[k] = es.qe, es.we, es.nu
        sigma_log[k] = sigma
        lambda_log[k] = lyapunov.lambda_
        v_log[k] = lyapunov.v(sigma)
        vdot_log[k] = lyapunov.vdot_active
        if k == steps:
            break
        fa = np.full(members, p.m * p.g)
        if hold_torque:
            inputs_fn = hold(Inputs(fa, _torque(kind, s, sigma, gains, p)))
        else:
            held_sigma = sigma

            def inputs_fn(t: float, stage: BodyState) -> Inputs:
                return Inputs(fa, _torque(kind, stage, held_sigma, gains, p))

        s = step_rk4(s, inputs_fn, p, t, dt)

    return BatchTrajectory(
        t=np.arange(steps + 1) * dt,
        qe=qe_log,
        we=we_log,
        nu=nu_log,
        sigma=sigma_log,
        lambda_=lambda_log,
        v_active=v_log,
        vdot_active=vdot_log,
        switches=switches,
    )
