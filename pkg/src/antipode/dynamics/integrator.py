from __future__ import annotations

import math
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np

from antipode.dynamics.errors import InvalidTimeStep, NumericalBlowup
from antipode.dynamics.rigid_body import (
    BodyState,
    Inputs,
    RigidBodyParams,
    SimulationMode,
    StateDerivative,
    derivatives,
)
from antipode.quat import renormalize

InputsFn = Callable[[float, BodyState], Inputs]


def hold(inputs: Inputs) -> InputsFn:
    """Zero-order hold: the same inputs at every instant of a step."""
    return lambda t, s: inputs


def step_rk4(
    s: BodyState,
    inputs_fn: InputsFn,
    p: RigidBodyParams,
    t: float,
    dt: float,
    mode: SimulationMode = SimulationMode.ATTITUDE,
) -> BodyState:
    """Advance ``s`` from ``t`` to ``t + dt`` with the classical fourth-order Runge–Kutta scheme.

    The quaternion is integrated as four unconstrained reals and renormalized once at the end of
    the step. ``inputs_fn`` is called at every stage with the stage time and state; pass
    ``hold(inputs)`` to keep the inputs constant over the step. In attitude mode the position
    and velocity are left untouched.
    """
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidTimeStep(dt)
    half = 0.5 * dt
    k1 = derivatives(s, inputs_fn(t, s), p)
    s2 = _advance(s, k1, half, mode)
    k2 = derivatives(s2, inputs_fn(t + half, s2), p)
    s3 = _advance(s, k2, half, mode)
    k3 = derivatives(s3, inputs_fn(t + half, s3), p)
    s4 = _advance(s, k3, dt, mode)
    k4 = derivatives(s4, inputs_fn(t + dt, s4), p)
    slope = _weighted((k1, k2, k3, k4), (1 / 6, 1 / 3, 1 / 3, 1 / 6))
    after = _advance(s, slope, dt, mode)
    _ensure_finite(after, t + dt)
    return replace(after, q=renormalize(after.q))


def integrate(
    s: BodyState,
    inputs_fn: InputsFn,
    p: RigidBodyParams,
    duration: float,
    dt: float,
    mode: SimulationMode = SimulationMode.ATTITUDE,
    t0: float = 0.0,
) -> BodyState:
    """Apply ``step_rk4`` until ``duration`` has elapsed; returns the final state."""
    steps = int(round(duration / dt))
    for k in range(steps):
        s = step_rk4(s, inputs_fn, p, t0 + k * dt, dt, mode)
    return s


def _advance(s: BodyState, d: StateDerivative, h: float, mode: SimulationMode) -> BodyState:
    if mode is SimulationMode.ATTITUDE:
        return BodyState(r=s.r, v=s.v, q=s.q + h * d.dq, w=s.w + h * d.dw)
    return BodyState(r=s.r + h * d.dr, v=s.v + h * d.dv, q=s.q + h * d.dq, w=s.w + h * d.dw)


def _weighted(ks: Sequence[StateDerivative], weights: Sequence[float]) -> StateDerivative:
    return StateDerivative(
        dr=sum(c * k.dr for c, k in zip(weights, ks)),
        dv=sum(c * k.dv for c, k in zip(weights, ks)),
        dq=sum(c * k.dq for c, k in zip(weights, ks)),
        dw=sum(c * k.dw for c, k in zip(weights, ks)),
    )


def _ensure_finite(s: BodyState, t: float) -> None:
    broken = [
        name
        for name, value in (("position", s.r), ("velocity", s.v), ("attitude", s.q), ("rate", s.w))
        if not np.all(np.isfinite(value))
    ]
    if broken:
        raise NumericalBlowup(t, broken)
