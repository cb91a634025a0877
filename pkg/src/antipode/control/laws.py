"""Attitude control laws built on the attitude-error quaternion.

All three laws share the feedforward ``J ω̇_d + ω × Jω`` and differ in how they weigh the error
quaternion:

* ``torque_continuous`` pulls ``q_e`` towards the identity only, so it unwinds: the antipode
  ``-q_e`` is an unstable equilibrium of the closed loop.
* ``torque_benchmark`` flips the attitude term with the sign of ``m_e`` and always takes the
  short way round, at the cost of a discontinuity across ``m_e = 0``.
* ``torque_switching`` picks its target (identity or antipode) through the switching variable
  ``σ``, which ``antipode.swlyap`` updates with hysteresis.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from antipode.control.errors import InvalidSwitchSign
from antipode.control.gains import Gains, as_diagonal
from antipode.dynamics import BodyState
from antipode.quat import Vec3, UnitQuaternion, Quaternion, attitude_error, pure, qmul
from antipode.reference import ReferenceSample, map_desired_rate


class ControllerKind(Enum):
    CONTINUOUS = "continuous"
    BENCHMARK = "benchmark"
    SWITCHING = "switching"


@dataclass(frozen=True, eq=False)
class ErrorState:
    qe: UnitQuaternion
    we: Vec3
    nu: Vec3

    @property
    def m_e(self) -> np.ndarray:
        return self.qe[..., 0]

    @property
    def n_e(self) -> Vec3:
        return self.qe[..., 1:]


def ensure_switch_sign(sigma: Any) -> np.ndarray:
    sigma = np.asarray(sigma, dtype=float)
    if not np.all(np.abs(sigma) == 1.0):
        raise InvalidSwitchSign(sigma)
    return sigma


def error_state(s: BodyState, ref: ReferenceSample, sigma: Any, kn: float) -> ErrorState:
    """Tracking errors of ``s`` with respect to ``ref``.

    The desired rate of ``ref`` is given in desired-body coordinates and is mapped into the
    measured body frame before it is compared with ``s.w``.
    """
    sigma = ensure_switch_sign(sigma)
    qe = attitude_error(s.q, ref.qd)
    we = map_desired_rate(s.q, ref.qd, ref.wd) - s.w
    nu = we + (sigma * kn)[..., None] * qe[..., 1:]
    return ErrorState(qe=qe, we=we, nu=nu)


def n_e_dot(qe: Any, we: Any) -> Vec3:
    """Rate of the vector part of ``q_e``, from ``q̇_e = ½ (0, ω_e) ⊗ q_e``."""
    qe = np.asarray(qe, dtype=float)
    we = np.asarray(we, dtype=float)
    return 0.5 * (qe[..., :1] * we + np.cross(we, qe[..., 1:]))


def error_rates(qe: Any, we: Any, gains: Gains, J: Any) -> tuple[Quaternion, Vec3]:
    """Closed-loop error dynamics under ``torque_continuous`` with a perfectly tracked feedforward.

    Returns ``(q̇_e, ω̇_e)`` where ``ω̇_e = -J⁻¹ (K_q n_e + K_ω ω_e)``.
    """
    j = as_diagonal("J", J)
    qe = np.asarray(qe, dtype=float)
    we = np.asarray(we, dtype=float)
    qe_dot = 0.5 * qmul(pure(we), qe)
    we_dot = -(gains.kq * qe[..., 1:] + gains.kw * we) / j
    return qe_dot, we_dot


def _feedforward(s: BodyState, ref: ReferenceSample, j: np.ndarray) -> Vec3:
    return j * ref.wd_dot + np.cross(s.w, j * s.w)


def torque_continuous(
    es: ErrorState, s: BodyState, ref: ReferenceSample, gains: Gains, J: Any
) -> Vec3:
    j = as_diagonal("J", J)
    return gains.kq * es.n_e + gains.kw * es.we + _feedforward(s, ref, j)


def torque_benchmark(
    es: ErrorState, s: BodyState, ref: ReferenceSample, gains: Gains, J: Any
) -> Vec3:
    """Sign-of-``m_e`` law; ``m_e = 0`` counts as positive."""
    j = as_diagonal("J", J)
    sgn = np.where(es.m_e >= 0.0, 1.0, -1.0)[..., None]
    return sgn * gains.kq * es.n_e + gains.kw * es.we + _feedforward(s, ref, j)


def torque_switching(
    es: ErrorState, s: BodyState, ref: ReferenceSample, gains: Gains, J: Any, sigma: Any
) -> Vec3:
    """Switching law; ``es`` must have been built with the same ``sigma``."""
    j = as_diagonal("J", J)
    sigma = ensure_switch_sign(sigma)[..., None]
    n_dot = n_e_dot(es.qe, es.we)
    return (
        sigma * gains.kq * es.n_e
        + gains.kw * es.nu
        + j * (ref.wd_dot + sigma * gains.kn * n_dot)
        + np.cross(s.w, j * s.w)
    )
