"""The three-stage yaw maneuver used to provoke large attitude errors.

Stage 1 hovers at the identity attitude. Stage 2 yaws at a constant body rate until the yaw
reference reaches ``psi0``. Stage 3 abruptly resets the reference to the identity, so at its onset
the vehicle spins at ``w0`` with a yaw error of ``psi0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, Optional

import numpy as np

from antipode.quat import IDENTITY, E3, Vec3, UnitQuaternion, from_axis_angle
from antipode.reference.errors import InvalidProfile, NegativeSampleTime

AXIS_TOLERANCE = 1e-12


class Stage(IntEnum):
    HOVER = 1
    YAW = 2
    RESET = 3


@dataclass(frozen=True, eq=False)
class YawManeuverProfile:
    t_hover: float = 1.0
    w0: Vec3 = field(default_factory=lambda: np.array([0.0, 0.0, 3.0]))
    psi0: float = 2.0 * math.pi / 3.0
    t_final: Optional[float] = None

    def __post_init__(self) -> None:
        w0 = np.asarray(self.w0, dtype=float)
        object.__setattr__(self, "w0", w0)
        if not (math.isfinite(self.t_hover) and self.t_hover >= 0):
            raise InvalidProfile("t_hover", self.t_hover, "It must be non-negative and finite.")
        if w0.shape != (3,) or not np.all(np.isfinite(w0)):
            raise InvalidProfile("w0", w0, "It must be a finite 3-vector in rad/s.")
        if np.any(np.abs(w0[:2]) > AXIS_TOLERANCE):
            raise InvalidProfile("w0", w0, "Yaw maneuvers spin about the body z axis only.")
        if not (-math.pi < self.psi0 <= math.pi):
            raise InvalidProfile("psi0", self.psi0, "It must lie in (-pi, pi] radians.")
        if self.rate == 0.0 and self.psi0 != 0.0:
            raise InvalidProfile(
                "psi0", self.psi0, "The yaw target can never be reached because w0 is zero."
            )
        if self.t_final is not None and not self.t_final > self.t_hover:
            raise InvalidProfile("t_final", self.t_final, "It must come after t_hover.")

    @classmethod
    def from_ic_pair(
        cls, w0: float, psi0_deg: float, t_hover: float = 1.0, t_final: Optional[float] = None
    ) -> YawManeuverProfile:
        """The profile whose Stage 3 starts from the yaw rate ``w0`` and yaw error ``psi0_deg``."""
        psi0 = math.remainder(math.radians(psi0_deg), 2.0 * math.pi)
        if psi0 == -math.pi:
            psi0 = math.pi
        return cls(t_hover=t_hover, w0=np.array([0.0, 0.0, w0]), psi0=psi0, t_final=t_final)

    @property
    def rate(self) -> float:
        """Signed yaw rate of Stage 2."""
        return float(self.w0[2])

    @property
    def travel(self) -> float:
        """Yaw angle swept during Stage 2, in ``[0, 2π)``."""
        if self.rate == 0.0:
            return 0.0
        return (math.copysign(1.0, self.rate) * self.psi0) % (2.0 * math.pi)

    @property
    def t0(self) -> float:
        """Onset of Stage 3."""
        if self.rate == 0.0:
            return self.t_hover
        return self.t_hover + self.travel / abs(self.rate)

    def stage(self, t: float) -> Stage:
        if t < self.t_hover:
            return Stage.HOVER
        if t < self.t0:
            return Stage.YAW
        return Stage.RESET


@dataclass(frozen=True, eq=False)
class ReferenceSample:
    """Desired attitude, body rate and body acceleration at one instant.

    ``wd`` and ``wd_dot`` are expressed in desired-body (B_d) coordinates; use
    ``map_desired_rate`` to express the rate in the measured body frame.
    """

    qd: UnitQuaternion
    wd: Vec3
    wd_dot: Vec3


def _at_rest() -> ReferenceSample:
    return ReferenceSample(qd=IDENTITY.copy(), wd=np.zeros(3), wd_dot=np.zeros(3))


def sample(profile: YawManeuverProfile, t: Any) -> ReferenceSample:
    """Reference of ``profile`` at time ``t``.

    Stage boundaries are jump discontinuities; the impulses they would put in ``wd_dot`` are
    dropped, so ``wd_dot`` is zero everywhere.
    """
    t = float(t)
    if not t >= 0:
        raise NegativeSampleTime(t)
    if profile.stage(t) is not Stage.YAW:
        return _at_rest()
    qd = from_axis_angle(E3, profile.rate * (t - profile.t_hover))
    return ReferenceSample(qd=qd, wd=profile.w0.copy(), wd_dot=np.zeros(3))
