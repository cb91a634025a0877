from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from antipode.dynamics.rigid_body import BodyState, RigidBodyParams, Scalar, SimulationMode
from antipode.quat import to_rotmatrix

MIN_VERTICAL_PROJECTION = 0.1


@dataclass(frozen=True)
class HoverGains:
    """Altitude hold used in 6-DOF runs; there is no lateral position loop."""

    kp: float = 40.0
    kd: float = 8.0
    z_d: float = 0.0


def hover_thrust(
    s: BodyState, p: RigidBodyParams, gains: HoverGains, mode: SimulationMode
) -> Scalar:
    """Collective thrust that holds the altitude ``gains.z_d``.

    The vertical projection of the body z axis is clamped so the thrust stays bounded near
    horizontal attitudes, and negative thrust is cut to zero. Attitude-only runs just balance
    gravity.
    """
    if mode is SimulationMode.ATTITUDE:
        return np.full(s.q.shape[:-1], p.m * p.g)
    r33 = to_rotmatrix(s.q)[..., 2, 2]
    z, z_dot = s.r[..., 2], s.v[..., 2]
    demand = p.m * (p.g + gains.kp * (gains.z_d - z) - gains.kd * z_dot)
    return np.maximum(demand / np.maximum(r33, MIN_VERTICAL_PROJECTION), 0.0)
